import json

from addcomb.cli import main
from addcomb.errors import (EXIT_INVALID_INPUT, EXIT_OK)
from addcomb.sets import FiniteRealSet, load_set, save_set


def _write_set(tmp_path, name, values):
    path = tmp_path / name
    save_set(FiniteRealSet(values), path)
    return str(path)


def test_energy_command(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [0, 1])
    code = main(["energy", a, "--k", "3", "--kind", "add"])
    assert code == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["additive"]["E3"] == 10
    assert report["additive"]["E2"] == 6


def test_energy_cross_two_files(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [0, 1])
    b = _write_set(tmp_path, "b.set", [0, 2])
    code = main(["energy", a, b, "--kind", "add"])
    assert code == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["sizes"] == [2, 2]
    assert report["additive"]["E3"] == 4  # flat cross representation


def test_energy_default_flags_cover_both_kinds(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [0, 1, 2])
    code = main(["energy", a])
    assert code == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["k"] == 2
    assert "additive" in report and "multiplicative" in report
    assert report["additive"]["E2"] == 19


def test_energy_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.set"
    bad.write_text("zzz\n")
    code = main(["energy", str(bad)])
    assert code == EXIT_INVALID_INPUT
    assert "invalid input" in capsys.readouterr().err


def test_estimate_command_writes_interval(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", list(range(1, 17)))
    out = tmp_path / "q.json"
    code = main(["estimate", a, "--quantity", "q", "--kind", "add",
                 "--out", str(out)])
    assert code == EXIT_OK
    data = json.loads(out.read_text())
    assert data["quantity"] == "q"
    assert set(data) >= {"lower", "upper", "witness", "seed", "config"}


def test_estimate_multiplicative_zero_rejected(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [0, 1, 2])
    code = main(["estimate", a, "--quantity", "q", "--kind", "mult"])
    assert code == EXIT_INVALID_INPUT


def test_decompose_command_outputs(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [2 ** i for i in range(32)])
    outdir = tmp_path / "out"
    code = main(["decompose", a, "--outdir", str(outdir)])
    assert code == EXIT_OK
    b = load_set(outdir / "B.set")
    c = load_set(outdir / "C.set")
    assert b.union(c) == load_set(a) and b.isdisjoint(c)
    trace = json.loads((outdir / "trace.json").read_text())
    assert trace["stop_reason"] in ("no-witness", "exhausted")
    cert = (outdir / "cert.csv").read_text()
    assert cert.startswith("quantity,value,bound_ok,ratio")
    manifest = json.loads((outdir / "manifest.json").read_text())
    assert manifest["command"] == "decompose"
    assert manifest["wall_clock_s"] is not None


def test_decompose_rerun_byte_identical(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [2 ** i for i in range(24)])
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert main(["decompose", a, "--outdir", str(out1), "--seed", "5"]) == EXIT_OK
    assert main(["decompose", a, "--outdir", str(out2), "--seed", "5"]) == EXIT_OK
    for name in ("B.set", "C.set", "trace.json", "cert.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_decompose_shifted_mode(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [2 ** i - 1 for i in range(1, 20)])
    outdir = tmp_path / "shifted"
    code = main(["decompose", a, "--mode", "mult_shift", "--alpha", "1",
                 "--outdir", str(outdir)])
    assert code == EXIT_OK
    trace = json.loads((outdir / "trace.json").read_text())
    assert trace["mode"] == "mult_shift" and trace["alpha"] == "1"
    assert "C+alpha" in trace["certification"]


def test_decompose_shifted_mode_requires_alpha(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [1, 2, 3])
    code = main(["decompose", a, "--mode", "add_scale",
                 "--outdir", str(tmp_path / "x")])
    assert code == EXIT_INVALID_INPUT


def test_construct_and_scan(tmp_path, capsys):
    out = tmp_path / "A.set"
    code = main(["construct", "--N", "16", "--out", str(out), "--audit"])
    assert code == EXIT_OK
    a = load_set(out)
    assert len(a) == 16
    data = json.loads(capsys.readouterr().out)
    assert data["audit"]["holds"]

    csv_out = tmp_path / "scan.csv"
    code = main(["scan", "--Ns", "16,32", "--out", str(csv_out)])
    assert code == EXIT_OK
    text = csv_out.read_text()
    assert text.splitlines()[0].startswith("N,size")
    assert len(text.splitlines()) == 4  # header + 2 rows + summary


def test_ratio_command(tmp_path, capsys):
    a = _write_set(tmp_path, "a.set", [0, 1, 2, 5])
    outdir = tmp_path / "ratio"
    code = main(["ratio", a, "--outdir", str(outdir)])
    assert code == EXIT_OK
    report = json.loads((outdir / "report.json").read_text())
    assert report["reflection_verified"] and report["inversion_verified"]
    r1 = load_set(outdir / "R1.set")
    assert 2 * len(r1) >= report["r_size"]


def test_verify_single_suite(capsys):
    code = main(["verify", "--suite", "multinomial"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "pass multinomial" in out


def test_verify_list(capsys):
    code = main(["verify", "--list"])
    assert code == EXIT_OK
    names = capsys.readouterr().out.split()
    assert len(names) == 9


def test_verify_unknown_suite(capsys):
    code = main(["verify", "--suite", "bogus"])
    assert code == EXIT_INVALID_INPUT
