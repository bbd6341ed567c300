from fractions import Fraction

import pytest

from addcomb.errors import InvalidInputError
from addcomb.fileio import (RunManifest, load_group_function,
                            save_group_function, file_digest)
from addcomb.groups import FiniteAbelianGroup, GroupFunction
from addcomb.sets import FiniteRealSet, load_set, save_set


def test_set_file_roundtrip(tmp_path):
    a = FiniteRealSet([Fraction(1, 3), -7, 2])
    path = tmp_path / "a.set"
    save_set(a, path)
    text = path.read_text()
    assert text == "-7\n1/3\n2\n"
    assert load_set(path) == a


def test_group_function_roundtrip(tmp_path):
    g = FiniteAbelianGroup.cyclic(4)
    f = GroupFunction(g, [1, Fraction(-2, 3), 0, 5], [0, 1, 0, Fraction(1, 2)])
    path = tmp_path / "f.gf"
    save_group_function(f, path)
    assert load_group_function(path) == f


def test_group_function_cube_header(tmp_path):
    path = tmp_path / "f.gf"
    path.write_text("group cube 2\n1 0\n-1 0\n0 0\n2 0\n")
    f = load_group_function(path)
    assert f.group == FiniteAbelianGroup.cube(2)
    assert f.re == (1, -1, 0, 2)


def test_group_function_errors(tmp_path):
    path = tmp_path / "bad.gf"
    path.write_text("group ring 4\n")
    with pytest.raises(InvalidInputError):
        load_group_function(path)
    path.write_text("group cyclic 3\n1 0\n2 0\n")
    with pytest.raises(InvalidInputError):
        load_group_function(path)


def test_manifest_roundtrip_and_digest(tmp_path):
    data = tmp_path / "in.set"
    data.write_text("1\n2\n")
    m = RunManifest.for_run("energy", [data], seed=5, config={"k": 3})
    assert m.inputs[str(data)] == file_digest(data)
    m.wall_clock_s = 1.25
    out = tmp_path / "manifest.json"
    m.save(out)
    text = out.read_text()
    assert '"command": "energy"' in text and '"seed": 5' in text
    # determinism-relevant fields serialize stably
    m2 = RunManifest.for_run("energy", [data], seed=5, config={"k": 3})
    m2.wall_clock_s = 99.0
    t1 = m.to_json().replace("1.25", "X")
    t2 = m2.to_json().replace("99.0", "X")
    assert t1 == t2
