"""Command-line front end.

Subcommands: energy, estimate, decompose, construct, scan, ratio, verify.
Exit codes: 0 success, 1 check/suite failure, 2 invalid input, 3 resource
limit.  All randomness flows from --seed (default 0); deterministic outputs
are byte-identical across reruns with the same manifest.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .construct import SAMPLERS, exponent_scan, mult_doubling_audit, pg_set
from .decompose import SplitConfig, balog_wooley_split, ratio_split, shifted_split
from .energy import energy2, energy_k_pair, rep_function, sigma_k
from .errors import (EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, EXIT_OK,
                     EXIT_RESOURCE_LIMIT, InvalidInputError, ResourceLimitError)
from .fileio import RunManifest, write_json, write_text
from .sets import load_set, save_set
from .szt import FamilyConfig, candidate_family, d_sandwich, dd_check, q_interval
from .verify import SUITES, run_suites

KIND_ALIASES = {"add": "additive", "additive": "additive",
                "mult": "multiplicative", "multiplicative": "multiplicative"}


def _kind(value: str) -> str:
    try:
        return KIND_ALIASES[value]
    except KeyError:
        raise InvalidInputError(f"unknown kind {value!r} (use add or mult)")


def _cmd_energy(args) -> int:
    A = load_set(args.sets[0])
    B = load_set(args.sets[1]) if len(args.sets) > 1 else A
    kinds = ["additive", "multiplicative"] if args.kind == "both" \
        else [_kind(args.kind)]
    report = {"sizes": [len(A), len(B)], "k": args.k}
    for kind in kinds:
        entry = {"E2": energy2(A, B, kind).value}
        if args.k > 2:
            entry[f"E{args.k}"] = energy_k_pair(A, B, args.k, kind).value
        entry["E3"] = energy_k_pair(A, B, 3, kind).value
        op = "sum" if kind == "additive" else "prod"
        rf = rep_function(A, B, op)
        entry["rep_support"] = len(rf.counts)
        entry["rep_max"] = max(rf.counts.values())
        report[kind] = entry
    report["sigma_k"] = sigma_k(A, args.k)
    print(json.dumps(report, sort_keys=True, indent=1))
    if args.out:
        write_json(args.out, report)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    A = load_set(args.set)
    kind = _kind(args.kind)
    fam = candidate_family(A, FamilyConfig(seed=args.seed))
    if args.quantity == "q":
        data = q_interval(A, fam, kind).to_json_dict()
    elif args.quantity == "d":
        data = d_sandwich(A, fam, kind).to_json_dict()
    elif args.quantity == "dstar":
        from .szt import d_star
        value, tag = d_star(A, fam, kind)
        data = {"quantity": "dstar", "kind": kind, "value": str(value),
                "witness": tag, "seed": args.seed}
    elif args.quantity == "dd":
        data = dd_check(A, fam).to_json_dict()
        data["quantity"] = "dd"
    else:
        raise InvalidInputError(f"unknown quantity {args.quantity!r}")
    text = json.dumps(data, sort_keys=True, indent=1)
    print(text)
    if args.out:
        write_text(args.out, text + "\n")
    return EXIT_OK


def _split_config(args) -> SplitConfig:
    m = None
    if args.M not in (None, "auto"):
        m = Fraction(args.M)
    return SplitConfig(M=m, seed=args.seed,
                       family=FamilyConfig(popular_m=32, n_translates=2,
                                           n_random=1, seed=args.seed))


def _cmd_decompose(args) -> int:
    t0 = time.time()
    A = load_set(args.set)
    cfg = _split_config(args)
    if args.mode == "plain":
        trace = balog_wooley_split(A, cfg)
    else:
        if args.alpha is None:
            raise InvalidInputError("shifted modes need --alpha")
        trace = shifted_split(A, Fraction(args.alpha), args.mode, cfg)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    save_set(trace.B, outdir / "B.set")
    save_set(trace.C, outdir / "C.set")
    write_text(outdir / "trace.json", trace.to_json() + "\n")
    if args.mode == "plain":
        from .decompose import certify_split
        report = certify_split(A, trace.B, trace.C)
        write_text(outdir / "cert.csv", "\n".join(report.csv_rows()) + "\n")
    manifest = RunManifest.for_run("decompose", [args.set], args.seed,
                                   cfg.snapshot())
    manifest.wall_clock_s = time.time() - t0
    manifest.save(outdir / "manifest.json")
    print(f"split |A|={len(A)} -> |B|={len(trace.B)}, |C|={len(trace.C)} "
          f"({trace.stop_reason}); outputs in {outdir}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    t0 = time.time()
    c = pg_set(args.N, args.K)
    save_set(c.A, args.out)
    data = c.to_json_dict()
    if args.audit:
        data["audit"] = mult_doubling_audit(c).to_json_dict()
    manifest = RunManifest.for_run("construct", [], args.seed,
                                   {"N": args.N, "K": args.K})
    manifest.wall_clock_s = time.time() - t0
    manifest.save(str(args.out) + ".manifest.json")
    print(json.dumps(data, sort_keys=True, indent=1))
    return EXIT_OK


def _cmd_scan(args) -> int:
    t0 = time.time()
    ns = [int(v) for v in args.Ns.split(",")]
    result = exponent_scan(ns, sampler=args.sampler, seed=args.seed,
                           threads=args.threads)
    csv_text = result.to_csv()
    print(csv_text, end="")
    if args.out:
        write_text(args.out, csv_text)
        manifest = RunManifest.for_run("scan", [], args.seed,
                                       {"Ns": ns, "sampler": args.sampler,
                                        "threads": args.threads})
        manifest.wall_clock_s = time.time() - t0
        manifest.save(str(args.out) + ".manifest.json")
    return EXIT_OK


def _cmd_ratio(args) -> int:
    t0 = time.time()
    A = load_set(args.set)
    cfg = _split_config(args)
    r1, r2, report = ratio_split(A, cfg)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    save_set(r1, outdir / "R1.set")
    save_set(r2, outdir / "R2.set")
    write_json(outdir / "report.json", report.to_json_dict())
    manifest = RunManifest.for_run("ratio", [args.set], args.seed,
                                   cfg.snapshot())
    manifest.wall_clock_s = time.time() - t0
    manifest.save(outdir / "manifest.json")
    print(json.dumps(report.to_json_dict(), sort_keys=True, indent=1))
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = list(SUITES) if args.all or not args.suite else args.suite
    results = run_suites(names, seed=args.seed)
    return EXIT_OK if all(r.ok for r in results) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addcomb",
        description="Exact-arithmetic toolkit for sum-product experiments")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all randomized components (default 0)")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[common], **kw))

    p = sub.add_parser("energy", help="exact energies of one or two sets")
    p.add_argument("sets", nargs="+", help="one or two set files")
    p.add_argument("--kind", default="both", choices=["add", "mult", "both"])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("estimate", help="certified brackets and surrogates")
    p.add_argument("set")
    p.add_argument("--quantity", default="q", choices=["q", "d", "dstar", "dd"])
    p.add_argument("--kind", default="add", choices=["add", "mult"])
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("decompose", help="split a set by witness extraction")
    p.add_argument("set")
    p.add_argument("-M", default="auto", help="structure threshold (default |A|^(2/5))")
    p.add_argument("--mode", default="plain",
                   choices=["plain", "mult_shift", "add_scale"])
    p.add_argument("--alpha", help="shift/scale parameter for the variant modes")
    p.add_argument("--outdir", default="decomposition-out")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("construct", help="build the primes-times-powers set")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--out", default="A.set")
    p.add_argument("--audit", action="store_true",
                   help="also run the doubling audit")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("scan", help="exponent scan over construction sizes")
    p.add_argument("--Ns", default="64,128,256,512,1024")
    p.add_argument("--sampler", default="full", choices=list(SAMPLERS))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("ratio", help="split the ratio set of A into halves")
    p.add_argument("set")
    p.add_argument("-M", default="auto")
    p.add_argument("--outdir", default="ratio-out")
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append",
                   help="suite name (repeatable); see --list")
    p.add_argument("--all", action="store_true", help="run all suites")
    p.add_argument("--list", action="store_true", dest="list_suites",
                   help="list suite names and exit")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "list_suites", False):
        for name in SUITES:
            print(name)
        return EXIT_OK
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_LIMIT


if __name__ == "__main__":
    sys.exit(main())
