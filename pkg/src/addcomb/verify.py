"""Verification suites: every identity, inequality and quantitative check
the package promises, runnable from the CLI (`verify`) and from pytest.

Each suite returns a SuiteResult with a flat list of failure descriptions;
an empty list means the suite passed.  All randomness is driven by the
seed argument, so runs are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .corpus import ap_set, gp_set, ap_gp_set, random_set
from .construct import exponent_scan, multinomial_identity, mult_doubling_audit, pg_set
from .decompose import SplitConfig, balog_wooley_split, certify_split, ratio_split
from .errors import InvalidInputError
from .energy import (commutativity_check, cube_chain_holds, diagonal_energy,
                     energy2, energy_k_pair, rep_function, threshold_set)
from .groups import (FiniteAbelianGroup, GroupFunction, circ, ek_energy,
                     ek_energy_fourier, ek_norm, triangle_check,
                     zero_norm_check)
from .sets import (FiniteRealSet, combine, higher_sumset_size,
                   higher_sumset_size_brute)
from .szt import candidate_family, dd_check, q_interval


@dataclass
class SuiteResult:
    name: str
    checks: int
    failures: list
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        state = "pass" if self.ok else "FAIL"
        line = f"{state} {self.name}: {self.checks} checks in {self.seconds:.1f}s"
        if self.failures:
            line += f", {len(self.failures)} failures"
        return line


class _Recorder:
    def __init__(self):
        self.checks = 0
        self.failures = []

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


def _random_pair(rng, max_size=12, lo=-30, hi=30):
    na = rng.randint(1, max_size)
    nb = rng.randint(1, max_size)
    pool = list(range(lo, hi + 1))
    return (FiniteRealSet(rng.sample(pool, na)),
            FiniteRealSet(rng.sample(pool, nb)))


def _random_funcs(rng, count, max_support, bound=3):
    out = []
    for _ in range(count):
        f = {}
        for _ in range(rng.randint(1, max_support)):
            f[Fraction(rng.randint(-8, 8))] = rng.randint(-bound, bound)
        f = {k: v for k, v in f.items() if v}
        out.append(f or {Fraction(0): 1})
    return out


# ---------------------------------------------------------------------------

def suite_identities(seed: int = 0) -> SuiteResult:
    """Exact identity suite on 200 seeded random set pairs."""
    t0 = time.time()
    rec = _Recorder()
    rng = random.Random(seed)
    for i in range(200):
        A, B = _random_pair(rng)
        # energy through representation functions, all four operator routes
        e = energy2(A, B, "additive").value
        rec.check(e == rep_function(A, B, "sum").power_sum(2),
                  f"iter {i}: sum-route energy mismatch")
        rec.check(e == rep_function(A, B, "diff").power_sum(2),
                  f"iter {i}: diff-route energy mismatch")
        ra = rep_function(A, A, "diff")
        rb = rep_function(B, B, "diff")
        rec.check(e == sum(v * rb[x] for x, v in ra.items()),
                  f"iter {i}: correlation-product energy mismatch")
        az, bz = A.remove_zero(), B.remove_zero()
        if len(az) and len(bz):
            em = energy2(az, bz, "multiplicative").value
            rec.check(em == rep_function(az, bz, "prod").power_sum(2),
                      f"iter {i}: prod-route energy mismatch")
            rec.check(em == rep_function(az, bz, "quot").power_sum(2),
                      f"iter {i}: quot-route energy mismatch")
        # higher sumset identity vs brute force, both signs and kinds
        for sign in ("plus", "minus"):
            rec.check(higher_sumset_size(A, sign, "additive")
                      == higher_sumset_size_brute(A, sign, "additive"),
                      f"iter {i}: additive {sign} slice identity")
            if len(az):
                rec.check(higher_sumset_size(az, sign, "multiplicative")
                          == higher_sumset_size_brute(az, sign, "multiplicative"),
                          f"iter {i}: multiplicative {sign} slice identity")
        # diagonal identity
        rec.check(diagonal_energy(A, 2) == energy_k_pair(A, A, 3, "additive").value,
                  f"iter {i}: diagonal identity k=2")
        if len(A) <= 10:
            rec.check(diagonal_energy(A, 3) == energy_k_pair(A, A, 4, "additive").value,
                      f"iter {i}: diagonal identity k=3")
        # the three correlation identities, sizes within the contract bounds
        l = rng.randint(2, 4)
        fs = _random_funcs(rng, l, max_support=8)
        gs = _random_funcs(rng, l, max_support=8)
        lhs, rhs = commutativity_check(fs, gs, "scalar")
        rec.check(lhs == rhs, f"iter {i}: scalar identity {lhs}!={rhs}")
        k, l = rng.randint(2, 4), rng.randint(2, 4)
        fs = _random_funcs(rng, k, max_support=6)
        lhs, rhs = commutativity_check(fs, mode="multi_scalar", l=l)
        rec.check(lhs == rhs, f"iter {i}: multi-scalar identity {lhs}!={rhs}")
        k, l = rng.randint(2, 3), rng.randint(2, 3)
        fs = _random_funcs(rng, k, max_support=4)
        lhs, rhs = commutativity_check(fs, mode="sigma", l=l)
        rec.check(lhs == rhs, f"iter {i}: sigma identity {lhs}!={rhs}")
    return SuiteResult("identities", rec.checks, rec.failures, time.time() - t0)


def suite_inequalities(seed: int = 0) -> SuiteResult:
    """Exact inequality suite on the same kind of corpus."""
    t0 = time.time()
    rec = _Recorder()
    rng = random.Random(seed)
    for i in range(200):
        A, B = _random_pair(rng)
        na, nb = len(A), len(B)
        e2 = energy2(A, B, "additive").value
        rec.check(e2 <= min(na * na * nb, nb * nb * na),
                  f"iter {i}: energy above trivial bound")
        rec.check(e2 * e2 <= (na * nb) ** 3,
                  f"iter {i}: energy above 3/2-power bound")
        for op in ("sum", "diff"):
            rec.check(e2 * len(combine(A, B, op)) >= na ** 2 * nb ** 2,
                      f"iter {i}: lower CS bound {op}")
        e3_self = energy_k_pair(A, A, 3, "additive").value
        for sign in ("plus", "minus"):
            rec.check(na ** 6 <= e3_self * higher_sumset_size(A, sign, "additive"),
                      f"iter {i}: order-3 CS additive {sign}")
        az = A.remove_zero()
        if len(az):
            e3m = energy_k_pair(az, az, 3, "multiplicative").value
            for sign in ("plus", "minus"):
                rec.check(len(az) ** 6
                          <= e3m * higher_sumset_size(az, sign, "multiplicative"),
                          f"iter {i}: order-3 CS multiplicative {sign}")
        e2_self = energy2(A, A, "additive").value
        rec.check(e2_self ** 2 <= e3_self * na ** 2,
                  f"iter {i}: order-2/3 power step")
        e3_cross = energy_k_pair(A, B, 3, "additive").value
        tau = 1
        while tau <= na:
            s = threshold_set(A, B, tau, "additive")
            rec.check(tau ** 3 * len(s) <= e3_cross,
                      f"iter {i}: threshold mass at tau={tau}")
            tau *= 2
        # subadditive cube chain over a random partition of A
        if na >= 2:
            cut = rng.randint(1, na - 1)
            elems = list(A)
            rng.shuffle(elems)
            parts = [FiniteRealSet(elems[:cut]), FiniteRealSet(elems[cut:])]
            vals = [energy_k_pair(p, B, 3, "additive").value for p in parts]
            rec.check(cube_chain_holds(e3_cross, vals),
                      f"iter {i}: subadditive cube chain")
    return SuiteResult("inequalities", rec.checks, rec.failures, time.time() - t0)


NORM_GROUPS = (FiniteAbelianGroup.cyclic(8), FiniteAbelianGroup.cyclic(12),
               FiniteAbelianGroup.cyclic(16), FiniteAbelianGroup.cube(3))
EKL_GROUPS = (FiniteAbelianGroup.cyclic(8), FiniteAbelianGroup.cube(3))
EKL_PAIRS = ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2))


def suite_norms(seed: int = 0) -> SuiteResult:
    """Triangle inequalities with directed rounding plus the zero-norm law."""
    t0 = time.time()
    rec = _Recorder()
    rng = random.Random(seed)

    def rand_fn(group):
        return GroupFunction(group, [rng.randint(-5, 5)
                                     for _ in range(group.order)])

    for group in NORM_GROUPS:
        for k in (2, 3, 4):
            for trial in range(100):
                f, g = rand_fn(group), rand_fn(group)
                res = triangle_check(f, g, k)
                rec.check(res.holds,
                          f"triangle {group!r} k={k} trial {trial}")
    for group in EKL_GROUPS:
        for k, l in EKL_PAIRS:
            for trial in range(100):
                f, g = rand_fn(group), rand_fn(group)
                res = triangle_check(f, g, k, l)
                rec.check(res.holds,
                          f"triangle {group!r} (k,l)=({k},{l}) trial {trial}")
    z6 = FiniteAbelianGroup.cyclic(6)
    for k in (2, 4):
        for mask in range(3 ** 6):
            vals = []
            m = mask
            for _ in range(6):
                vals.append((-1, 0, 1)[m % 3])
                m //= 3
            f = GroupFunction(z6, vals)
            verdict = zero_norm_check(f, k)
            expected = "f_is_zero" if all(v == 0 for v in vals) \
                else "f_nonzero_with_positive_norm"
            rec.check(verdict == expected, f"zero-norm law k={k} mask={mask}")
    return SuiteResult("norms", rec.checks, rec.failures, time.time() - t0)


def suite_examples(_seed: int = 0) -> SuiteResult:
    """The two cube-group model computations, exactly and through the DFT."""
    t0 = time.time()
    rec = _Recorder()
    from .groups import walsh_exact
    for n in (2, 3):
        group = FiniteAbelianGroup.cube(n)
        full = (1 << n) - 1
        f = GroupFunction(group, [(-1) ** ((full & x).bit_count() & 1)
                                  for x in range(group.order)])
        hat = walsh_exact(f)
        rec.check(all((hat.re[r] == 0) == (r != full) for r in range(group.order)),
                  f"n={n}: transform not supported on the full-mask character")
        rec.check(ek_norm(f, 3).raw == 0, f"n={n}: odd norm not zero")
        four = ek_energy_fourier(f, 3)
        rec.check(abs(four) <= 1e-9, f"n={n}: fourier route k=3 not ~0")
        e2 = ek_energy(f, 2)
        rec.check(abs(float(e2) - ek_energy_fourier(f, 2)) <= 1e-9 * float(e2),
                  f"n={n}: fourier route k=2 off")
        # three characters with masks xor-ing to zero
        m1, m2 = 1, 2
        chars = [GroupFunction(group, [(-1) ** ((m & x).bit_count() & 1)
                                       for x in range(group.order)])
                 for m in (m1, m2, m1 ^ m2)]
        corr = [circ(c, c) for c in chars]
        prod_sum = sum(corr[0].re[x] * corr[1].re[x] * corr[2].re[x]
                       for x in range(group.order))
        rec.check(prod_sum == 2 ** (4 * n),
                  f"n={n}: character triple product != 2^{4 * n}")
        for idx, h in enumerate(corr):
            rec.check(sum(v ** 3 for v in h.re) == 0,
                      f"n={n}: factor {idx} cube sum nonzero")
        for idx, c in enumerate(chars):
            fe = ek_energy_fourier(c, 3)
            rec.check(abs(fe) <= 1e-9, f"n={n}: factor {idx} fourier k=3 not ~0")
    return SuiteResult("examples", rec.checks, rec.failures, time.time() - t0)


def suite_multinomial(_seed: int = 0) -> SuiteResult:
    """Exhaustive multinomial identity for all l <= 4, k <= 6."""
    t0 = time.time()
    rec = _Recorder()
    for l in range(1, 5):
        for k in range(1, 7):
            res = multinomial_identity(l, k)
            rec.check(res.holds, f"multinomial l={l} k={k}: {res.failures[:3]}")
    return SuiteResult("multinomial", rec.checks, rec.failures, time.time() - t0)


def _bracket_corpus(seed: int):
    sets = []
    for n in (16, 32, 64):
        sets.append((f"AP({n})", ap_set(n)))
        sets.append((f"GP({n})", gp_set(n)))
        sets.append((f"APuGP({n})", ap_gp_set(n)))
        sets.append((f"random({n})", random_set(n, 1, 50 * n, seed=seed + n,
                                                nonzero=True)))
        sets.append((f"PG({n})", pg_set(n).A))
    return sets


def suite_brackets(seed: int = 0) -> SuiteResult:
    """Certified interval sanity for the standard corpus."""
    t0 = time.time()
    rec = _Recorder()
    for name, A in _bracket_corpus(seed):
        fam = candidate_family(A)
        for kind in ("additive", "multiplicative"):
            qi = q_interval(A, fam, kind)
            rec.check(1 <= qi.lower <= qi.upper <= len(A),
                      f"{name} {kind}: interval ordering broken")
            for tag, B in fam.for_kind(kind):
                e3 = energy_k_pair(A, B, 3, kind).value
                rec.check(Fraction(e3) <= qi.upper * len(A) * len(B) ** 2,
                          f"{name} {kind}: member {tag} beats the upper bound")
    qi = q_interval(ap_set(64), kind="additive")
    rec.check(qi.lower >= 16, f"AP(64) additive lower endpoint {qi.lower} < 16")
    qi = q_interval(gp_set(64), kind="multiplicative")
    rec.check(qi.lower >= 16, f"GP(64) multiplicative lower endpoint {qi.lower} < 16")
    return SuiteResult("brackets", rec.checks, rec.failures, time.time() - t0)


def _decomposition_corpus(seed: int):
    return (("AP(64)", ap_set(64)), ("GP(128)", gp_set(128)),
            ("APuGP(64)", ap_gp_set(64)),
            ("random(128)", random_set(128, 1, 10 ** 6, seed=seed + 1,
                                       nonzero=True)),
            ("PG(256)", pg_set(256).A))


def suite_decomposition(seed: int = 0) -> SuiteResult:
    """Splitting runs: exact partitions, certification bounds, determinism."""
    t0 = time.time()
    rec = _Recorder()
    cfg = SplitConfig(seed=seed)
    for name, A in _decomposition_corpus(seed):
        t_set = time.time()
        trace = balog_wooley_split(A, cfg)
        rec.check(trace.B.isdisjoint(trace.C) and trace.B.union(trace.C) == A,
                  f"{name}: not a partition")
        report = certify_split(A, trace.B, trace.C, const=100, log_exp=3)
        for key in ("E3_additive_B", "E3_multiplicative_C",
                    "E2_additive_B", "E2_multiplicative_C"):
            rec.check(report.bounds_ok[key], f"{name}: {key} exceeds bound")
        rerun = balog_wooley_split(A, cfg)
        rec.check(trace.to_json() == rerun.to_json(),
                  f"{name}: rerun trace differs")
        rec.check(time.time() - t_set < 300, f"{name}: run exceeded 5 minutes")
    return SuiteResult("decomposition", rec.checks, rec.failures, time.time() - t0)


def suite_construction(seed: int = 0) -> SuiteResult:
    """Exponent scan of the product construction plus the doubling audit."""
    t0 = time.time()
    rec = _Recorder()
    result = exponent_scan([64, 128, 256, 512, 1024], sampler="full", seed=seed)
    rec.check(result.slope_additive >= 3.0,
              f"additive slope {result.slope_additive:.3f} < 3.0")
    rec.check(result.slope_multiplicative >= 3.0,
              f"multiplicative slope {result.slope_multiplicative:.3f} < 3.0")
    for row in result.rows:
        rec.check(row.fiber_ok, f"N={row.N}: fiber inequality fails")
        rec.check(row.e3cs_ok, f"N={row.N}: order-3 CS instance fails")
    for N in (64, 128, 256, 512, 1024):
        audit = mult_doubling_audit(pg_set(N))
        rec.check(audit.holds,
                  f"N={N}: doubling audit {audit.value} above {audit.bound}")
    return SuiteResult("construction", rec.checks, rec.failures, time.time() - t0)


def suite_ddratio(seed: int = 0) -> SuiteResult:
    """Product of doubling surrogates vs size, and the ratio-set splitter."""
    t0 = time.time()
    rec = _Recorder()
    for name, A in _bracket_corpus(seed):
        if 0 in A:
            continue
        rep = dd_check(A, C1=4, c=2)
        rec.check(rep.holds, f"{name}: surrogate product below size")
    rng = random.Random(seed)
    for trial in range(20):
        n = rng.randint(3, 8)
        A = FiniteRealSet(rng.sample(range(-30, 31), n))
        from .sets import ratio_set
        R = ratio_set(A)
        r1, r2, report = ratio_split(A, SplitConfig(seed=seed))
        rec.check(2 * len(r1) >= len(R) and r1.issubset(R),
                  f"trial {trial}: first half too small or escapes R")
        rec.check(2 * len(r2) >= len(R) and r2.issubset(R),
                  f"trial {trial}: second half too small or escapes R")
        rec.check(report.reflection_verified, f"trial {trial}: reflection fails")
        rec.check(report.inversion_verified, f"trial {trial}: inversion fails")
    return SuiteResult("ddratio", rec.checks, rec.failures, time.time() - t0)


SUITES = {
    "identities": suite_identities,
    "inequalities": suite_inequalities,
    "norms": suite_norms,
    "examples": suite_examples,
    "multinomial": suite_multinomial,
    "brackets": suite_brackets,
    "decomposition": suite_decomposition,
    "construction": suite_construction,
    "ddratio": suite_ddratio,
}


def run_suites(names, seed: int = 0, out=print):
    """Run the named suites; returns the list of SuiteResults."""
    results = []
    for name in names:
        if name not in SUITES:
            raise InvalidInputError(f"unknown suite {name!r}; "
                                    f"choose from {', '.join(SUITES)}")
        res = SUITES[name](seed)
        results.append(res)
        out(res.summary())
        for failure in res.failures[:10]:
            out(f"  - {failure}")
    return results
