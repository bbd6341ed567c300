"""Structured lower-bound sets (odd primes times powers of two), their
audits, the exponent-scan harness and the multinomial identity checker.

The product set A = P * G of t consecutive odd primes with K powers of two
has |A| = tK exactly (odd part and 2-adic valuation identify the factors)
and carries simultaneously large additive and multiplicative order-3
energies of order roughly |A|^(13/4) once K is near N^(1/4); the scan
measures those energies exactly and fits the growth exponents.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .energy import energy_k_pair, _pair_counts_scaled
from .errors import InvalidInputError, ResourceLimitError
from .roots import floor_log2, introot
from .sets import FiniteRealSet, higher_sumset_size

SIEVE_GUARD = 10 ** 7


def sieve_primes(limit: int) -> list:
    """All primes up to limit inclusive."""
    if limit < 2:
        return []
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p:: p] = b"\x00" * len(flags[p * p:: p])
    return [i for i, v in enumerate(flags) if v]


def first_odd_primes(t: int) -> list:
    """The t consecutive odd primes 3, 5, 7, ...; sieve bound grows on demand."""
    if t < 1:
        return []
    limit = 64
    if t >= 6:
        # p_n < n (ln n + ln ln n) for n >= 6, plus one for skipping 2
        n = t + 1
        limit = int(n * (math.log(n) + math.log(math.log(n)))) + 16
    while True:
        if limit > SIEVE_GUARD:
            raise ResourceLimitError(f"prime sieve limit {limit} exceeds guard {SIEVE_GUARD}")
        odd = [p for p in sieve_primes(limit) if p >= 3]
        if len(odd) >= t:
            return odd[:t]
        limit *= 2


@dataclass(frozen=True)
class PGConstruction:
    """Product set of prime rows times dyadic columns."""

    N: int
    K: int
    t: int
    P: FiniteRealSet
    G: FiniteRealSet
    A: FiniteRealSet

    def fiber(self, j: int) -> FiniteRealSet:
        """Row slice P * 2^j."""
        return self.P.dilate(2 ** j)

    def to_json_dict(self) -> dict:
        return {"N": self.N, "K": self.K, "t": self.t, "size": len(self.A)}


def pg_set(N: int, K_override: Optional[int] = None) -> PGConstruction:
    """Build the product construction targeting N elements.

    K defaults to ceil(N^(1/4)); t = ceil(N/K) prime rows give
    |A| = t*K in [N, N+K] exactly.
    """
    if N < 4:
        raise InvalidInputError("pg_set: need N >= 4")
    if K_override is not None:
        if K_override < 1:
            raise InvalidInputError("pg_set: K must be >= 1")
        K = K_override
    else:
        K = introot(N - 1, 4) + 1  # ceil(N^(1/4)) for N not a 4th power
        if K ** 4 < N:
            K += 1
    t = -(-N // K)
    P = first_odd_primes(t)
    A = FiniteRealSet(p * (1 << i) for p in P for i in range(1, K + 1))
    if len(A) != t * K:
        raise InvalidInputError("pg_set: product collision (impossible for odd primes)")
    return PGConstruction(N=N, K=K, t=t, P=FiniteRealSet(P),
                          G=FiniteRealSet(1 << i for i in range(1, K + 1)), A=A)


# ---------------------------------------------------------------------------
# audits

@dataclass(frozen=True)
class AuditReport:
    N: int
    K: int
    size: int
    value: int
    bound: Fraction
    holds: bool

    def to_json_dict(self) -> dict:
        return {"N": self.N, "K": self.K, "size": self.size,
                "value": self.value, "bound": str(self.bound),
                "holds": self.holds}


def mult_doubling_audit(construction: PGConstruction,
                        const: int = 50) -> AuditReport:
    """Exact size of {(a1*a, a2*a)} for the construction, checked against
    const * (N^2 + N^3/K) * log2(N)^2."""
    value = higher_sumset_size(construction.A, "plus", "multiplicative")
    N, K = construction.N, construction.K
    lg = max(1, floor_log2(N))
    bound = const * (Fraction(N) ** 2 + Fraction(N) ** 3 / K) * lg ** 2
    return AuditReport(N=N, K=K, size=len(construction.A), value=value,
                       bound=bound, holds=Fraction(value) <= bound)


# ---------------------------------------------------------------------------
# exponent scan

SAMPLERS = ("full", "random_half", "adversarial_half")


def _sample_subset(c: PGConstruction, sampler: str, seed: int) -> FiniteRealSet:
    A = c.A
    if sampler == "full":
        return A
    half = -(-len(A) // 2)
    if sampler == "random_half":
        rng = random.Random(seed)
        return FiniteRealSet(rng.sample(list(A), half))
    if sampler == "adversarial_half":
        # one-shot greedy: drop the elements with the largest quadruple
        # participation in the difference statistics
        counts, _ = _pair_counts_scaled(A, A, "diff")
        d, ints = A.scaled_ints()
        scores = []
        for a_int, a in zip(ints, A):
            s = sum(counts[a_int - b] ** 2 for b in ints)
            scores.append((-s, a))
        scores.sort()
        keep = [a for _, a in scores[len(A) - half:]]
        return FiniteRealSet(keep)
    raise InvalidInputError(f"unknown sampler {sampler!r}")


@dataclass(frozen=True)
class ScanRow:
    N: int
    size: int
    subset_size: int
    e3_additive: int
    e3_multiplicative: int
    mult_doubling: int
    fiber_sum_e3: int
    fiber_ok: bool
    e3cs_ok: bool

    def csv_row(self) -> str:
        return (f"{self.N},{self.size},{self.subset_size},{self.e3_additive},"
                f"{self.e3_multiplicative},{self.mult_doubling},"
                f"{self.fiber_sum_e3},{self.fiber_ok},{self.e3cs_ok}")


@dataclass(frozen=True)
class ScanResult:
    sampler: str
    seed: int
    rows: tuple
    slope_additive: float
    slope_multiplicative: float

    CSV_HEADER = ("N,size,subset_size,E3_additive,E3_multiplicative,"
                  "mult_doubling,fiber_sum_E3,fiber_ok,e3cs_ok")

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        lines.extend(r.csv_row() for r in self.rows)
        lines.append(f"# sampler={self.sampler} seed={self.seed} "
                     f"slope_additive={self.slope_additive:.6f} "
                     f"slope_multiplicative={self.slope_multiplicative:.6f}")
        return "\n".join(lines) + "\n"


def _log2_big(n: int) -> float:
    if n <= 0:
        raise InvalidInputError("log2 of nonpositive value")
    shift = max(0, n.bit_length() - 53)
    return shift + math.log2(n >> shift)


def _ols_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)


def scan_row(N: int, sampler: str = "full", seed: int = 0) -> ScanRow:
    """One exact measurement row of the construction at target size N."""
    c = pg_set(N)
    B = _sample_subset(c, sampler, seed + N)
    e3a = energy_k_pair(B, B, 3, "additive").value
    e3m = energy_k_pair(B, B, 3, "multiplicative").value
    doubling = higher_sumset_size(B, "plus", "multiplicative")
    fiber_sum = 0
    for j in range(1, c.K + 1):
        fj = B.intersection(c.fiber(j))
        if len(fj):
            fiber_sum += energy_k_pair(fj, fj, 3, "additive").value
    fiber_ok = e3a >= fiber_sum
    e3cs_ok = len(B) ** 6 <= e3m * doubling
    return ScanRow(N=N, size=len(c.A), subset_size=len(B), e3_additive=e3a,
                   e3_multiplicative=e3m, mult_doubling=doubling,
                   fiber_sum_e3=fiber_sum, fiber_ok=fiber_ok, e3cs_ok=e3cs_ok)


def exponent_scan(Ns: Sequence[int], sampler: str = "full", seed: int = 0,
                  threads: int = 1) -> ScanResult:
    """Exact order-3 energies of the construction across sizes plus fitted
    growth exponents of log2(E) against log2(|A|)."""
    if sampler not in SAMPLERS:
        raise InvalidInputError(f"unknown sampler {sampler!r}")
    Ns = list(Ns)
    if sorted(Ns) != Ns or len(set(Ns)) != len(Ns):
        raise InvalidInputError("exponent_scan: target sizes must be strictly increasing")
    if len(Ns) < 2:
        raise InvalidInputError("exponent_scan: need at least two sizes")
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(scan_row, Ns, [sampler] * len(Ns),
                                 [seed] * len(Ns)))
    else:
        rows = [scan_row(N, sampler, seed) for N in Ns]
    xs = [_log2_big(r.size) for r in rows]
    slope_a = _ols_slope(xs, [_log2_big(r.e3_additive) for r in rows])
    slope_m = _ols_slope(xs, [_log2_big(r.e3_multiplicative) for r in rows])
    return ScanResult(sampler=sampler, seed=seed, rows=tuple(rows),
                      slope_additive=slope_a, slope_multiplicative=slope_m)


# ---------------------------------------------------------------------------
# multinomial identity

@dataclass(frozen=True)
class MultinomialResult:
    l: int
    k: int
    holds: bool
    failures: tuple

    def to_json_dict(self) -> dict:
        return {"l": self.l, "k": self.k, "holds": self.holds,
                "failures": [list(f) for f in self.failures]}


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    for dividers in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for d in dividers:
            out.append(d - prev - 1)
            prev = d
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def multinomial_identity(l: int, k: int) -> MultinomialResult:
    """Exhaustively verify that the weighted multinomial sum over exponent
    assignments on {0,1}^l reproduces the binomial coefficients of lk.

    For every n in 0..l*k the sum of k!/prod(n_eps!) over assignments with
    sum n_eps = k and sum wt(eps) n_eps = n must equal C(lk, n); all 2^l
    assignments components are enumerated explicitly.
    """
    if not (1 <= l <= 5 and 1 <= k <= 7):
        raise ResourceLimitError(
            f"multinomial_identity: guard allows 1 <= l <= 5, 1 <= k <= 7, got l={l}, k={k}")
    weights = [bin(eps).count("1") for eps in range(2 ** l)]
    fact = [math.factorial(i) for i in range(k + 1)]
    k_fact = fact[k]
    lhs = [0] * (l * k + 1)
    for comp in _compositions(k, 2 ** l):
        n = sum(w * c for w, c in zip(weights, comp))
        denom = 1
        for c in comp:
            denom *= fact[c]
        lhs[n] += k_fact // denom
    failures = []
    for n in range(l * k + 1):
        rhs = math.comb(l * k, n)
        if lhs[n] != rhs:
            failures.append((n, lhs[n], rhs))
    return MultinomialResult(l=l, k=k, holds=not failures,
                             failures=tuple(failures))
