"""Certified interval estimation for threshold-set growth quantities.

The maximum over all finite B of E_3(A,B)/(|A| |B|^2) is not computable,
but it is bracketed by exact unconditional inequalities: any candidate B
gives a lower bound, and the square root of E_3(A) divided by |A| (or the
trivial |A|) caps it from above.  Everything reported here separates
*certified* facts (exact inequalities) from *heuristic* ones (bounds whose
constants the theory leaves unspecified).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .energy import energy2, energy_k_pair, sym_set
from .errors import InvalidInputError
from .roots import floor_log2, polylog_slack, sqrt_upper
from .sets import FiniteRealSet, combine

KINDS = ("additive", "multiplicative")


# ---------------------------------------------------------------------------
# candidate families

@dataclass(frozen=True)
class FamilyConfig:
    popular_m: int = 64
    n_translates: int = 4
    n_random: int = 2
    random_fractions: tuple = (Fraction(1, 4), Fraction(1, 2))
    seed: int = 0

    def snapshot(self) -> dict:
        return {"popular_m": self.popular_m, "n_translates": self.n_translates,
                "n_random": self.n_random,
                "random_fractions": [str(f) for f in self.random_fractions],
                "seed": self.seed}


@dataclass(frozen=True)
class CandidateFamily:
    """Deterministic search family standing in for 'all finite B'."""

    members: tuple
    tags: tuple
    seed: int

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(zip(self.tags, self.members))

    def for_kind(self, kind: str) -> list:
        """(tag, member) pairs usable for the given kind; multiplicative
        work drops zeros and skips members that become empty."""
        out = []
        for tag, member in zip(self.tags, self.members):
            if kind == "multiplicative":
                member = member.remove_zero()
                if len(member) == 0:
                    continue
            out.append((tag, member))
        return out


def _popular_values(A: FiniteRealSet, op: str, m: int) -> FiniteRealSet:
    from .energy import _pair_counts
    counts = _pair_counts(A, A, op)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return FiniteRealSet(k for k, _ in ranked[:m])


def candidate_family(A: FiniteRealSet,
                     config: FamilyConfig = FamilyConfig()) -> CandidateFamily:
    """Deterministic family of candidate sets B built from A itself,
    translates, dyadic sub-intervals, popular differences/ratios and seeded
    random subsets."""
    if len(A) == 0:
        raise InvalidInputError("candidate_family: empty set")
    rng = random.Random(config.seed)
    members: list = [("A", A)]
    elems = list(A)
    n = len(A)

    picks = sorted({0, n // 2, n - 1}
                   | {rng.randrange(n) for _ in range(config.n_translates)})
    for i in picks:
        members.append((f"translate[A-{elems[i]}]", A.translate(-elems[i])))

    half = n // 2
    if half >= 1:
        members.append(("dyadic[lo-half]", FiniteRealSet(elems[:half])))
        members.append(("dyadic[hi-half]", FiniteRealSet(elems[half:])))
    quarter = n // 4
    if quarter >= 1:
        members.append(("dyadic[lo-quarter]", FiniteRealSet(elems[:quarter])))
        members.append(("dyadic[mid-quarter]",
                        FiniteRealSet(elems[quarter:2 * quarter])))

    members.append(("popular[diff]", _popular_values(A, "diff", config.popular_m)))
    if 0 not in A:
        members.append(("popular[quot]", _popular_values(A, "quot", config.popular_m)))

    for frac in config.random_fractions:
        scaled = n * frac
        size = max(1, -(-scaled.numerator // scaled.denominator))  # ceil
        for r in range(config.n_random):
            subset = FiniteRealSet(rng.sample(elems, size))
            members.append((f"random[{frac}x#{r}]", subset))

    seen = set()
    tags, final = [], []
    for tag, member in members:
        if len(member) == 0 or member in seen:
            continue
        seen.add(member)
        tags.append(tag)
        final.append(member)
    return CandidateFamily(members=tuple(final), tags=tuple(tags),
                           seed=config.seed)


# ---------------------------------------------------------------------------
# certified intervals

@dataclass(frozen=True)
class CertifiedInterval:
    """Bracket [lower, upper] for an uncomputable quantity.

    Both endpoints come from exact unconditional inequalities unless
    lower_heuristic is set (then the lower endpoint involves an unspecified
    constant and is reported for orientation only).
    """

    quantity: str
    kind: str
    lower: Fraction
    upper: Fraction
    lower_witness: str
    upper_source: str
    size: int
    seed: int
    config: dict = field(default_factory=dict)
    lower_heuristic: bool = False

    def to_json_dict(self) -> dict:
        return {"quantity": self.quantity, "kind": self.kind,
                "lower": str(self.lower), "upper": str(self.upper),
                "lower_decimal": float(self.lower),
                "upper_decimal": float(self.upper),
                "witness": self.lower_witness,
                "upper_source": self.upper_source,
                "lower_heuristic": self.lower_heuristic,
                "size": self.size, "seed": self.seed, "config": self.config}


def _e3(A: FiniteRealSet, B: FiniteRealSet, kind: str) -> int:
    return energy_k_pair(A, B, 3, kind).value


def q_interval(A: FiniteRealSet, family: Optional[CandidateFamily] = None,
               kind: str = "additive") -> CertifiedInterval:
    """Certified bracket for the maximal normalized cross energy of order 3.

    lower: best family member of E_3(A,B)/(|A||B|^2) (every B is a valid
    lower bound by definition of the maximum).
    upper: min(|A|, sqrt(E_3(A))/|A|), using a directed-rounding upper
    enclosure of the square root.
    """
    if kind not in KINDS:
        raise InvalidInputError(f"q_interval: unknown kind {kind!r}")
    if len(A) == 0:
        raise InvalidInputError("q_interval: empty set")
    if kind == "multiplicative" and 0 in A:
        raise InvalidInputError("q_interval: multiplicative kind needs 0 not in A")
    family = candidate_family(A) if family is None else family
    n = len(A)
    best = Fraction(0)
    best_tag = ""
    for tag, B in family.for_kind(kind):
        val = Fraction(_e3(A, B, kind), n * len(B) ** 2)
        if val > best:
            best, best_tag = val, tag
    e3_self = _e3(A, A, kind)
    # 24 digits keep the enclosure tight while the endpoint stays readable
    root_up = sqrt_upper(Fraction(e3_self), digits=24)
    upper = root_up / n
    source = "cauchy_schwarz_E3"
    if upper > n:
        upper = Fraction(n)
        source = "trivial_cardinality"
    return CertifiedInterval(
        quantity="q", kind=kind, lower=best, upper=upper,
        lower_witness=best_tag, upper_source=source, size=n,
        seed=family.seed)


def d_sandwich(A: FiniteRealSet, family: Optional[CandidateFamily] = None,
               kind: str = "additive",
               slack: tuple = (4, 2)) -> CertifiedInterval:
    """Bracket for the threshold-growth constant itself.

    The upper endpoint q_upper is unconditional; the lower endpoint divides
    the certified q lower bound by a configurable polylog slack (the
    comparison constant is unspecified in the theory) and is flagged
    heuristic.  1 <= D <= |A| is enforced throughout.
    """
    qi = q_interval(A, family, kind)
    n = len(A)
    c, e = slack
    lower = max(Fraction(1), qi.lower / polylog_slack(n, c, e))
    upper = min(qi.upper, Fraction(n))
    upper = max(upper, Fraction(1))
    return CertifiedInterval(
        quantity="D", kind=kind, lower=lower, upper=upper,
        lower_witness=f"{qi.lower_witness} / slack({c},log^{e})",
        upper_source=qi.upper_source, size=n, seed=qi.seed,
        config={"slack_const": c, "slack_log_exponent": e},
        lower_heuristic=True)


# ---------------------------------------------------------------------------
# cover witnesses and doubling surrogates

@dataclass(frozen=True)
class SymCoverWitness:
    """Witness (Q, R, t) covering A inside a symmetry set.

    kind names the quantity being bounded: the 'additive' quantity uses
    multiplicative symmetry sets and vice versa (the roles cross over).
    """

    Q: FiniteRealSet
    R: FiniteRealSet
    t: Fraction
    kind: str

    def sym(self) -> FiniteRealSet:
        sym_kind = "multiplicative" if self.kind == "additive" else "additive"
        return sym_set(self.Q, self.R, self.t, sym_kind)

    def verify(self, A: FiniteRealSet) -> bool:
        if max(len(self.Q), len(self.R)) < len(A):
            return False
        return A.issubset(self.sym())


def d_cover_upper(A: FiniteRealSet, witness: SymCoverWitness) -> Fraction:
    """|Q|^2 |R|^2 / (|A| t^3) for a verified cover witness.

    An upper bound for the cover-based surrogate by definition; relative to
    the threshold-growth constant itself it is heuristic (the comparison
    constant is unspecified), so it never tightens a certified bracket.
    """
    if len(A) == 0:
        raise InvalidInputError("d_cover_upper: empty set")
    if not witness.verify(A):
        raise InvalidInputError("d_cover_upper: witness does not cover A "
                                "(or max(|Q|,|R|) < |A|)")
    t = Fraction(witness.t)
    return Fraction(len(witness.Q) ** 2 * len(witness.R) ** 2) / (len(A) * t ** 3)


def d_star(A: FiniteRealSet, family: Optional[CandidateFamily] = None,
           kind: str = "additive") -> tuple:
    """Doubling-based upper surrogate; note the cross-over: the additive
    quantity minimizes |A*B|^2/(|A||B|), the multiplicative one
    |A+B|^2/(|A||B|).  Returns (value, witness_tag)."""
    if kind not in KINDS:
        raise InvalidInputError(f"d_star: unknown kind {kind!r}")
    if len(A) == 0:
        raise InvalidInputError("d_star: empty set")
    family = candidate_family(A) if family is None else family
    n = len(A)
    combined_op = "prod" if kind == "additive" else "sum"
    best = None
    best_tag = ""
    # product-side members must avoid 0 (a zero collapses A*B), hence the
    # crossed-over for_kind filter
    members = family.for_kind("multiplicative" if kind == "additive" else "additive")
    for tag, B in members:
        val = Fraction(len(combine(A, B, combined_op)) ** 2, n * len(B))
        if best is None or val < best:
            best, best_tag = val, tag
    pool = A.remove_zero() if kind == "additive" else A
    if len(pool):
        singleton = FiniteRealSet([pool.elems[0]])
        val = Fraction(len(combine(A, singleton, combined_op)) ** 2, n)
        if best is None or val < best:
            best, best_tag = val, "singleton"
    if best is None:
        raise InvalidInputError("d_star: no usable candidate sets")
    return best, best_tag


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class GenSigmaReport:
    kind: str
    e2: int
    e3: int
    e3_ratio_vs_q_upper: Fraction
    exact_inequality_holds: bool
    e2_heuristic_ratio: float
    e3_heuristic_ratio: float

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "e2": self.e2, "e3": self.e3,
                "e3_ratio_vs_q_upper": str(self.e3_ratio_vs_q_upper),
                "exact_inequality_holds": self.exact_inequality_holds,
                "e2_heuristic_ratio": self.e2_heuristic_ratio,
                "e3_heuristic_ratio": self.e3_heuristic_ratio}


def gen_sigma_check(A1: FiniteRealSet, A2: FiniteRealSet,
                    kind: str = "additive",
                    family: Optional[CandidateFamily] = None) -> GenSigmaReport:
    """Check the cross-energy bounds that tie energies to the threshold
    quantity of A1.

    Certified part: E_3(A1,A2)/(|A1||A2|^2) <= q_upper(A1) exactly (this is
    the definition of the maximum plus its certified upper bound).  The
    order-2 and logarithmic forms involve unspecified constants and are
    reported as floating ratios only.
    """
    qi = q_interval(A1, family, kind)
    e2 = energy2(A1, A2, kind).value
    e3 = _e3(A1, A2, kind)
    n1, n2 = len(A1), len(A2)
    ratio = Fraction(e3, n1 * n2 ** 2)
    exact_ok = ratio <= qi.upper
    q_up = float(qi.upper)
    e2_ratio = e2 / (q_up ** 0.5 * n1 * n2 ** 1.5)
    log_min = max(1.0, float(floor_log2(min(n1, n2))))
    e3_ratio = e3 / (q_up * n1 * n2 ** 2 * log_min)
    return GenSigmaReport(kind=kind, e2=e2, e3=e3,
                          e3_ratio_vs_q_upper=ratio,
                          exact_inequality_holds=exact_ok,
                          e2_heuristic_ratio=e2_ratio,
                          e3_heuristic_ratio=e3_ratio)


@dataclass(frozen=True)
class DdReport:
    size: int
    d_star_additive: Fraction
    d_star_multiplicative: Fraction
    additive_witness: str
    multiplicative_witness: str
    slack: int
    holds: bool

    def to_json_dict(self) -> dict:
        return {"size": self.size,
                "d_star_additive": str(self.d_star_additive),
                "d_star_multiplicative": str(self.d_star_multiplicative),
                "additive_witness": self.additive_witness,
                "multiplicative_witness": self.multiplicative_witness,
                "slack": self.slack, "holds": self.holds}


def dd_check(A: FiniteRealSet, family: Optional[CandidateFamily] = None,
             C1: int = 4, c: int = 2) -> DdReport:
    """Check |A| <= C1 * log^c|A| * d*_add(A) * d*_mult(A).

    The family minima only over-estimate the true doubling surrogates, so
    the product bound implied by the theory must hold; failure would
    falsify the configured slack.
    """
    if 0 in A:
        raise InvalidInputError("dd_check: needs 0 not in A")
    family = candidate_family(A) if family is None else family
    da, tag_a = d_star(A, family, "additive")
    dm, tag_m = d_star(A, family, "multiplicative")
    slack = polylog_slack(len(A), C1, c)
    holds = Fraction(len(A)) <= slack * da * dm
    return DdReport(size=len(A), d_star_additive=da, d_star_multiplicative=dm,
                    additive_witness=tag_a, multiplicative_witness=tag_m,
                    slack=slack, holds=holds)
