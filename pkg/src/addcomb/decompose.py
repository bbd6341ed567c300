"""Witness-driven set splitting and its certification.

The core loop peels a set apart: as long as the residual has a
multiplicative threshold-set witness strong enough to clear a score test,
a dyadic class of elements certified by that witness is extracted into one
part; when no witness clears the bar the loop stops and the residual forms
the other part.  Shifted/scaled variants reuse the same engine on a
transformed residual, and the ratio-set splitter applies the reflection
R = 1 - R and inversion R* = 1/R* symmetries to the output.

Every run is deterministic given its seed and emits a full trace; traces
serialize to byte-identical JSON on reruns.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .energy import energy2, energy_k_pair, threshold_set, _pair_counts_scaled, _ratio_key
from .errors import InvalidInputError, ResourceLimitError
from .roots import floor_log2, introot, pow_frac_upper
from .sets import FiniteRealSet
from .szt import FamilyConfig, candidate_family, q_interval


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class SplitConfig:
    """Knobs of the splitting loop.

    M is the structure threshold: a round proceeds only if some witness
    scores above 1/M.  The default (None) resolves to an upper enclosure of
    |A|^(2/5), the exponent-optimal choice.  term_const scales the round
    budget ceil(term_const * sqrt(M) * log2|A|).
    """

    M: Optional[Fraction] = None
    term_const: int = 8
    max_rounds: Optional[int] = None
    family: FamilyConfig = field(default_factory=lambda: FamilyConfig(
        popular_m=32, n_translates=2, n_random=1))
    seed: int = 0

    def resolve_m(self, n: int) -> Fraction:
        if self.M is not None:
            if self.M < 1:
                raise InvalidInputError("SplitConfig: M must be >= 1")
            return Fraction(self.M)
        return max(Fraction(1), pow_frac_upper(max(n, 2), 2, 5, digits=12))

    def round_budget(self, n: int, M: Fraction) -> int:
        if self.max_rounds is not None:
            return self.max_rounds
        sqrt_m = introot(int(M) + 1, 2) + 1
        return max(4, self.term_const * sqrt_m * max(1, floor_log2(max(n, 2))))

    def snapshot(self) -> dict:
        return {"M": None if self.M is None else str(self.M),
                "term_const": self.term_const, "max_rounds": self.max_rounds,
                "family": self.family.snapshot(), "seed": self.seed}


@dataclass(frozen=True)
class Witness:
    """Threshold-set witness of structure inside Cp: a candidate set G and
    level tau whose threshold set is large relative to |Cp|^2|G|^2."""

    G: FiniteRealSet
    tau: Fraction
    S_tau: FiniteRealSet
    score: Fraction
    tag: str
    kind: str

    def to_json_dict(self) -> dict:
        return {"tag": self.tag, "kind": self.kind, "tau": str(self.tau),
                "g_size": len(self.G), "s_size": len(self.S_tau),
                "score": str(self.score)}


@dataclass(frozen=True)
class RoundRecord:
    index: int
    residual_size: int
    witness: Witness
    q: Fraction
    piece: FiniteRealSet
    d_estimate: Fraction
    class_sizes: dict

    def to_json_dict(self) -> dict:
        return {"index": self.index, "residual_size": self.residual_size,
                "witness": self.witness.to_json_dict(), "q": str(self.q),
                "piece": [str(e) for e in self.piece],
                "d_estimate": str(self.d_estimate),
                "class_sizes": {k: v for k, v in sorted(self.class_sizes.items())}}


@dataclass
class DecompositionTrace:
    A: FiniteRealSet
    B: FiniteRealSet
    C: FiniteRealSet
    rounds: list
    stop_reason: str
    mode: str
    alpha: Optional[Fraction]
    config: dict
    seed: int
    certification: Optional[dict] = None

    def to_json_dict(self) -> dict:
        return {"mode": self.mode,
                "alpha": None if self.alpha is None else str(self.alpha),
                "size": len(self.A),
                "b": [str(e) for e in self.B],
                "c": [str(e) for e in self.C],
                "rounds": [r.to_json_dict() for r in self.rounds],
                "stop_reason": self.stop_reason,
                "config": self.config, "seed": self.seed,
                "certification": self.certification}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# witness search and extraction

def find_witness(Cp: FiniteRealSet, kind: str,
                 config: SplitConfig = SplitConfig(),
                 M: Optional[Fraction] = None) -> Optional[Witness]:
    """Best-scoring threshold witness over the candidate family, or None
    when no candidate clears the stop test score > 1/M."""
    if len(Cp) == 0:
        raise InvalidInputError("find_witness: empty set")
    if kind == "multiplicative" and 0 in Cp:
        raise InvalidInputError("find_witness: multiplicative kind needs 0 not in Cp")
    if len(Cp) == 1:
        return None  # a single point carries no threshold structure
    M = config.resolve_m(len(Cp)) if M is None else M
    family = candidate_family(Cp, config.family)
    op = "quot" if kind == "multiplicative" else "diff"
    n = len(Cp)
    best = None  # (score, s_size, -tau, order) for deterministic ties
    for order, (tag, G) in enumerate(family.for_kind(kind)):
        counts, _ = _pair_counts_scaled(Cp, G, op)
        values = sorted(counts.values())
        if not values:
            continue
        gsq = len(G) ** 2 * n ** 2
        tau = 1
        while tau <= values[-1]:
            # |S_tau| by binary search over the sorted multiplicities
            s_size = len(values) - bisect.bisect_left(values, tau)
            if s_size:
                score = Fraction(s_size * tau ** 3, gsq)
                key = (score, s_size, -tau, -order)
                if best is None or key > best[0]:
                    best = (key, tag, G, tau)
            tau *= 2
    if best is None:
        return None
    (score, _s, _t, _o), tag, G, tau = best
    if score * M <= 1:
        return None
    s_tau = threshold_set(Cp, G, Fraction(tau), kind)
    return Witness(G=G, tau=Fraction(tau), S_tau=s_tau, score=score,
                   tag=tag, kind=kind)


def _cover_counts(Cp: FiniteRealSet, witness: Witness) -> list:
    """For each a in Cp, how many shifts/ratios of a through G land in the
    witness threshold set."""
    G = witness.G
    S = witness.S_tau
    if witness.kind == "multiplicative":
        d_c, ints_c = Cp.scaled_ints()
        d_g, ints_g = G.scaled_ints()
        d = math.lcm(d_c, d_g)
        fc, fg = d // d_c, d // d_g
        ic = [v * fc for v in ints_c]
        ig = [v * fg for v in ints_g]
        s_keys = {_ratio_key(*s.as_integer_ratio()) for s in S}
        return [sum(1 for g in ig if _ratio_key(a, g) in s_keys) for a in ic]
    s_set = set(S)
    return [sum(1 for g in G if a - g in s_set) for a in Cp]


def dyadic_extract(Cp: FiniteRealSet, witness: Witness):
    """Partition Cp by dyadic classes of witness-cover counts and return the
    class maximizing size * class-floor.

    Returns (piece, q, class_sizes) where every member of the piece has
    count in (q, 2q]; ties break toward the larger piece, then smaller q.
    """
    counts = _cover_counts(Cp, witness)
    classes: dict = {}
    for a, c in zip(Cp, counts):
        if c == 0:
            continue
        exp = (c - 1).bit_length() - 1  # q = 2^exp < c <= 2^(exp+1)
        classes.setdefault(exp, []).append(a)
    if not classes:
        raise InvalidInputError("dyadic_extract: degenerate witness (all counts zero)")
    def class_q(exp: int) -> Fraction:
        return Fraction(2) ** exp
    best_exp = max(classes, key=lambda e: (len(classes[e]) * class_q(e),
                                           len(classes[e]), -e))
    piece = FiniteRealSet(classes[best_exp])
    sizes = {str(class_q(e)): len(members) for e, members in classes.items()}
    return piece, class_q(best_exp), sizes


# ---------------------------------------------------------------------------
# the splitting loop

def _identity(S: FiniteRealSet) -> FiniteRealSet:
    return S


def _split_engine(A: FiniteRealSet, witness_kind: str,
                  transform: Callable, untransform: Callable,
                  config: SplitConfig, mode: str,
                  alpha: Optional[Fraction],
                  presorted_b: FiniteRealSet = FiniteRealSet()) -> DecompositionTrace:
    n = len(A)
    M = config.resolve_m(n)
    max_rounds = config.round_budget(n, M)
    residual = A.difference(presorted_b)
    pieces = [presorted_b] if len(presorted_b) else []
    rounds: list = []
    stop_reason = "exhausted"
    round_no = 0
    while len(residual):
        view = transform(residual)
        search_view = view.remove_zero()
        if len(search_view) == 0:
            stop_reason = "untransformable-residual"
            break
        witness = find_witness(search_view, witness_kind, config, M)
        if witness is None:
            stop_reason = "no-witness"
            break
        round_no += 1
        if round_no > max_rounds:
            partial = DecompositionTrace(
                A=A, B=_union_all(pieces), C=residual, rounds=rounds,
                stop_reason="resource-limit", mode=mode, alpha=alpha,
                config=config.snapshot(), seed=config.seed)
            raise ResourceLimitError(
                f"splitting exceeded {max_rounds} rounds", partial=partial)
        piece_view, q, class_sizes = dyadic_extract(search_view, witness)
        piece = untransform(piece_view)
        if not piece.issubset(residual) or len(piece) == 0:
            raise InvalidInputError("split engine: extracted piece escapes the residual")
        d_est = Fraction(len(witness.S_tau) ** 2 * len(witness.G) ** 2) \
            / (q ** 3 * len(piece_view))
        rounds.append(RoundRecord(index=round_no, residual_size=len(residual),
                                  witness=witness, q=q, piece=piece,
                                  d_estimate=d_est, class_sizes=class_sizes))
        pieces.append(piece)
        residual = residual.difference(piece)
    return DecompositionTrace(A=A, B=_union_all(pieces), C=residual,
                              rounds=rounds, stop_reason=stop_reason,
                              mode=mode, alpha=alpha,
                              config=config.snapshot(), seed=config.seed)


def _union_all(sets_list) -> FiniteRealSet:
    elems: list = []
    for s in sets_list:
        elems.extend(s.elems)
    return FiniteRealSet(elems)


def balog_wooley_split(A: FiniteRealSet,
                       config: SplitConfig = SplitConfig()) -> DecompositionTrace:
    """Split A = B | C so that B sheds multiplicative-witness structure
    round by round (its pieces carry additive-side certificates) and C is
    left with no multiplicative witness above the score bar.

    Emits the full per-round trace plus an exact energy certification of
    both parts.
    """
    if len(A) < 2:
        raise InvalidInputError("balog_wooley_split: need |A| >= 2")
    if 0 in A:
        raise InvalidInputError("balog_wooley_split: needs 0 not in A")
    trace = _split_engine(A, "multiplicative", _identity, _identity,
                          config, mode="plain", alpha=None)
    trace.certification = certify_split(A, trace.B, trace.C).to_json_dict()
    for part, kind, label in ((trace.B, "additive", "q_additive_B"),
                              (trace.C, "multiplicative", "q_multiplicative_C")):
        if len(part) and not (kind == "multiplicative" and 0 in part):
            fam = candidate_family(part, config.family)
            trace.certification[label] = q_interval(part, fam, kind).to_json_dict()
        else:
            trace.certification[label] = None
    # post-hoc recombination report: dyadic classes of the per-piece
    # heuristic estimates (never a control-flow input)
    histogram: dict = {}
    for r in trace.rounds:
        est = max(r.d_estimate, Fraction(1))
        ceil_est = -(-est.numerator // est.denominator)
        exp = (ceil_est - 1).bit_length()  # class (2^(exp-1), 2^exp]
        histogram[str(2 ** exp)] = histogram.get(str(2 ** exp), 0) + 1
    trace.certification["piece_class_histogram"] = \
        {k: histogram[k] for k in sorted(histogram)}
    return trace


def shifted_split(A: FiniteRealSet, alpha, mode: str,
                  config: SplitConfig = SplitConfig()) -> DecompositionTrace:
    """Variants of the splitter on a transformed residual.

    mult_shift: searches witnesses on the shifted residual C + alpha; the
    emitted parts aim at small multiplicative energy of B and of C + alpha.
    add_scale: searches additive witnesses on alpha / C; parts aim at small
    additive energy of B and of alpha / C.  Elements the transform cannot
    move (0 under add_scale) are pre-assigned to B.
    """
    alpha = Fraction(alpha)
    if alpha == 0:
        raise InvalidInputError("shifted_split: alpha must be nonzero")
    if len(A) == 0:
        raise InvalidInputError("shifted_split: empty set")
    if mode == "mult_shift":
        trace = _split_engine(
            A, "multiplicative",
            transform=lambda S: S.translate(alpha),
            untransform=lambda S: S.translate(-alpha),
            config=config, mode=mode, alpha=alpha)
        b_energy = energy2(trace.B, kind="multiplicative").value if len(trace.B) else 0
        c_shift = trace.C.translate(alpha)
        c_energy = energy2(c_shift, kind="multiplicative").value if len(trace.C) else 0
        trace.certification = _pair_certification(
            len(A), "multiplicative", "B", b_energy,
            "C+alpha", c_energy)
        return trace
    if mode == "add_scale":
        zero_part = FiniteRealSet([0]) if 0 in A else FiniteRealSet()
        trace = _split_engine(
            A, "additive",
            transform=lambda S: FiniteRealSet(alpha / e for e in S if e != 0),
            untransform=lambda S: FiniteRealSet(alpha / e for e in S),
            config=config, mode=mode, alpha=alpha,
            presorted_b=zero_part)
        b_energy = energy2(trace.B, kind="additive").value if len(trace.B) else 0
        c_view = FiniteRealSet(alpha / e for e in trace.C if e != 0)
        c_energy = energy2(c_view, kind="additive").value if len(c_view) else 0
        trace.certification = _pair_certification(
            len(A), "additive", "B", b_energy, "alpha/C", c_energy)
        return trace
    raise InvalidInputError(f"shifted_split: unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# certification

def _power_bound_ok(value: int, const: int, n: int, exp_num: int,
                    exp_den: int, log_exp: int) -> bool:
    """value <= const * n^(exp_num/exp_den) * log2(n)^log_exp, checked in
    integers with the conservative floor(log2 n)."""
    lg = max(1, floor_log2(max(n, 2)))
    return value ** exp_den <= const ** exp_den * n ** exp_num \
        * lg ** (log_exp * exp_den)


def _ratio_to_bound(value: int, const: int, n: int, exp_num: int,
                    exp_den: int, log_exp: int) -> float:
    lg = max(1, floor_log2(max(n, 2)))
    bound = const * (n ** (exp_num / exp_den)) * lg ** log_exp
    return value / bound if bound else float("inf")


def _pair_certification(n: int, kind: str, label1: str, e1: int,
                        label2: str, e2: int,
                        const: int = 100, log_exp: int = 3) -> dict:
    return {"kind": kind, "const": const, "log_exp": log_exp,
            label1: {"E2": e1,
                     "bound_ok": _power_bound_ok(e1, const, n, 14, 5, log_exp),
                     "ratio": _ratio_to_bound(e1, const, n, 14, 5, log_exp)},
            label2: {"E2": e2,
                     "bound_ok": _power_bound_ok(e2, const, n, 14, 5, log_exp),
                     "ratio": _ratio_to_bound(e2, const, n, 14, 5, log_exp)}}


@dataclass(frozen=True)
class CertifyReport:
    """Exact part energies of a split next to their target growth bounds.

    Order-2 energies compare against const * |A|^(14/5) * log^c and order-3
    against const * |A|^(18/5) * log^c (integer comparisons with floored
    logs, the conservative direction).
    """

    size: int
    b_size: int
    c_size: int
    e2_add_b: int
    e2_mult_c: int
    e2_add_cross: int
    e2_mult_cross: int
    e3_add_b: int
    e3_mult_c: int
    const: int
    log_exp: int
    bounds_ok: dict
    ratios: dict

    def to_json_dict(self) -> dict:
        return {"size": self.size, "b_size": self.b_size, "c_size": self.c_size,
                "E2_additive_B": self.e2_add_b, "E2_multiplicative_C": self.e2_mult_c,
                "E2_additive_A_B": self.e2_add_cross,
                "E2_multiplicative_A_C": self.e2_mult_cross,
                "E3_additive_B": self.e3_add_b, "E3_multiplicative_C": self.e3_mult_c,
                "const": self.const, "log_exp": self.log_exp,
                "bounds_ok": self.bounds_ok, "ratios": self.ratios}

    def csv_rows(self):
        yield "quantity,value,bound_ok,ratio"
        names = (("E2_additive_B", self.e2_add_b),
                 ("E2_multiplicative_C", self.e2_mult_c),
                 ("E2_additive_A_B", self.e2_add_cross),
                 ("E2_multiplicative_A_C", self.e2_mult_cross),
                 ("E3_additive_B", self.e3_add_b),
                 ("E3_multiplicative_C", self.e3_mult_c))
        for name, value in names:
            yield f"{name},{value},{self.bounds_ok[name]},{self.ratios[name]:.6g}"

    def all_bounds_hold(self) -> bool:
        return all(self.bounds_ok.values())


def certify_split(A: FiniteRealSet, B: FiniteRealSet, C: FiniteRealSet,
                  const: int = 100, log_exp: int = 3) -> CertifyReport:
    """Exact energies of a partition A = B | C against the decomposition
    growth targets."""
    if not B.isdisjoint(C) or B.union(C) != A:
        raise InvalidInputError("certify_split: B, C do not partition A")
    n = len(A)
    e2_add_b = energy2(B, kind="additive").value if len(B) else 0
    e2_mult_c = energy2(C, kind="multiplicative").value if len(C) else 0
    e2_add_cross = energy2(A, B, "additive").value if len(B) else 0
    e2_mult_cross = energy2(A, C, "multiplicative").value if len(C) else 0
    e3_add_b = energy_k_pair(B, B, 3, "additive").value if len(B) else 0
    e3_mult_c = energy_k_pair(C, C, 3, "multiplicative").value if len(C) else 0
    entries = (("E2_additive_B", e2_add_b, 14),
               ("E2_multiplicative_C", e2_mult_c, 14),
               ("E2_additive_A_B", e2_add_cross, 14),
               ("E2_multiplicative_A_C", e2_mult_cross, 14),
               ("E3_additive_B", e3_add_b, 18),
               ("E3_multiplicative_C", e3_mult_c, 18))
    bounds_ok = {}
    ratios = {}
    for name, value, exp_num in entries:
        bounds_ok[name] = _power_bound_ok(value, const, n, exp_num, 5, log_exp)
        ratios[name] = _ratio_to_bound(value, const, n, exp_num, 5, log_exp)
    return CertifyReport(size=n, b_size=len(B), c_size=len(C),
                         e2_add_b=e2_add_b, e2_mult_c=e2_mult_c,
                         e2_add_cross=e2_add_cross, e2_mult_cross=e2_mult_cross,
                         e3_add_b=e3_add_b, e3_mult_c=e3_mult_c,
                         const=const, log_exp=log_exp,
                         bounds_ok=bounds_ok, ratios=ratios)


# ---------------------------------------------------------------------------
# ratio-set splitter

@dataclass(frozen=True)
class RatioSplitReport:
    r_size: int
    r1_size: int
    r2_size: int
    r1_source: str
    r2_source: str
    e_mult_r1: int
    e_add_r2: int
    reflection_verified: bool
    inversion_verified: bool
    bounds: dict

    def to_json_dict(self) -> dict:
        return {"r_size": self.r_size, "r1_size": self.r1_size,
                "r2_size": self.r2_size, "r1_source": self.r1_source,
                "r2_source": self.r2_source,
                "E_multiplicative_R1": self.e_mult_r1,
                "E_additive_R2": self.e_add_r2,
                "reflection_verified": self.reflection_verified,
                "inversion_verified": self.inversion_verified,
                "bounds": self.bounds}


def ratio_split(A: FiniteRealSet, config: SplitConfig = SplitConfig()):
    """Split the ratio set R of A into halves with small multiplicative
    (resp. additive) energy.

    Runs the shifted splitter with alpha = -1; if the structured half falls
    short of |R|/2 the complement is reflected through 1 - R (exactly valid
    since R = 1 - R).  The additive half works on R* = R minus {0} through
    reciprocals ((R*)^-1 = R*), topping up with 0 when a half-size worth of
    elements needs it.
    """
    from .sets import ratio_set
    if len(A) < 3:
        raise InvalidInputError("ratio_split: need |A| >= 3")
    R = ratio_set(A)
    if len(R) < 2:
        raise InvalidInputError("ratio_split: ratio set too small")
    one_minus_r = FiniteRealSet(1 - x for x in R)
    reflection_ok = one_minus_r == R
    rstar = R.remove_zero()
    inversion_ok = rstar.invert() == rstar

    # multiplicative half via the -1 shift
    t1 = shifted_split(R, Fraction(-1), "mult_shift", config)
    if 2 * len(t1.B) >= len(R):
        r1, r1_source = t1.B, "structured-part"
    else:
        r1 = FiniteRealSet(1 - c for c in t1.C)
        r1_source = "reflected-residual"
        if not r1.issubset(R):
            raise InvalidInputError("ratio_split: reflection left the ratio set")
    e_mult_r1 = energy2(r1, kind="multiplicative").value if len(r1) else 0

    # additive half via reciprocals on R*
    t2 = shifted_split(rstar, Fraction(1), "add_scale", config)
    inv_c = FiniteRealSet(1 / c for c in t2.C if c != 0)
    if len(t2.B) >= len(inv_c):
        r2, r2_source = t2.B, "structured-part"
    else:
        r2, r2_source = inv_c, "inverted-residual"
        if not r2.issubset(R):
            raise InvalidInputError("ratio_split: inversion left the ratio set")
    if 2 * len(r2) < len(R):
        r2 = r2.union(FiniteRealSet([0]))
        r2_source += "+zero"
    e_add_r2 = energy2(r2, kind="additive").value if len(r2) else 0

    if 2 * len(r1) < len(R) or 2 * len(r2) < len(R):
        raise InvalidInputError("ratio_split: halves fell below |R|/2 (bug)")
    bounds = {
        "R1_bound_ok": _power_bound_ok(e_mult_r1, 100, len(r1), 14, 5, 3),
        "R2_bound_ok": _power_bound_ok(e_add_r2, 100, len(r2), 14, 5, 3)}
    report = RatioSplitReport(
        r_size=len(R), r1_size=len(r1), r2_size=len(r2),
        r1_source=r1_source, r2_source=r2_source,
        e_mult_r1=e_mult_r1, e_add_r2=e_add_r2,
        reflection_verified=reflection_ok, inversion_verified=inversion_ok,
        bounds=bounds)
    return r1, r2, report
