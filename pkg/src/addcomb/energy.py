"""Representation functions, generalized convolutions and exact energies.

The workhorse of the package: everything here counts tuples exactly.  A
representation function r(x) is the number of pairs (a, b) with a op b = x;
energies are power sums of representation functions; the k-point
convolution C_k(f_1,...,f_k)(x_1,...,x_{k-1}) = sum_z f_1(z) f_2(z+x_1) ...
f_k(z+x_{k-1}) generalizes both.  Counting kernels take integer fast paths
when the input sets are integer-valued.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional, Sequence

from .errors import InvalidInputError
from .roots import sum_roots_upper
from .sets import FiniteRealSet, as_fraction, check_budget

ENERGY_KINDS = ("additive", "multiplicative")


# ---------------------------------------------------------------------------
# counting kernels
#
# Any rational set becomes an integer set after multiplying by its least
# common denominator, and pair-count statistics survive the rescaling, so
# all kernels run on plain ints.  Keys are ints carrying a scale factor
# (true value = key * scale), except quotients, whose keys are reduced
# (p, q) tuples with scale None.

def _ratio_key(a: int, b: int):
    """Canonical (numerator, denominator) for a/b with b != 0."""
    if b < 0:
        a, b = -a, -b
    g = math.gcd(a, b)
    return (a // g, b // g)


def _pair_counts_scaled(A: FiniteRealSet, B: FiniteRealSet, op: str):
    """(counter, scale) over scaled-integer keys; scale None marks
    quotient keys stored as reduced (p, q) tuples."""
    check_budget(len(A) * len(B), f"pair counts[{op}]")
    d_a, raw_a = A.scaled_ints()
    d_b, raw_b = B.scaled_ints()
    d = math.lcm(d_a, d_b)
    fa, fb = d // d_a, d // d_b
    ia = [v * fa for v in raw_a] if fa != 1 else raw_a
    ib = [v * fb for v in raw_b] if fb != 1 else raw_b
    counts: Counter = Counter()
    if op == "sum":
        for a in ia:
            for b in ib:
                counts[a + b] += 1
        return counts, Fraction(1, d)
    if op == "diff":
        for a in ia:
            for b in ib:
                counts[a - b] += 1
        return counts, Fraction(1, d)
    if op == "prod":
        for a in ia:
            for b in ib:
                counts[a * b] += 1
        return counts, Fraction(1, d * d)
    if op == "quot":
        for a in ia:
            for b in ib:
                if b:
                    counts[_ratio_key(a, b)] += 1
        return counts, None
    raise InvalidInputError(f"unknown op {op!r}")


def _scaled_key_to_fraction(key, scale) -> Fraction:
    if scale is None:
        return Fraction(*key)
    return key * scale


def _pair_counts(A: FiniteRealSet, B: FiniteRealSet, op: str) -> Counter:
    """Representation counts with canonical Fraction keys."""
    counts, scale = _pair_counts_scaled(A, B, op)
    return Counter({_scaled_key_to_fraction(k, scale): v
                    for k, v in counts.items()})


# ---------------------------------------------------------------------------
# public types

@dataclass(frozen=True)
class RepFunction:
    """Exact multiplicity map x -> #{(a, b) : a op b = x}."""

    op: str
    counts: Mapping[Fraction, int]
    total: int

    def __getitem__(self, x) -> int:
        return self.counts.get(as_fraction(x), 0)

    def items(self):
        return sorted(self.counts.items())

    def support(self) -> FiniteRealSet:
        return FiniteRealSet(self.counts.keys())

    def power_sum(self, k: int) -> int:
        return sum(v ** k for v in self.counts.values())

    def csv_rows(self):
        for value, count in self.items():
            yield f"{value},{count}"


@dataclass(frozen=True)
class EnergyValue:
    value: int
    kind: str
    order: int

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class ConvolutionPoint:
    shifts: tuple
    value: int

    def csv_row(self) -> str:
        return ",".join(str(s) for s in self.shifts) + f",{self.value}"


def rep_function(A: FiniteRealSet, B: FiniteRealSet, op: str) -> RepFunction:
    """Representation function of A op B; quot drops pairs with b = 0."""
    if len(A) == 0 or len(B) == 0:
        raise InvalidInputError("rep_function: empty input set")
    counts = dict(_pair_counts(A, B, op))
    return RepFunction(op=op, counts=counts, total=sum(counts.values()))


# ---------------------------------------------------------------------------
# energies

def _corr_values(A: FiniteRealSet, B: FiniteRealSet, kind: str):
    counts, _ = _pair_counts_scaled(A, B, "diff" if kind == "additive" else "quot")
    return counts.values()


def energy2(A: FiniteRealSet, B: Optional[FiniteRealSet] = None,
            kind: str = "additive") -> EnergyValue:
    """Common energy: the number of quadruples a1 o b1 = a2 o b2.

    Additive uses sums, multiplicative uses products (so sets containing 0
    are counted exactly per the definition).
    """
    if kind not in ENERGY_KINDS:
        raise InvalidInputError(f"energy2: unknown kind {kind!r}")
    B = A if B is None else B
    if len(A) == 0 or len(B) == 0:
        raise InvalidInputError("energy2: empty input set")
    counts, _ = _pair_counts_scaled(A, B, "sum" if kind == "additive" else "prod")
    return EnergyValue(sum(v * v for v in counts.values()), kind, 2)


def energy_k(sets: Sequence[FiniteRealSet], kind: str = "additive") -> EnergyValue:
    """Higher energy of a tuple of sets: sum over x of the product of the
    self-correlation counts of each set at x.

    For k copies of A this counts 2k-tuples with equal pairwise differences
    (ratios for the multiplicative kind, where pairs dividing by 0 are
    skipped).
    """
    if kind not in ENERGY_KINDS:
        raise InvalidInputError(f"energy_k: unknown kind {kind!r}")
    if len(sets) < 2:
        raise InvalidInputError("energy_k: need at least two sets")
    if any(len(S) == 0 for S in sets):
        raise InvalidInputError("energy_k: empty input set")
    # canonical Fraction keys so correlations of different sets join safely
    corrs = [_pair_counts(S, S, "diff" if kind == "additive" else "quot")
             for S in sets]
    base_idx = min(range(len(corrs)), key=lambda i: len(corrs[i]))
    total = 0
    for x, v in corrs[base_idx].items():
        term = v
        for i, c in enumerate(corrs):
            if i == base_idx:
                continue
            w = c.get(x, 0)
            if w == 0:
                term = 0
                break
            term *= w
        total += term
    return EnergyValue(total, kind, len(sets))


def energy_k_pair(A: FiniteRealSet, B: FiniteRealSet, k: int,
                  kind: str = "additive") -> EnergyValue:
    """Cross energy of order k: sum of the k-th powers of the A,B
    representation function (differences or ratios)."""
    if k < 2:
        raise InvalidInputError("energy_k_pair: k must be >= 2")
    if kind not in ENERGY_KINDS:
        raise InvalidInputError(f"energy_k_pair: unknown kind {kind!r}")
    if len(A) == 0 or len(B) == 0:
        raise InvalidInputError("energy_k_pair: empty input set")
    return EnergyValue(sum(v ** k for v in _corr_values(A, B, kind)), kind, k)


def energy2_brute(A: FiniteRealSet, B: FiniteRealSet, kind: str) -> int:
    """Quadruple-loop oracle for the common energy (test-sized inputs)."""
    check_budget((len(A) * len(B)) ** 2, "energy2_brute")
    n = 0
    for a1 in A:
        for b1 in B:
            for a2 in A:
                for b2 in B:
                    if kind == "additive":
                        n += a1 + b1 == a2 + b2
                    else:
                        n += a1 * b1 == a2 * b2
    return n


def sigma_k(A: FiniteRealSet, k: int) -> int:
    """Number of k-tuples from A summing to zero."""
    if k < 2:
        raise InvalidInputError("sigma_k: k must be >= 2")
    if len(A) == 0:
        raise InvalidInputError("sigma_k: empty set")
    ai = A.ints()
    elems = list(ai) if ai is not None else list(A)
    counts: Counter = Counter({e: 1 for e in elems})
    for _ in range(k - 1):
        check_budget(len(counts) * len(elems), "sigma_k convolution")
        nxt: Counter = Counter()
        for s, v in counts.items():
            for e in elems:
                nxt[s + e] += v
        counts = nxt
    return counts.get(0, 0)


# ---------------------------------------------------------------------------
# sparse generalized convolutions of finitely-supported integer functions

def indicator(A: FiniteRealSet) -> dict:
    return {e: 1 for e in A}


def _as_func(f) -> dict:
    if isinstance(f, FiniteRealSet):
        return indicator(f)
    return {as_fraction(x): int(v) for x, v in f.items() if v != 0}


def _circ(f: Mapping, g: Mapping) -> dict:
    """(f o g)(x) = sum_y f(y) g(y + x), sparse."""
    acc: dict = {}
    for y, vf in f.items():
        for w, vg in g.items():
            x = w - y
            acc[x] = acc.get(x, 0) + vf * vg
    return {x: v for x, v in acc.items() if v != 0}


def _multi_circ(funcs: Sequence[Mapping]) -> dict:
    """Iterated correlation f_0 o (f_1 o (... o f_{k-1}))."""
    h = dict(funcs[-1])
    for f in reversed(funcs[:-1]):
        h = _circ(f, h)
    return h


def _circ_nd(F: Mapping, G: Mapping) -> dict:
    """Correlation of two sparse functions with tuple keys (componentwise)."""
    acc: dict = {}
    for y, vf in F.items():
        for w, vg in G.items():
            x = tuple(wi - yi for wi, yi in zip(w, y))
            acc[x] = acc.get(x, 0) + vf * vg
    return {x: v for x, v in acc.items() if v != 0}


def _sparse_ck(funcs: Sequence[Mapping]) -> dict:
    """Sparse table of C_k(f_1,...,f_k) over shift tuples of length k-1."""
    f1 = funcs[0]
    rest = funcs[1:]
    supports = [sorted(f.keys()) for f in rest]
    work = len(f1)
    for s in supports:
        work *= max(len(s), 1)
    check_budget(work, "generalized convolution table")
    table: dict = {}
    for z, v1 in f1.items():
        for combo in product(*supports):
            value = v1
            for f, s in zip(rest, combo):
                value *= f[s]
            shifts = tuple(s - z for s in combo)
            table[shifts] = table.get(shifts, 0) + value
    return {x: v for x, v in table.items() if v != 0}


def conv_table(functions: Sequence, k: int) -> list:
    """Complete sparse k-point convolution table (nonzero entries only).

    `functions` holds either one function (repeated k times) or exactly k
    finitely-supported integer-valued functions / sets.
    """
    if k < 2:
        raise InvalidInputError("conv_table: k must be >= 2")
    funcs = [_as_func(f) for f in functions]
    if len(funcs) == 1:
        funcs = funcs * k
    if len(funcs) != k:
        raise InvalidInputError(f"conv_table: expected 1 or {k} functions, got {len(funcs)}")
    table = _sparse_ck(funcs)
    return [ConvolutionPoint(shifts, value)
            for shifts, value in sorted(table.items())]


def commutativity_check(f_list: Sequence, g_list: Optional[Sequence] = None,
                        mode: str = "scalar", l: int = 2):
    """Evaluate both sides of one of the three correlation identities.

    scalar:       sum_x C_l(f_0..f_{l-1})(x) C_l(g_0..g_{l-1})(x)
                  == sum_z prod_i (f_i o g_i)(z)
    multi_scalar: sum_x prod_j C_l(f_j)(x)
                  == sum_y C_k(f_0..f_{k-1})(y)^l,  k = len(f_list)
    sigma:        sum_x C_l(f_0)(x) (C_l(f_1) o ... o C_l(f_{k-1}))(x)
                  == sum_z (f_0 o ... o f_{k-1})^l(z)

    Both sides are evaluated independently and returned as (lhs, rhs); the
    identities assert lhs == rhs always.
    """
    funcs = [_as_func(f) for f in f_list]
    if not funcs:
        raise InvalidInputError("commutativity_check: empty function list")
    if mode == "scalar":
        if g_list is None:
            raise InvalidInputError("scalar mode needs a second function list")
        gs = [_as_func(g) for g in g_list]
        if len(gs) != len(funcs):
            raise InvalidInputError("scalar mode: lists must have equal length")
        if len(funcs) < 2:
            raise InvalidInputError("scalar mode: need l >= 2 functions")
        tf = _sparse_ck(funcs)
        tg = _sparse_ck(gs)
        small, big = (tf, tg) if len(tf) <= len(tg) else (tg, tf)
        lhs = sum(v * big.get(x, 0) for x, v in small.items())
        rhs_fn = None
        for f, g in zip(funcs, gs):
            c = _circ(f, g)
            rhs_fn = c if rhs_fn is None else {
                x: rhs_fn[x] * c[x] for x in rhs_fn.keys() & c.keys()}
        rhs = sum(rhs_fn.values())
        return lhs, rhs
    if l < 2:
        raise InvalidInputError(f"{mode} mode: l must be >= 2")
    if mode == "multi_scalar":
        tables = [_sparse_ck([f] * l) for f in funcs]
        base = min(tables, key=len)
        lhs = 0
        for x, v in base.items():
            term = v
            for t in tables:
                if t is base:
                    continue
                w = t.get(x, 0)
                if w == 0:
                    term = 0
                    break
                term *= w
            lhs += term
        ck = _sparse_ck(funcs) if len(funcs) > 1 else {(): sum(funcs[0].values())}
        rhs = sum(v ** l for v in ck.values())
        return lhs, rhs
    if mode == "sigma":
        if len(funcs) < 2:
            raise InvalidInputError("sigma mode: need at least two functions")
        t0 = _sparse_ck([funcs[0]] * l)
        rest_tables = [_sparse_ck([f] * l) for f in funcs[1:]]
        folded = rest_tables[-1]
        for t in reversed(rest_tables[:-1]):
            folded = _circ_nd(t, folded)
        lhs = sum(v * folded.get(x, 0) for x, v in t0.items())
        h = _multi_circ(funcs)
        rhs = sum(v ** l for v in h.values())
        return lhs, rhs
    raise InvalidInputError(f"commutativity_check: unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# threshold and symmetry sets

def threshold_set(A: FiniteRealSet, B: FiniteRealSet, tau,
                  kind: str = "additive") -> FiniteRealSet:
    """Shifts s in A-B with |A & (B+s)| >= tau (additive), or ratios
    s in A/B with |A & sB| >= tau (multiplicative, needs 0 not in B)."""
    tau = as_fraction(tau)
    if tau < 1:
        raise InvalidInputError("threshold_set: tau must be >= 1")
    if len(A) == 0 or len(B) == 0:
        raise InvalidInputError("threshold_set: empty input set")
    if kind == "additive":
        counts, scale = _pair_counts_scaled(A, B, "diff")
        return FiniteRealSet(_scaled_key_to_fraction(s, scale)
                             for s, v in counts.items() if v >= tau)
    if kind == "multiplicative":
        if 0 in B:
            raise InvalidInputError("threshold_set: multiplicative kind needs 0 not in B")
        counts, _ = _pair_counts_scaled(A, B, "quot")
        members = []
        for s, v in counts.items():
            if s[0] == 0:
                # s = 0 lies in A/B only when 0 in A; A & 0*B = A & {0}
                if tau <= 1:
                    members.append(Fraction(0))
            elif v >= tau:
                members.append(Fraction(*s))
        return FiniteRealSet(members)
    raise InvalidInputError(f"threshold_set: unknown kind {kind!r}")


def sym_set(Q: FiniteRealSet, R: FiniteRealSet, t,
            kind: str = "additive") -> FiniteRealSet:
    """Points x with |Q & (x - R)| >= t (additive) or |Q & x R^-1| >= t
    (multiplicative, needs 0 not in R)."""
    t = as_fraction(t)
    if t <= 0:
        raise InvalidInputError("sym_set: t must be > 0")
    if len(Q) == 0 or len(R) == 0:
        raise InvalidInputError("sym_set: empty input set")
    if kind == "additive":
        counts, scale = _pair_counts_scaled(Q, R, "sum")
        return FiniteRealSet(_scaled_key_to_fraction(x, scale)
                             for x, v in counts.items() if v >= t)
    if kind == "multiplicative":
        if 0 in R:
            raise InvalidInputError("sym_set: multiplicative kind needs 0 not in R")
        counts, scale = _pair_counts_scaled(Q, R, "prod")
        members = []
        for x, v in counts.items():
            if x == 0:
                # 0 * R^-1 = {0}; the count is |Q & {0}|
                if 0 in Q and t <= 1:
                    members.append(Fraction(0))
            elif v >= t:
                members.append(_scaled_key_to_fraction(x, scale))
        return FiniteRealSet(members)
    raise InvalidInputError(f"sym_set: unknown kind {kind!r}")


def membership_count(A: FiniteRealSet, B: FiniteRealSet, s,
                     kind: str = "additive") -> int:
    """|A & (B + s)| or |A & sB| computed directly (independent oracle)."""
    s = as_fraction(s)
    if kind == "additive":
        return sum(1 for b in B if b + s in A)
    if s == 0:
        return 1 if 0 in A else 0
    return sum(1 for b in B if s * b in A)


# ---------------------------------------------------------------------------
# assorted exact checks shared by tests and verification suites

def diagonal_energy(A: FiniteRealSet, k: int) -> int:
    """Common energy of the diagonal {(a,..,a)} against the cube A^k,
    counted directly in the product group (independent oracle)."""
    if k < 1:
        raise InvalidInputError("diagonal_energy: k must be >= 1")
    n = len(A)
    check_budget(n ** (k + 1) * 2, "diagonal_energy")
    elems = list(A)
    counts: Counter = Counter()
    for a in elems:
        diag = (a,) * k
        for combo in product(elems, repeat=k):
            counts[tuple(d + c for d, c in zip(diag, combo))] += 1
    return sum(v * v for v in counts.values())


def cube_chain_holds(total: int, parts: Sequence[int], digits: int = 64) -> bool:
    """Check total <= (sum_i parts_i^{1/3})^3 against a directed-rounding
    upper bound of the root sum (reproducible acceptance semantics)."""
    s = sum_roots_upper(parts, 3, digits)
    return total <= s ** 3
