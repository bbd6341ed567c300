"""Exact finite sets of rationals and elementary set-level constructions.

Elements are `fractions.Fraction` values kept in canonical lowest terms, so
sums, differences, products and quotients of set elements are exact and all
cardinalities reported by this package are true integers.  Sets are stored
as strictly increasing tuples: iteration order, serialization and
tie-breaking are therefore deterministic, and values are immutable and safe
to share between threads.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Optional

from .errors import InvalidInputError, ResourceLimitError

COMBINE_OPS = ("sum", "diff", "prod", "quot")
SLICE_KINDS = ("additive", "multiplicative", "reflected", "ratio")

DEFAULT_PAIR_GUARD = 10 ** 8


def pair_guard() -> int:
    """Work guard for pairwise/triplewise enumerations (env-overridable)."""
    try:
        return int(os.environ.get("ADDCOMB_PAIR_GUARD", DEFAULT_PAIR_GUARD))
    except ValueError:
        return DEFAULT_PAIR_GUARD


def check_budget(amount: int, what: str) -> None:
    if amount > pair_guard():
        raise ResourceLimitError(
            f"{what}: {amount} elementary operations exceed guard {pair_guard()}")


def as_fraction(value) -> Fraction:
    """Coerce an int, string ('p' or 'p/q') or Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise InvalidInputError(
            f"float element {value!r} rejected: set elements must be exact rationals")
    raise InvalidInputError(f"cannot interpret {value!r} as an exact rational")


class FiniteRealSet:
    """A finite set of exact rationals, stored sorted and deduplicated."""

    __slots__ = ("elems", "_members", "_ints", "_ints_known", "_scaled")

    def __init__(self, values: Iterable = ()):
        elems = sorted({as_fraction(v) for v in values})
        self.elems: tuple = tuple(elems)
        self._members = frozenset(self.elems)
        self._ints: Optional[tuple] = None
        self._ints_known = False
        self._scaled: Optional[tuple] = None

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, value) -> bool:
        return as_fraction(value) in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRealSet) and self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __repr__(self) -> str:
        inner = ", ".join(str(e) for e in self.elems[:8])
        if len(self) > 8:
            inner += f", ... ({len(self)} elements)"
        return f"FiniteRealSet({{{inner}}})"

    def ints(self) -> Optional[tuple]:
        """The elements as plain ints when all are integral, else None.

        Integer-valued sets get fast integer kernels in the energy code.
        """
        if not self._ints_known:
            if all(e.denominator == 1 for e in self.elems):
                self._ints = tuple(e.numerator for e in self.elems)
            else:
                self._ints = None
            self._ints_known = True
        return self._ints

    def scaled_ints(self) -> tuple:
        """(D, elements*D) with D the least common denominator.

        Rescaling by D turns any rational set into an integer one while
        preserving all pair-count statistics (differences and sums scale,
        quotients are unchanged), so counting kernels can run on ints.
        """
        if self._scaled is None:
            d = math.lcm(*(e.denominator for e in self.elems)) if self.elems else 1
            self._scaled = (d, tuple(int(e * d) for e in self.elems))
        return self._scaled

    def issubset(self, other: "FiniteRealSet") -> bool:
        return self._members <= other._members

    def isdisjoint(self, other: "FiniteRealSet") -> bool:
        return self._members.isdisjoint(other._members)

    def union(self, other: "FiniteRealSet") -> "FiniteRealSet":
        return FiniteRealSet(self._members | other._members)

    def intersection(self, other: "FiniteRealSet") -> "FiniteRealSet":
        return FiniteRealSet(self._members & other._members)

    def difference(self, other: "FiniteRealSet") -> "FiniteRealSet":
        return FiniteRealSet(self._members - other._members)

    def remove_zero(self) -> "FiniteRealSet":
        if Fraction(0) in self._members:
            return FiniteRealSet(e for e in self.elems if e != 0)
        return self

    def translate(self, c) -> "FiniteRealSet":
        c = as_fraction(c)
        return FiniteRealSet(e + c for e in self.elems)

    def dilate(self, c) -> "FiniteRealSet":
        c = as_fraction(c)
        if c == 0:
            raise InvalidInputError("dilate by zero collapses the set")
        return FiniteRealSet(e * c for e in self.elems)

    def invert(self) -> "FiniteRealSet":
        """Pointwise reciprocals; requires 0 not in the set."""
        if Fraction(0) in self._members:
            raise InvalidInputError("invert: set contains 0")
        return FiniteRealSet(1 / e for e in self.elems)

    def negate(self) -> "FiniteRealSet":
        return FiniteRealSet(-e for e in self.elems)


# ---------------------------------------------------------------------------
# text format: one element per line, 'p' or 'p/q' in lowest terms,
# '#' starts a comment, blank lines ignored.

def parse_set_text(text: str) -> FiniteRealSet:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(Fraction(line))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"line {lineno}: bad rational {line!r}: {exc}")
    return FiniteRealSet(values)


def format_set_text(A: FiniteRealSet) -> str:
    return "".join(f"{e}\n" for e in A.elems)


def load_set(path) -> FiniteRealSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set_text(fh.read())


def save_set(A: FiniteRealSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_set_text(A))


# ---------------------------------------------------------------------------
# pairwise constructions

def combine(A: FiniteRealSet, B: FiniteRealSet, op: str) -> FiniteRealSet:
    """Sumset / difference set / product set / quotient set of A and B.

    Quotients skip pairs with b = 0; degenerate inputs yield small or empty
    sets rather than errors.
    """
    if op not in COMBINE_OPS:
        raise InvalidInputError(f"combine: unknown op {op!r}")
    check_budget(len(A) * len(B), f"combine[{op}]")
    ai, bi = A.ints(), B.ints()
    if ai is not None and bi is not None:
        if op == "sum":
            vals = {a + b for a in ai for b in bi}
        elif op == "diff":
            vals = {a - b for a in ai for b in bi}
        elif op == "prod":
            vals = {a * b for a in ai for b in bi}
        else:
            vals = {Fraction(a, b) for a in ai for b in bi if b != 0}
        return FiniteRealSet(vals)
    if op == "sum":
        vals = {a + b for a in A for b in B}
    elif op == "diff":
        vals = {a - b for a in A for b in B}
    elif op == "prod":
        vals = {a * b for a in A for b in B}
    else:
        vals = {a / b for a in A for b in B if b != 0}
    return FiniteRealSet(vals)


def slice_set(A: FiniteRealSet, x, kind: str) -> FiniteRealSet:
    """Intersection slice of A at shift/dilation x.

    additive:        A & (A - x)
    multiplicative:  A & x*A
    reflected:       A & (x - A)
    ratio:           A & (x / A), zero elements of A skipped
    """
    x = as_fraction(x)
    if kind == "additive":
        return FiniteRealSet(a for a in A if a + x in A)
    if kind == "multiplicative":
        if x == 0:
            # x*A collapses to {0}
            return FiniteRealSet([0] if 0 in A else [])
        return FiniteRealSet(a for a in A if a / x in A)
    if kind == "reflected":
        return FiniteRealSet(a for a in A if x - a in A)
    if kind == "ratio":
        if x == 0:
            # x/A = {0} once any nonzero divisor exists
            has_nonzero = any(a != 0 for a in A)
            return FiniteRealSet([0] if has_nonzero and 0 in A else [])
        return FiniteRealSet(a for a in A if a != 0 and x / a in A)
    raise InvalidInputError(f"slice_set: unknown kind {kind!r}")


def _reduced_ratio(a: int, b: int) -> tuple:
    if b < 0:
        a, b = -a, -b
    g = math.gcd(a, b)
    return (a // g, b // g)


def higher_sumset_size(A: FiniteRealSet, sign: str = "plus",
                       op: str = "additive") -> int:
    """Exact cardinality of {(a1 o a, a2 o a) : a, a1, a2 in A}.

    additive plus/minus count pairs (a1+a, a2+a) resp. (a1-a, a2-a);
    multiplicative plus/minus count (a1*a, a2*a) resp. (a1/a, a2/a) and
    require 0 not in A.  Computed through the slice identity: the pairs
    with coordinate offset x form a translate/dilate of A +- A_x, so the
    answer is the sum of |A +- A_x| over x, with per-slice sizes cached up
    to translation (additive) or dilation (multiplicative).  All counting
    runs on the denominator-cleared integer copy of A.
    """
    if sign not in ("plus", "minus"):
        raise InvalidInputError(f"higher_sumset_size: unknown sign {sign!r}")
    if op not in ("additive", "multiplicative"):
        raise InvalidInputError(f"higher_sumset_size: unknown op {op!r}")
    n = len(A)
    if n == 0:
        raise InvalidInputError("higher_sumset_size: empty set")
    check_budget(n * n, "higher_sumset_size pair table")
    if op == "multiplicative" and 0 in A:
        raise InvalidInputError("higher_sumset_size: multiplicative form needs 0 not in A")

    _d, ints = A.scaled_ints()
    # group the slice members by offset x (a belongs to the slice at x
    # when a op x stays in A); keys are ints resp. reduced ratio tuples
    groups: dict = {}
    if op == "additive":
        for a in ints:
            for b in ints:
                groups.setdefault(b - a, []).append(a)
    else:
        for a in ints:
            for b in ints:
                groups.setdefault(_reduced_ratio(b, a), []).append(a)

    cache: dict = {}
    budget = 0
    total = 0
    for _x, members in sorted(groups.items()):
        members = sorted(set(members))
        if op == "additive":
            # |A +- (A_x + c)| = |A +- A_x|: key slices up to translation
            base = members[0]
            key = ("a", tuple(m - base for m in members))
        else:
            # |A * cA_x| = |A * A_x| and |cA_x / A| likewise: up to dilation
            base = members[0]  # nonzero since 0 not in A
            key = ("m", tuple(_reduced_ratio(m, base) for m in members))
        if key not in cache:
            if len(members) == 1:
                cache[key] = n  # a translate/dilate of A itself
            else:
                budget += n * len(members)
                check_budget(budget, "higher_sumset_size slice sets")
                if op == "additive":
                    if sign == "plus":
                        cache[key] = len({a + m for a in ints for m in members})
                    else:
                        cache[key] = len({a - m for a in ints for m in members})
                else:
                    if sign == "plus":
                        cache[key] = len({a * m for a in ints for m in members})
                    else:
                        cache[key] = len({_reduced_ratio(m, a)
                                          for a in ints for m in members})
        total += cache[key]
    return total


def higher_sumset_size_brute(A: FiniteRealSet, sign: str = "plus",
                             op: str = "additive") -> int:
    """Independent oracle: enumerate all |A|^3 coordinate pairs directly."""
    if op == "multiplicative" and 0 in A:
        raise InvalidInputError("higher_sumset_size_brute: 0 in A")
    n = len(A)
    check_budget(n ** 3, "higher_sumset_size_brute")
    seen = set()
    for a in A:
        for a1 in A:
            for a2 in A:
                if op == "additive":
                    pair = (a1 + a, a2 + a) if sign == "plus" else (a1 - a, a2 - a)
                else:
                    pair = (a1 * a, a2 * a) if sign == "plus" else (a1 / a, a2 / a)
                seen.add(pair)
    return len(seen)


def ratio_set(A: FiniteRealSet) -> FiniteRealSet:
    """The set of ratios (a1 - a) / (a2 - a) over triples from A with a2 != a.

    Satisfies R = 1 - R exactly, and R* = R minus {0} satisfies R*^-1 = R*.
    """
    if len(A) < 2:
        raise InvalidInputError("ratio_set: need at least two elements")
    check_budget(len(A) ** 3, "ratio_set")
    values = set()
    for a in A:
        for a2 in A:
            if a2 == a:
                continue
            den = a2 - a
            for a1 in A:
                values.add((a1 - a) / den)
    return FiniteRealSet(values)
