"""Functions on finite abelian groups and the correlation-norm machinery.

Supports Z_n and the boolean cube F_2^n.  Function values are exact
Gaussian rationals (pairs of Fractions); all energies E_k(f) and the
two-parameter E_{k,l} variants are computed exactly in direct space, with
the discrete Fourier transform available as a floating-point cross-check.
Root extraction for norms uses directed rounding (see roots.py) so that
every `holds` verdict emitted here is rigorous.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import InvalidInputError
from .roots import DEFAULT_DIGITS, root_lower, root_upper, sqrt_lower, sqrt_upper
from .sets import check_budget

_ZERO = Fraction(0)


class FiniteAbelianGroup:
    """Z_n ('cyclic') or F_2^n ('cube'); elements are indices 0..order-1."""

    __slots__ = ("kind", "n", "order")

    def __init__(self, kind: str, n: int):
        if kind not in ("cyclic", "cube"):
            raise InvalidInputError(f"unknown group kind {kind!r}")
        if n < 1:
            raise InvalidInputError("group parameter must be >= 1")
        self.kind = kind
        self.n = n
        self.order = n if kind == "cyclic" else 2 ** n

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls("cyclic", n)

    @classmethod
    def cube(cls, n: int) -> "FiniteAbelianGroup":
        return cls("cube", n)

    def add(self, a: int, b: int) -> int:
        if self.kind == "cyclic":
            return (a + b) % self.n
        return a ^ b

    def neg(self, a: int) -> int:
        if self.kind == "cyclic":
            return (-a) % self.n
        return a

    def elements(self) -> range:
        return range(self.order)

    def char(self, xi: int, x: int) -> complex:
        """Value of the character indexed by xi at x (e(-xi.x) convention)."""
        if self.kind == "cube":
            return -1.0 + 0j if (xi & x).bit_count() & 1 else 1.0 + 0j
        return cmath.exp(-2j * cmath.pi * ((xi * x) % self.n) / self.n)

    def char_sign(self, xi: int, x: int) -> int:
        """Exact +-1 character value; cube groups only."""
        if self.kind != "cube":
            raise InvalidInputError("exact character signs exist only on cube groups")
        return -1 if (xi & x).bit_count() & 1 else 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteAbelianGroup)
                and self.kind == other.kind and self.n == other.n)

    def __hash__(self) -> int:
        return hash((self.kind, self.n))

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup({self.kind!r}, {self.n})"


class GroupFunction:
    """Dense function from a finite abelian group to the Gaussian rationals."""

    __slots__ = ("group", "re", "im")

    def __init__(self, group: FiniteAbelianGroup, re: Sequence, im: Optional[Sequence] = None):
        N = group.order
        re = [Fraction(v) for v in re]
        im = [Fraction(v) for v in im] if im is not None else [_ZERO] * N
        if len(re) != N or len(im) != N:
            raise InvalidInputError(f"expected {N} values for {group!r}")
        self.group = group
        self.re = tuple(re)
        self.im = tuple(im)

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> "GroupFunction":
        return cls(group, [0] * group.order)

    @classmethod
    def indicator(cls, group: FiniteAbelianGroup, elements) -> "GroupFunction":
        vals = [0] * group.order
        for e in elements:
            vals[e % group.order] = 1
        return cls(group, vals)

    @classmethod
    def from_pairs(cls, group: FiniteAbelianGroup, pairs) -> "GroupFunction":
        re = [p[0] for p in pairs]
        im = [p[1] for p in pairs]
        return cls(group, re, im)

    @property
    def is_real(self) -> bool:
        return all(v == 0 for v in self.im)

    def int_values(self) -> Optional[list]:
        """Plain int values when the function is real and integral."""
        if not self.is_real:
            return None
        if all(v.denominator == 1 for v in self.re):
            return [v.numerator for v in self.re]
        return None

    def conj(self) -> "GroupFunction":
        return GroupFunction(self.group, self.re, [-v for v in self.im])

    def modulus(self) -> "GroupFunction":
        """Pointwise |f|; exact only for real f (use enclosures otherwise)."""
        if not self.is_real:
            raise InvalidInputError("modulus of a genuinely complex function is irrational; "
                                    "use the enclosure helpers")
        return GroupFunction(self.group, [abs(v) for v in self.re])

    def modulus_squared(self) -> list:
        return [r * r + i * i for r, i in zip(self.re, self.im)]

    def l2_squared(self) -> Fraction:
        return sum(self.modulus_squared(), _ZERO)

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        if self.group != other.group:
            raise InvalidInputError("cannot add functions on different groups")
        return GroupFunction(self.group,
                             [a + b for a, b in zip(self.re, other.re)],
                             [a + b for a, b in zip(self.im, other.im)])

    def scale(self, c) -> "GroupFunction":
        c = Fraction(c)
        return GroupFunction(self.group, [c * v for v in self.re],
                             [c * v for v in self.im])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.re) and all(v == 0 for v in self.im)

    def value(self, x: int):
        return (self.re[x], self.im[x])

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupFunction) and self.group == other.group
                and self.re == other.re and self.im == other.im)

    def __hash__(self):
        return hash((self.group, self.re, self.im))


# ---------------------------------------------------------------------------
# exact correlations

def circ(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f o g)(x) = sum_y f(y) g(y + x), exact."""
    if f.group != g.group:
        raise InvalidInputError("correlation needs a common group")
    grp = f.group
    N = grp.order
    fi, gi = f.int_values(), g.int_values()
    if fi is not None and gi is not None:
        out = [0] * N
        for y in range(N):
            fy = fi[y]
            if fy == 0:
                continue
            for x in range(N):
                out[x] += fy * gi[grp.add(y, x)]
        return GroupFunction(grp, out)
    out_re = [_ZERO] * N
    out_im = [_ZERO] * N
    for y in range(N):
        ar, ai = f.re[y], f.im[y]
        if ar == 0 and ai == 0:
            continue
        for x in range(N):
            j = grp.add(y, x)
            br, bi = g.re[j], g.im[j]
            out_re[x] += ar * br - ai * bi
            out_im[x] += ar * bi + ai * br
    return GroupFunction(grp, out_re, out_im)


def ek_energy(f: GroupFunction, k: int) -> Fraction:
    """E_k(f) = sum_x (conj(f) o f)(x)^k, which is real and >= 0."""
    if k < 1:
        raise InvalidInputError("ek_energy: k must be >= 1")
    fi = f.int_values()
    if fi is not None:
        h = circ(f, f).int_values()
        total = sum(v ** k for v in h)
    else:
        h = circ(f.conj(), f)
        tot_re = _ZERO
        tot_im = _ZERO
        for hr, hi in zip(h.re, h.im):
            pr, pi = Fraction(1), _ZERO
            for _ in range(k):
                pr, pi = pr * hr - pi * hi, pr * hi + pi * hr
            tot_re += pr
            tot_im += pi
        if tot_im != 0:
            raise InvalidInputError("ek_energy: nonreal total (implementation bug)")
        total = tot_re
    if total < 0:
        raise InvalidInputError("ek_energy: negative energy (implementation bug)")
    return Fraction(total)


def sum_ck_power(f: GroupFunction, k: int, l: int) -> Fraction:
    """sum over shift tuples in Gamma^{k-1} of C_k(f)(x_1..x_{k-1})^l.

    Real functions only; direct-space evaluation in N^k operations.
    """
    if not f.is_real:
        raise InvalidInputError("sum_ck_power supports real functions only")
    if k < 2 or l < 1:
        raise InvalidInputError("sum_ck_power: need k >= 2 and l >= 1")
    grp = f.group
    N = grp.order
    if k == 2:
        h = circ(f, f)
        vals = h.int_values()
        if vals is None:
            vals = h.re
        return Fraction(sum(v ** l for v in vals))
    check_budget(N ** k * (k - 1), "generalized convolution power sum")
    vals = f.int_values()
    exact_int = vals is not None
    if not exact_int:
        vals = f.re
    add = grp.add
    total = 0 if exact_int else _ZERO
    for shifts in product(range(N), repeat=k - 1):
        s = 0 if exact_int else _ZERO
        for z in range(N):
            term = vals[z]
            if term == 0:
                continue
            for x in shifts:
                term *= vals[add(z, x)]
                if term == 0:
                    break
            s += term
        total += s ** l
    return Fraction(total)


def sum_ck_squared_modulus(f: GroupFunction, k: int) -> Fraction:
    """sum over Gamma^{k-1} of |C_k(f)|^2 for arbitrary complex f (equals
    E_k(f); used as an independent evaluation route)."""
    grp = f.group
    N = grp.order
    if k < 2:
        raise InvalidInputError("sum_ck_squared_modulus: k must be >= 2")
    check_budget(N ** k * (k - 1), "generalized convolution table")
    add = grp.add
    total = _ZERO
    for shifts in product(range(N), repeat=k - 1):
        sr, si = _ZERO, _ZERO
        for z in range(N):
            tr, ti = f.re[z], f.im[z]
            if tr == 0 and ti == 0:
                continue
            for x in shifts:
                j = add(z, x)
                br, bi = f.re[j], f.im[j]
                tr, ti = tr * br - ti * bi, tr * bi + ti * br
            sr += tr
            si += ti
        total += sr * sr + si * si
    return total


# ---------------------------------------------------------------------------
# Fourier transform (floating point cross-check; exact on cube groups)

def dft(f: GroupFunction) -> list:
    """Fourier coefficients hat f(xi) = sum_x f(x) e(-xi.x) as complex floats."""
    grp = f.group
    N = grp.order
    vals = [float(r) + 1j * float(i) for r, i in zip(f.re, f.im)]
    out = []
    if grp.kind == "cube":
        for xi in range(N):
            acc = 0j
            for x in range(N):
                v = vals[x]
                if v:
                    acc += -v if (xi & x).bit_count() & 1 else v
            out.append(acc)
        return out
    twiddle = [cmath.exp(-2j * cmath.pi * t / N) for t in range(N)]
    for xi in range(N):
        acc = 0j
        for x in range(N):
            v = vals[x]
            if v:
                acc += v * twiddle[(xi * x) % N]
        out.append(acc)
    return out


def walsh_exact(f: GroupFunction) -> GroupFunction:
    """Exact Fourier transform on F_2^n (characters are +-1)."""
    grp = f.group
    if grp.kind != "cube":
        raise InvalidInputError("walsh_exact: cube groups only")
    N = grp.order
    out_re = []
    out_im = []
    for xi in range(N):
        sr, si = _ZERO, _ZERO
        for x in range(N):
            sgn = -1 if (xi & x).bit_count() & 1 else 1
            sr += sgn * f.re[x]
            si += sgn * f.im[x]
        out_re.append(sr)
        out_im.append(si)
    return GroupFunction(grp, out_re, out_im)


def ek_energy_fourier(f: GroupFunction, k: int) -> float:
    """Fourier-side evaluation N^{-(k-1)} sum over x_1+...+x_k = 0 of the
    product of |hat f(x_i)|^2 (floating point)."""
    grp = f.group
    N = grp.order
    check_budget(N ** max(k - 1, 1), "fourier energy")
    co = dft(f)
    power = [abs(c) ** 2 for c in co]
    total = 0.0
    if k == 1:
        return power[0] / 1  # single constraint x = 0
    for shifts in product(range(N), repeat=k - 1):
        s = 0
        p = 1.0
        for x in shifts:
            p *= power[x]
            s = grp.add(s, x)
        p *= power[grp.neg(s)]
        total += p
    return total / N ** (k - 1)


# ---------------------------------------------------------------------------
# modulus enclosures for complex functions

def ek_energy_modulus_bounds(f: GroupFunction, k: int,
                             digits: int = 24) -> tuple:
    """Directed-rounding enclosure [lo, hi] of E_k(|f|) for complex f."""
    grp = f.group
    N = grp.order
    msq = f.modulus_squared()
    lo_vals = []
    hi_vals = []
    for x in range(N):
        lo = _ZERO
        hi = _ZERO
        for y in range(N):
            p = msq[y] * msq[grp.add(y, x)]
            if p == 0:
                continue
            lo += sqrt_lower(p, digits)
            hi += sqrt_upper(p, digits)
        lo_vals.append(lo)
        hi_vals.append(hi)
    return (sum(v ** k for v in lo_vals), sum(v ** k for v in hi_vals))


# ---------------------------------------------------------------------------
# norms with directed rounding

@dataclass(frozen=True)
class NormReport:
    """Exact (or enclosed) value of a correlation norm.

    raw bounds enclose ||f||^(k*l); for the plain order-k norm l = 2, so the
    degree k*l is the usual 2k.  root bounds are directed roundings of the
    norm itself at DEFAULT_DIGITS decimal digits.
    """

    k: int
    l: int
    raw_lower: Fraction
    raw_upper: Fraction
    root_lower: Fraction
    root_upper: Fraction
    modulus_applied: bool = False

    @property
    def degree(self) -> int:
        return self.k * self.l

    @property
    def exact(self) -> bool:
        return self.raw_lower == self.raw_upper

    @property
    def raw(self) -> Fraction:
        if not self.exact:
            raise InvalidInputError("raw value is an enclosure; use raw_lower/raw_upper")
        return self.raw_lower


def _report(k: int, l: int, raw_lo: Fraction, raw_hi: Fraction,
            modulus_applied: bool = False) -> NormReport:
    deg = k * l
    return NormReport(k=k, l=l, raw_lower=raw_lo, raw_upper=raw_hi,
                      root_lower=root_lower(raw_lo, deg),
                      root_upper=root_upper(raw_hi, deg),
                      modulus_applied=modulus_applied)


def ek_norm(f: GroupFunction, k: int) -> NormReport:
    """Correlation norm of order k: the 2k-th root of E_k(f).

    Real functions (any k) and complex functions with even k are computed
    exactly; for odd k a complex f is replaced by |f| (whose energy is
    enclosed with directed rounding), mirroring how such norms enter the
    product inequalities.
    """
    if k < 1:
        raise InvalidInputError("ek_norm: k must be >= 1")
    if f.is_real or k % 2 == 0:
        raw = ek_energy(f, k)
        return _report(k, 2, raw, raw)
    lo, hi = ek_energy_modulus_bounds(f, k)
    return _report(k, 2, lo, hi, modulus_applied=True)


def ekl_norm(f: GroupFunction, k: int, l: int) -> NormReport:
    """Two-parameter correlation norm: the (k*l)-th root of the power sum of
    the k-point convolution, evaluated independently over Gamma^{k-1} and
    Gamma^{l-1}; the two evaluations must agree exactly."""
    if k < 2 or l < 2:
        raise InvalidInputError("ekl_norm: need k, l >= 2")
    if k % 2 and l % 2:
        raise InvalidInputError("ekl_norm: either k or l must be even")
    if not f.is_real:
        raise InvalidInputError("ekl_norm: real functions only")
    raw1 = sum_ck_power(f, k, l)
    raw2 = sum_ck_power(f, l, k)
    if raw1 != raw2:
        raise InvalidInputError("ekl_norm: dual evaluations disagree (implementation bug)")
    if raw1 < 0:
        raise InvalidInputError("ekl_norm: negative value (implementation bug)")
    return _report(k, l, raw1, raw1)


def _norm_raw_bounds(f: GroupFunction, k: int, l: int) -> tuple:
    """[lo, hi] bounds of ||(|f|)||^(k*l) with the modulus applied."""
    if f.is_real:
        if l == 2:
            raw = ek_energy(f.modulus(), k)
        else:
            raw = sum_ck_power(f.modulus(), k, l)
        return raw, raw
    if l != 2:
        raise InvalidInputError("two-parameter norms require real functions")
    return ek_energy_modulus_bounds(f, k)


def _proportionality(f: GroupFunction, g: GroupFunction) -> Optional[Fraction]:
    """lambda with g = lambda*f for real f, g; None when not proportional."""
    if not (f.is_real and g.is_real) or f.is_zero():
        return None
    lam = None
    for a, b in zip(f.re, g.re):
        if a == 0:
            if b != 0:
                return None
            continue
        cur = b / a
        if lam is None:
            lam = cur
        elif cur != lam:
            return None
    return lam


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    lhs: Fraction
    rhs: Fraction
    detail: str = ""


def triangle_check(f: GroupFunction, g: GroupFunction, k: int,
                   l: int = 2, digits: int = DEFAULT_DIGITS) -> CheckResult:
    """Rigorous check of ||f + g|| <= ||(|f|)|| + ||(|g|)|| for the order-k
    (or two-parameter (k,l)) correlation norm.

    The left side is rounded up and the right side down at the root
    extraction, so holds=True is a proof; exact rational comparisons are
    used when one side vanishes or the functions are proportional, which
    keeps equality cases honest.
    """
    if f.group != g.group:
        raise InvalidInputError("triangle_check: functions on different groups")
    deg = k * l
    s = f + g
    if l == 2:
        lhs_lo = lhs_hi = ek_energy(s, k)
    else:
        if not (f.is_real and g.is_real):
            raise InvalidInputError("two-parameter triangle checks need real functions")
        lhs_lo = lhs_hi = sum_ck_power(s, k, l)
    a_lo, a_hi = _norm_raw_bounds(f, k, l)
    b_lo, b_hi = _norm_raw_bounds(g, k, l)

    if b_lo == 0 and b_hi == 0:
        return CheckResult(lhs_hi <= a_lo, lhs_hi, a_lo, "exact: second term zero")
    if a_lo == 0 and a_hi == 0:
        return CheckResult(lhs_hi <= b_lo, lhs_hi, b_lo, "exact: first term zero")
    lam = _proportionality(f, g)
    if lam is not None:
        # g = lam*f scales the norm by |lam|, so RHS^deg is exactly
        # (1+|lam|)^deg times the raw norm of |f|
        rhs_raw = (1 + abs(lam)) ** deg * a_lo
        return CheckResult(lhs_hi <= rhs_raw, lhs_hi, rhs_raw, "exact: proportional pair")
    lhs_root = root_upper(lhs_hi, deg, digits)
    rhs_root = root_lower(a_lo, deg, digits) + root_lower(b_lo, deg, digits)
    return CheckResult(lhs_root <= rhs_root, lhs_root, rhs_root, "directed rounding")


def holder_ck_check(pairs: Sequence, digits: int = DEFAULT_DIGITS) -> CheckResult:
    """Rigorous check of the correlation product inequality

        |sum_x prod_j (f_j o f'_j)(x)|  <=  prod_j ||(|f_j|)|| * ||(|f'_j|)||

    with the order-k norm, k = number of pairs.  Both sides are raised to
    the 2k-th power, which makes the comparison exact for real inputs.
    """
    k = len(pairs)
    if k < 1:
        raise InvalidInputError("holder_ck_check: need at least one pair")
    grp = pairs[0][0].group
    N = grp.order
    corr = [circ(fj, fpj) for fj, fpj in pairs]
    lhs_re = _ZERO
    lhs_im = _ZERO
    for x in range(N):
        tr, ti = Fraction(1), _ZERO
        for h in corr:
            br, bi = h.re[x], h.im[x]
            tr, ti = tr * br - ti * bi, tr * bi + ti * br
            if tr == 0 and ti == 0:
                break
        lhs_re += tr
        lhs_im += ti
    lhs_sq = lhs_re * lhs_re + lhs_im * lhs_im  # |LHS|^2 exactly
    rhs_prod = Fraction(1)
    for fj, fpj in pairs:
        for h in (fj, fpj):
            lo, _hi = _norm_raw_bounds(h, k, 2)
            rhs_prod *= lo
    # |LHS|^{2k} <= prod of raw norms  <=>  (|LHS|^2)^k <= rhs_prod
    return CheckResult(lhs_sq ** k <= rhs_prod, lhs_sq ** k, rhs_prod,
                       "exact power comparison")


def holder_ckl_check(groups_of_functions: Sequence[Sequence[GroupFunction]],
                     l: int) -> CheckResult:
    """Two-parameter analogue: k tuples of l real functions each; checks

        |sum over Gamma^{l-1} of prod_j C_l(phi_j)(x)|^(k*l)
            <= prod over all k*l component functions of ||(|phi|)||^(k*l)
    """
    k = len(groups_of_functions)
    if k < 2:
        raise InvalidInputError("holder_ckl_check: need k >= 2 tuples")
    if any(len(tup) != l for tup in groups_of_functions):
        raise InvalidInputError(f"holder_ckl_check: every tuple needs {l} functions")
    grp = groups_of_functions[0][0].group
    N = grp.order
    check_budget(N ** l * k, "two-parameter product check")
    add = grp.add
    lhs = _ZERO
    for shifts in product(range(N), repeat=l - 1):
        term = Fraction(1)
        for tup in groups_of_functions:
            # C_l(tup)(shifts) = sum_z tup0(z) tup1(z+x1) ...
            s = _ZERO
            for z in range(N):
                v = tup[0].re[z]
                if v == 0:
                    continue
                for fn, x in zip(tup[1:], shifts):
                    v *= fn.re[add(z, x)]
                    if v == 0:
                        break
                s += v
            term *= s
            if term == 0:
                break
        lhs += term
    rhs_prod = Fraction(1)
    for tup in groups_of_functions:
        for fn in tup:
            if not fn.is_real:
                raise InvalidInputError("holder_ckl_check: real functions only")
            rhs_prod *= sum_ck_power(fn.modulus(), k, l)
    # |LHS| <= prod of k*l norms  <=>  |LHS|^(k*l) <= prod of raw values
    return CheckResult(abs(lhs) ** (k * l) <= rhs_prod,
                       abs(lhs) ** (k * l), rhs_prod,
                       "exact power comparison")


def zero_norm_check(f: GroupFunction, k: int) -> str:
    """For even k and real f: certify that the order-k norm vanishes exactly
    when f does, plus the exact lower bound E_k(f) >= (sum f^2)^k."""
    if k < 2 or k % 2:
        raise InvalidInputError("zero_norm_check: k must be even and >= 2")
    if not f.is_real:
        raise InvalidInputError("zero_norm_check: real functions only")
    raw = ek_energy(f, k)
    l2sq = f.l2_squared()
    if raw < l2sq ** k:
        raise InvalidInputError("zero_norm_check: diagonal lower bound violated (bug)")
    if raw == 0:
        if not f.is_zero():
            raise InvalidInputError("zero_norm_check: zero norm for nonzero f (bug)")
        return "f_is_zero"
    if f.is_zero():
        raise InvalidInputError("zero_norm_check: nonzero norm for zero f (bug)")
    return "f_nonzero_with_positive_norm"
