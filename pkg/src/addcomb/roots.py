"""Exact integer and rational root extraction with directed rounding.

Every inequality verdict in this package that involves a fractional power
(square roots, cube roots, 1/2k-th roots of energies) is reduced to integer
arithmetic through these helpers, so verdicts are reproducible bit for bit.
A "lower" root is the largest multiple of 10^-digits below the true root,
an "upper" root the smallest one at or above it.
"""

from __future__ import annotations

import math
from fractions import Fraction

DEFAULT_DIGITS = 64


def introot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("introot: negative radicand")
    if k < 1:
        raise ValueError("introot: root order must be >= 1")
    if k == 1 or n in (0, 1):
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton iteration on integers, starting from a power of two >= the root.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_lower(x: Fraction, k: int, digits: int = DEFAULT_DIGITS) -> Fraction:
    """Largest multiple of 10^-digits that is <= x**(1/k), for x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("root_lower: negative radicand")
    scale = 10 ** digits
    num = x.numerator * scale ** k
    den = x.denominator
    r = introot(num // den, k)
    while (r + 1) ** k * den <= num:
        r += 1
    while r ** k * den > num:
        r -= 1
    return Fraction(r, scale)


def root_upper(x: Fraction, k: int, digits: int = DEFAULT_DIGITS) -> Fraction:
    """Smallest multiple of 10^-digits that is >= x**(1/k), for x >= 0."""
    lo = root_lower(x, k, digits)
    if lo ** k == x:
        return lo
    return lo + Fraction(1, 10 ** digits)


def sqrt_lower(x: Fraction, digits: int = DEFAULT_DIGITS) -> Fraction:
    return root_lower(x, 2, digits)


def sqrt_upper(x: Fraction, digits: int = DEFAULT_DIGITS) -> Fraction:
    return root_upper(x, 2, digits)


def pow_frac_upper(base: int, num: int, den: int,
                   digits: int = DEFAULT_DIGITS) -> Fraction:
    """Rational upper bound for base**(num/den), base a positive integer."""
    if base <= 0:
        raise ValueError("pow_frac_upper: base must be positive")
    return root_upper(Fraction(base) ** num, den, digits)


def floor_log2(n: int) -> int:
    """Exact floor(log2(n)) for a positive integer."""
    if n < 1:
        raise ValueError("floor_log2: argument must be >= 1")
    return n.bit_length() - 1


def polylog_slack(size: int, const: int, exponent: int) -> int:
    """Integer slack factor const * max(1, floor(log2 size))**exponent.

    Instantiates "up to a constant and a power of log" bounds; the floor
    makes the factor exact and the max keeps it positive on tiny sets.
    """
    return const * max(1, floor_log2(max(size, 1))) ** exponent


def sum_roots_upper(values, k: int, digits: int = DEFAULT_DIGITS) -> Fraction:
    """Upper bound for sum(v**(1/k)) over nonnegative rationals."""
    total = Fraction(0)
    for v in values:
        total += root_upper(Fraction(v), k, digits)
    return total
