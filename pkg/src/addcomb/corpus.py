"""Standard test-set builders: progressions, mixed sets, seeded random sets.

These are the workloads the estimation and decomposition code is exercised
on; all of them are deterministic given their arguments.
"""

from __future__ import annotations

import random

from .sets import FiniteRealSet


def ap_set(n: int, start: int = 1, step: int = 1) -> FiniteRealSet:
    """Arithmetic progression with n terms."""
    return FiniteRealSet(start + i * step for i in range(n))


def gp_set(n: int, start: int = 1, ratio: int = 2) -> FiniteRealSet:
    """Geometric progression with n terms."""
    vals = []
    v = start
    for _ in range(n):
        vals.append(v)
        v *= ratio
    return FiniteRealSet(vals)


def ap_gp_set(n: int) -> FiniteRealSet:
    """Union of an n-term arithmetic and an n-term geometric progression."""
    return ap_set(n).union(gp_set(n))


def random_set(n: int, lo: int, hi: int, seed: int = 0,
               nonzero: bool = False) -> FiniteRealSet:
    """Seeded random integer set of exactly n distinct elements."""
    rng = random.Random(seed)
    pool = [v for v in range(lo, hi + 1) if not (nonzero and v == 0)]
    if n > len(pool):
        raise ValueError(f"cannot draw {n} distinct values from [{lo}, {hi}]")
    return FiniteRealSet(rng.sample(pool, n))
