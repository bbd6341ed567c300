from fractions import Fraction

import pytest

from addcomb.corpus import ap_set, gp_set, random_set
from addcomb.decompose import (DecompositionTrace, SplitConfig,
                               balog_wooley_split, certify_split,
                               dyadic_extract, find_witness, ratio_split,
                               shifted_split)
from addcomb.energy import energy2, membership_count, threshold_set
from addcomb.errors import InvalidInputError, ResourceLimitError
from addcomb.sets import FiniteRealSet, ratio_set

S = FiniteRealSet


def test_find_witness_on_geometric_progression():
    gp = gp_set(64)
    w = find_witness(gp, "multiplicative")
    assert w is not None
    assert w.score > Fraction(1, 6)
    # the stored threshold set matches the public operation exactly
    assert w.S_tau == threshold_set(gp, w.G, w.tau, "multiplicative")


def test_find_witness_none_on_singleton_and_random():
    assert find_witness(S([7]), "multiplicative") is None
    rand = random_set(32, 1, 10 ** 6, seed=4, nonzero=True)
    assert find_witness(rand, "multiplicative") is None


def test_find_witness_rejects_zero():
    with pytest.raises(InvalidInputError):
        find_witness(S([0, 1, 2]), "multiplicative")


def test_dyadic_extract_class_properties():
    gp = gp_set(32)
    w = find_witness(gp, "multiplicative")
    piece, q, sizes = dyadic_extract(gp, w)
    assert len(piece) >= 1 and piece.issubset(gp)
    # every member's cover count lies in (q, 2q]
    s_set = set(w.S_tau)
    for a in piece:
        c = sum(1 for g in w.G if a / g in s_set)
        assert q < c <= 2 * q
    # pigeonhole guarantee over the nonempty classes
    total_cover = sum(membership_count(gp, w.G, s, "multiplicative")
                      for s in w.S_tau)
    assert total_cover >= w.tau * len(w.S_tau)
    j = len(sizes)
    assert len(piece) * q >= Fraction(w.tau * len(w.S_tau), 2 * j)


def test_dyadic_extract_uniform_counts_take_everything():
    # G = Cp itself at tau = |Cp|: the threshold set is {1} and every element
    # is covered exactly once, so one class holds all of Cp
    gp = gp_set(16)
    from addcomb.decompose import Witness
    w = Witness(G=gp, tau=Fraction(16),
                S_tau=threshold_set(gp, gp, 16, "multiplicative"),
                score=Fraction(1, 16), tag="manual", kind="multiplicative")
    assert w.S_tau == S([1])
    piece, q, _sizes = dyadic_extract(gp, w)
    assert piece == gp and q == Fraction(1, 2)


def test_split_partition_and_trace_consistency():
    for A in (gp_set(64), ap_set(64),
              random_set(48, 1, 3000, seed=9, nonzero=True)):
        tr = balog_wooley_split(A)
        assert tr.B.isdisjoint(tr.C)
        assert tr.B.union(tr.C) == A
        pieces = [r.piece for r in tr.rounds]
        seen = set()
        for p in pieces:
            assert seen.isdisjoint(set(p))
            seen.update(p)
        assert S(seen) == tr.B
        # residual strictly shrinks round by round
        sizes = [r.residual_size for r in tr.rounds]
        assert sizes == sorted(sizes, reverse=True)
        assert all(s2 < s1 for s1, s2 in zip(sizes, sizes[1:]))


def test_split_piece_size_floor():
    # each extracted piece carries at least a 1/(C sqrt(M) log^2) share of
    # its residual, the slack-tolerant form of the extraction guarantee
    from addcomb.roots import floor_log2, introot
    for A in (gp_set(64), gp_set(128).translate(0)):
        cfg = SplitConfig()
        tr = balog_wooley_split(A, cfg)
        m_int = int(cfg.resolve_m(len(A))) + 1
        slack = cfg.term_const * (introot(m_int, 2) + 1) \
            * max(1, floor_log2(len(A))) ** 2
        for r in tr.rounds:
            assert len(r.piece) * slack >= r.residual_size


def test_trace_records_piece_class_histogram():
    tr = balog_wooley_split(gp_set(64))
    hist = tr.certification["piece_class_histogram"]
    assert sum(hist.values()) == len(tr.rounds)


def test_split_requires_sane_input():
    with pytest.raises(InvalidInputError):
        balog_wooley_split(S([3]))
    with pytest.raises(InvalidInputError):
        balog_wooley_split(S([0, 1]))


def test_split_two_elements_trivially_certified():
    tr = balog_wooley_split(S([1, 2]))
    report = certify_split(tr.A, tr.B, tr.C)
    assert report.all_bounds_hold()


def test_split_resource_limit_carries_partial_trace():
    gp = gp_set(128)
    cfg = SplitConfig(max_rounds=0)
    with pytest.raises(ResourceLimitError) as err:
        balog_wooley_split(gp, cfg)
    partial = err.value.partial
    assert isinstance(partial, DecompositionTrace)
    assert partial.stop_reason == "resource-limit"


def test_split_rerun_byte_identical():
    A = gp_set(96)
    cfg = SplitConfig(seed=11)
    t1 = balog_wooley_split(A, cfg)
    t2 = balog_wooley_split(A, cfg)
    assert t1.to_json() == t2.to_json()


def test_certify_split_validates_partition():
    a = ap_set(8)
    b = S([1, 2, 3])
    c = S([4, 5, 6, 7, 8])
    rep = certify_split(a, b, c)
    assert rep.b_size == 3 and rep.c_size == 5
    assert rep.e2_add_b == energy2(b, kind="additive").value
    with pytest.raises(InvalidInputError):
        certify_split(a, b, S([4, 5]))
    with pytest.raises(InvalidInputError):
        certify_split(a, S([1, 2, 3, 4]), c)


def test_certify_split_empty_side():
    a = ap_set(6)
    rep = certify_split(a, S([]), a)
    assert rep.e2_add_b == 0 and rep.e3_add_b == 0
    assert rep.all_bounds_hold()


def test_shifted_split_mult_shift():
    # a shifted geometric progression: the +1 view is multiplicatively
    # structured, so material moves to B and E_x(B) stays moderate
    A = gp_set(48).translate(-1)
    tr = shifted_split(A, Fraction(1), "mult_shift")
    assert tr.B.union(tr.C) == A and tr.B.isdisjoint(tr.C)
    assert len(tr.B) > 0
    cert = tr.certification
    assert cert["B"]["bound_ok"] and cert["C+alpha"]["bound_ok"]


def test_shifted_split_trivial_alpha_energy():
    # when nothing moves to C, the shifted-part energy is zero
    A = gp_set(16).translate(-1)
    tr = shifted_split(A, Fraction(1), "mult_shift",
                       SplitConfig(M=Fraction(10 ** 6)))
    if len(tr.C) == 0:
        assert tr.certification["C+alpha"]["E2"] == 0


def test_shifted_split_add_scale_handles_zero():
    A = S([0, 1, 2, 3, 4, 6, 12])
    tr = shifted_split(A, Fraction(12), "add_scale")
    assert tr.B.union(tr.C) == A and tr.B.isdisjoint(tr.C)
    assert 0 in tr.B  # untransformable element is pre-assigned


def test_shifted_split_rejects_zero_alpha():
    with pytest.raises(InvalidInputError):
        shifted_split(ap_set(4), 0, "mult_shift")


def test_ratio_split_small_exhaustive():
    r1, r2, rep = ratio_split(S([0, 1, 2]))
    R = ratio_set(S([0, 1, 2]))
    assert R == S([-1, 0, Fraction(1, 2), 1, 2])
    assert 2 * len(r1) >= len(R) and 2 * len(r2) >= len(R)
    assert r1.issubset(R) and r2.issubset(R)
    assert rep.reflection_verified and rep.inversion_verified


def test_ratio_split_reflection_and_inversion_are_exact():
    A = random_set(6, -20, 20, seed=21)
    R = ratio_set(A)
    assert S(1 - x for x in R) == R
    rstar = R.remove_zero()
    assert rstar.invert() == rstar
    r1, r2, rep = ratio_split(A)
    assert 2 * len(r1) >= len(R)
    assert 2 * len(r2) >= len(R)


def test_ratio_split_requires_three_elements():
    with pytest.raises(InvalidInputError):
        ratio_split(S([1, 2]))
