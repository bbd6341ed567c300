from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from addcomb.errors import InvalidInputError, ResourceLimitError
from addcomb.sets import (FiniteRealSet, combine, format_set_text,
                          higher_sumset_size, higher_sumset_size_brute,
                          parse_set_text, ratio_set, slice_set)

S = FiniteRealSet

small_rationals = st.fractions(min_value=-20, max_value=20,
                               max_denominator=8)
small_sets = st.sets(small_rationals, min_size=1, max_size=8).map(S)
small_int_sets = st.sets(st.integers(-30, 30), min_size=1, max_size=8).map(S)


def test_constructor_sorts_and_dedupes():
    a = S([3, 1, 1, Fraction(1, 2), "2/4"])
    assert a.elems == (Fraction(1, 2), Fraction(1), Fraction(3))
    assert len(a) == 3


def test_float_elements_rejected():
    with pytest.raises(InvalidInputError):
        S([0.5])


def test_combine_examples():
    assert combine(S([0, 1]), S([0, 1]), "sum") == S([0, 1, 2])
    assert combine(S([1]), S([2, 3]), "prod") == S([2, 3])
    assert combine(S([1, 2, 4]), S([1, 2, 4]), "quot") == \
        S([Fraction(1, 4), Fraction(1, 2), 1, 2, 4])


def test_combine_quot_skips_zero_divisors():
    assert combine(S([1, 2]), S([0, 1]), "quot") == S([1, 2])
    assert len(combine(S([1]), S([0]), "quot")) == 0


@given(small_sets, small_sets, st.sampled_from(["sum", "diff", "prod"]))
def test_combine_size_bounds(a, b, op):
    c = combine(a, b, op)
    assert len(c) <= len(a) * len(b)
    assert len(c) >= max(len(a), len(b)) or (op == "prod" and 0 in a.union(b))


@given(small_sets, small_sets)
def test_combine_quot_size_bounds(a, b):
    bz = b.remove_zero()
    c = combine(a, bz, "quot") if len(bz) else None
    if c is not None and 0 not in a:
        assert max(len(a), len(bz)) <= len(c) <= len(a) * len(bz)


def test_slice_examples():
    assert slice_set(S([0, 1]), 1, "additive") == S([0])
    a = S([-3, 0, 2, 7])
    assert slice_set(a, 0, "additive") == a
    assert slice_set(S([1, 2, 4]), 2, "multiplicative") == S([2, 4])
    assert slice_set(S([0, 1, 3]), 3, "reflected") == S([0, 3])
    assert slice_set(S([1, 2, 4]), 4, "ratio") == S([1, 2, 4])
    assert slice_set(S([0, 1, 2]), 2, "ratio") == S([1, 2])


def test_slice_degenerate_scalars():
    # x = 0 collapses the dilation/ratio images to subsets of {0}
    assert slice_set(S([0, 2]), 0, "multiplicative") == S([0])
    assert slice_set(S([1, 2]), 0, "multiplicative") == S([])
    assert slice_set(S([0, 2]), 0, "ratio") == S([0])
    assert slice_set(S([1, 2]), 0, "ratio") == S([])
    assert slice_set(S([0]), 0, "ratio") == S([])


@given(small_sets, small_rationals,
       st.sampled_from(["additive", "multiplicative", "reflected", "ratio"]))
def test_slice_is_subset(a, x, kind):
    assert slice_set(a, x, kind).issubset(a)


@given(small_sets, small_rationals,
       st.sampled_from(["additive", "multiplicative", "reflected", "ratio"]))
def test_slice_matches_literal_intersection(a, x, kind):
    if kind == "additive":
        other = {e - x for e in a}
    elif kind == "multiplicative":
        other = {x * e for e in a}
    elif kind == "reflected":
        other = {x - e for e in a}
    else:
        other = {x / e for e in a if e != 0}
    expected = S(set(a.elems) & other)
    assert slice_set(a, x, kind) == expected


def test_higher_sumset_frozen_examples():
    assert higher_sumset_size(S([0, 1]), "plus", "additive") == 7
    assert higher_sumset_size(S([5]), "plus", "additive") == 1
    assert higher_sumset_size(S([1, 2]), "plus", "multiplicative") == 7


def test_higher_sumset_rejects_zero_for_multiplicative():
    with pytest.raises(InvalidInputError):
        higher_sumset_size(S([0, 1]), "plus", "multiplicative")
    with pytest.raises(InvalidInputError):
        higher_sumset_size_brute(S([0, 1]), "minus", "multiplicative")


@settings(max_examples=60)
@given(small_int_sets, st.sampled_from(["plus", "minus"]),
       st.sampled_from(["additive", "multiplicative"]))
def test_higher_sumset_matches_brute_force(a, sign, op):
    if op == "multiplicative":
        a = a.remove_zero()
        if len(a) == 0:
            return
    assert higher_sumset_size(a, sign, op) == higher_sumset_size_brute(a, sign, op)


@settings(max_examples=25)
@given(st.sets(small_rationals, min_size=1, max_size=6).map(S),
       st.sampled_from(["plus", "minus"]),
       st.sampled_from(["additive", "multiplicative"]))
def test_higher_sumset_matches_brute_force_rational(a, sign, op):
    if op == "multiplicative":
        a = a.remove_zero()
        if len(a) == 0:
            return
    assert higher_sumset_size(a, sign, op) == higher_sumset_size_brute(a, sign, op)


def test_ratio_set_examples():
    assert ratio_set(S([0, 1])) == S([0, 1])
    assert ratio_set(S([0, 1, 2])) == S([-1, 0, Fraction(1, 2), 1, 2])
    with pytest.raises(InvalidInputError):
        ratio_set(S([4]))


@settings(max_examples=40)
@given(st.sets(st.integers(-25, 25), min_size=2, max_size=6).map(S))
def test_ratio_set_reflection_and_inversion(a):
    r = ratio_set(a)
    assert 0 in r and 1 in r
    one_minus = S(1 - x for x in r)
    assert one_minus == r
    rstar = r.remove_zero()
    assert rstar.invert() == rstar


def test_ratio_set_identities_at_size_twenty():
    import random
    rng = random.Random(17)
    a = S(rng.sample(range(-60, 61), 20))
    r = ratio_set(a)
    assert S(1 - x for x in r) == r
    rstar = r.remove_zero()
    assert rstar.invert() == rstar


def test_parse_format_roundtrip_and_comments():
    text = "# heading\n3/6\n\n-2 # trailing\n7\n"
    a = parse_set_text(text)
    assert a == S([Fraction(1, 2), -2, 7])
    assert parse_set_text(format_set_text(a)) == a


@given(small_sets)
def test_roundtrip_property(a):
    assert parse_set_text(format_set_text(a)) == a


def test_parse_error_reports_line():
    with pytest.raises(InvalidInputError, match="line 2"):
        parse_set_text("1\nx/y\n")


def test_guard_trips(monkeypatch):
    monkeypatch.setenv("ADDCOMB_PAIR_GUARD", "10")
    with pytest.raises(ResourceLimitError):
        combine(S(range(5)), S(range(5)), "sum")


def test_set_algebra_helpers():
    a = S([1, 2, 3])
    assert a.translate(1) == S([2, 3, 4])
    assert a.dilate(2) == S([2, 4, 6])
    assert a.negate() == S([-1, -2, -3])
    assert a.invert() == S([1, Fraction(1, 2), Fraction(1, 3)])
    assert a.difference(S([2])) == S([1, 3])
    with pytest.raises(InvalidInputError):
        S([0, 1]).invert()
