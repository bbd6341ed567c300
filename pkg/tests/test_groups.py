import random
from fractions import Fraction

import pytest

from addcomb.errors import InvalidInputError
from addcomb.groups import (FiniteAbelianGroup, GroupFunction,
                            circ, dft, ek_energy, ek_energy_fourier,
                            ek_energy_modulus_bounds, ek_norm, ekl_norm,
                            holder_ck_check, holder_ckl_check, sum_ck_power,
                            sum_ck_squared_modulus, triangle_check,
                            walsh_exact, zero_norm_check)

Z = FiniteAbelianGroup.cyclic
CUBE = FiniteAbelianGroup.cube


def rand_fn(group, rng, bound=3, complex_values=False):
    re = [rng.randint(-bound, bound) for _ in range(group.order)]
    im = [rng.randint(-bound, bound) for _ in range(group.order)] \
        if complex_values else None
    return GroupFunction(group, re, im)


def parity_character(n, mask=None):
    g = CUBE(n)
    mask = (1 << n) - 1 if mask is None else mask
    return GroupFunction(g, [(-1) ** ((mask & x).bit_count() & 1)
                             for x in range(g.order)])


def test_dft_delta_is_flat():
    g = Z(4)
    f = GroupFunction.indicator(g, [0])
    assert all(abs(c - 1) < 1e-12 for c in dft(f))


def test_parseval_random():
    rng = random.Random(3)
    g = Z(8)
    for _ in range(5):
        f = rand_fn(g, rng, complex_values=True)
        co = dft(f)
        lhs = float(f.l2_squared())
        rhs = sum(abs(c) ** 2 for c in co) / g.order
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_parseval_at_group_size_bound():
    # the tolerance contract covers every group up to order 256
    rng = random.Random(7)
    for grp in (Z(256), CUBE(8)):
        f = GroupFunction(grp, [Fraction(rng.randint(-40, 40), rng.randint(1, 9))
                                for _ in range(grp.order)])
        co = dft(f)
        lhs = float(f.l2_squared())
        rhs = sum(abs(c) ** 2 for c in co) / grp.order
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_convolution_transform_identity():
    # transform of the additive convolution is the product of transforms
    rng = random.Random(9)
    g = Z(10)
    f = rand_fn(g, rng, complex_values=True)
    h = rand_fn(g, rng, complex_values=True)
    N = g.order
    conv = [sum(complex(float(f.re[y]), float(f.im[y]))
                * complex(float(h.re[(x - y) % N]), float(h.im[(x - y) % N]))
                for y in range(N)) for x in range(N)]
    cf, ch = dft(f), dft(h)
    cc = [sum(conv[x] * g.char(xi, x) for x in range(N)) for xi in range(N)]
    for xi in range(N):
        assert abs(cc[xi] - cf[xi] * ch[xi]) < 1e-7


def test_inversion_and_convolution_identities():
    import cmath
    rng = random.Random(5)
    g = Z(12)
    f = rand_fn(g, rng)
    h = rand_fn(g, rng)
    cf, ch = dft(f), dft(h)
    N = g.order
    # inversion
    for x in range(N):
        val = sum(cf[xi] * cmath.exp(2j * cmath.pi * xi * x / N)
                  for xi in range(N)) / N
        assert abs(val - float(f.re[x])) < 1e-9
    # sum_y |sum_x f(x) h(y-x)|^2 = (1/N) sum |cf|^2 |ch|^2
    lhs = 0.0
    for y in range(N):
        s = sum(float(f.re[x]) * float(h.re[(y - x) % N]) for x in range(N))
        lhs += s * s
    rhs = sum(abs(a) ** 2 * abs(b) ** 2 for a, b in zip(cf, ch)) / N
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))
    # correlation transform: real f gives conj(cf) * ch
    corr = circ(f, h)
    ccorr = dft(corr)
    for xi in range(N):
        assert abs(ccorr[xi] - cf[xi].conjugate() * ch[xi]) < 1e-8


def test_cube_character_transform_support():
    f = parity_character(3)
    hat = walsh_exact(f)
    full = (1 << 3) - 1
    for r in range(8):
        expected = Fraction(8) if r == full else Fraction(0)
        assert hat.re[r] == expected and hat.im[r] == 0


@pytest.mark.parametrize("n", [2, 3])
def test_cube_character_odd_norms_vanish(n):
    f = parity_character(n)
    for k in (1, 3):
        assert ek_norm(f, k).raw == 0
    assert ek_norm(f, 2).raw > 0


def test_ek_norm_examples():
    g = Z(8)
    f = GroupFunction.indicator(g, [0, 1])
    assert ek_norm(f, 3).raw == 10
    assert ek_norm(GroupFunction.zero(g), 3).raw == 0


def test_ek_energy_routes_agree():
    rng = random.Random(11)
    for grp in (Z(6), CUBE(3)):
        for complex_values in (False, True):
            f = rand_fn(grp, rng, complex_values=complex_values)
            for k in (2, 3):
                direct = ek_energy(f, k)
                assert direct == sum_ck_squared_modulus(f, k)
                four = ek_energy_fourier(f, k)
                assert abs(float(direct) - four) <= 1e-9 * max(1.0, float(direct))


def test_ekl_norm_examples():
    g = Z(4)
    delta = GroupFunction.indicator(g, [0])
    for k, l in ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2)):
        assert ekl_norm(delta, k, l).raw == 1
    g8 = Z(8)
    f = GroupFunction.indicator(g8, [0, 1])
    assert ekl_norm(f, 2, 2).raw == 6
    assert ekl_norm(f, 2, 2).raw == ek_energy(f, 2)


def test_ekl_dual_evaluation_agrees_randomized():
    rng = random.Random(23)
    for grp in (Z(5), Z(6), CUBE(2)):
        f = rand_fn(grp, rng)
        for k, l in ((2, 3), (3, 2), (2, 4)):
            r = ekl_norm(f, k, l)
            assert r.raw == sum_ck_power(f, k, l) == sum_ck_power(f, l, k)
            assert r.raw >= 0


def test_ekl_even_even_diagonal_lower_bounds():
    # for even k and l the all-zero shift tuple contributes (sum f^l)^k,
    # so the raw value dominates the l-th and k-th power sums
    rng = random.Random(29)
    for _ in range(10):
        f = rand_fn(Z(6), rng)
        raw = ekl_norm(f, 2, 4).raw
        assert raw >= sum(v ** 4 for v in f.re) ** 2
        assert raw >= sum(v ** 2 for v in f.re) ** 4


def test_ekl_with_l_two_is_plain_energy():
    rng = random.Random(31)
    for grp in (Z(7), CUBE(2)):
        f = rand_fn(grp, rng)
        for k in (2, 3, 4):
            assert ekl_norm(f, k, 2).raw == ek_energy(f, k)


def test_ekl_parity_and_realness_guards():
    g = Z(4)
    f = GroupFunction.indicator(g, [0])
    with pytest.raises(InvalidInputError):
        ekl_norm(f, 3, 3)
    cf = GroupFunction(g, [1, 0, 0, 0], [0, 1, 0, 0])
    with pytest.raises(InvalidInputError):
        ekl_norm(cf, 2, 2)


def test_triangle_equality_with_zero():
    g = Z(6)
    f = GroupFunction(g, [2, -1, 0, 3, 0, 1])
    z = GroupFunction.zero(g)
    for k in (2, 3):
        res = triangle_check(f, z, k)
        assert res.holds and res.detail.startswith("exact")


def test_triangle_proportional_pair_exact():
    g = Z(5)
    f = GroupFunction(g, [1, -2, 0, 1, 3])
    res = triangle_check(f, f.scale(Fraction(3, 2)), 2)
    assert res.holds and "proportional" in res.detail
    res = triangle_check(f, f.scale(-1), 2)
    assert res.holds


def test_triangle_random_real():
    rng = random.Random(37)
    for grp in (Z(8), Z(12), CUBE(3)):
        for k in (2, 3, 4):
            for _ in range(15):
                f = rand_fn(grp, rng)
                g2 = rand_fn(grp, rng)
                assert triangle_check(f, g2, k).holds


def test_triangle_random_two_parameter():
    rng = random.Random(41)
    for k, l in ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2)):
        for _ in range(8):
            f = rand_fn(Z(6), rng, bound=2)
            g2 = rand_fn(Z(6), rng, bound=2)
            assert triangle_check(f, g2, k, l).holds


def test_triangle_complex_enclosure():
    rng = random.Random(43)
    g = Z(6)
    for k in (2, 3):
        for _ in range(6):
            f = rand_fn(g, rng, bound=2, complex_values=True)
            h = rand_fn(g, rng, bound=2, complex_values=True)
            assert triangle_check(f, h, k).holds


def test_character_triple_product_and_failure_without_moduli():
    for n in (2, 3):
        full = (1 << n) - 1
        m1, m2 = 1, 2
        m3 = m1 ^ m2
        f1, f2, f3 = (parity_character(n, m) for m in (m1, m2, m3))
        grp = f1.group
        prod_sum = Fraction(0)
        h = [circ(x, x) for x in (f1, f2, f3)]
        for x in range(grp.order):
            prod_sum += h[0].re[x] * h[1].re[x] * h[2].re[x]
        assert prod_sum == 2 ** (4 * n)
        for hj in h:
            assert sum(v ** 3 for v in hj.re) == 0
        # each factor has zero odd norm, so the bound fails without moduli,
        # while the modulus form holds (with equality here)
        for fj in (f1, f2, f3):
            assert ek_energy(fj, 3) == 0
        res = holder_ck_check([(f1, f1), (f2, f2), (f3, f3)])
        assert res.holds and res.lhs == res.rhs


def test_holder_random():
    rng = random.Random(53)
    for grp in (Z(10), CUBE(2)):
        for k in (1, 2, 3):
            for _ in range(10):
                pairs = [(rand_fn(grp, rng, 2), rand_fn(grp, rng, 2))
                         for _ in range(k)]
                assert holder_ck_check(pairs).holds


def test_holder_singleton_equality():
    g = Z(7)
    d = GroupFunction.indicator(g, [2])
    res = holder_ck_check([(d, d)])
    assert res.holds and res.lhs == res.rhs == 1


def test_holder_two_parameter_random():
    rng = random.Random(59)
    for k, l in ((2, 2), (3, 2), (2, 3)):
        for _ in range(5):
            tuples = [[rand_fn(Z(5), rng, 2) for _ in range(l)]
                      for _ in range(k)]
            assert holder_ckl_check(tuples, l).holds


def test_zero_norm_check():
    g = Z(6)
    assert zero_norm_check(GroupFunction.zero(g), 2) == "f_is_zero"
    f = parity_character(2)
    assert zero_norm_check(f, 2) == "f_nonzero_with_positive_norm"
    ind = GroupFunction.indicator(g, [1, 4])
    assert zero_norm_check(ind, 4) == "f_nonzero_with_positive_norm"
    with pytest.raises(InvalidInputError):
        zero_norm_check(ind, 3)


def test_ek_norm_complex_odd_k_uses_modulus_enclosure():
    g = Z(4)
    # Pythagorean values make |f| exact and the enclosure collapses
    f = GroupFunction(g, [3, 0, 1, 0], [4, 0, 0, 2])
    rep = ek_norm(f, 3)
    assert rep.modulus_applied and rep.exact
    assert rep.raw == ek_energy(GroupFunction(g, [5, 0, 1, 2]), 3)
    # an irrational modulus produces a strict but tight bracket
    h = GroupFunction(g, [1, 0, 2, 0], [1, 0, 0, 0])
    rep = ek_norm(h, 3)
    assert rep.modulus_applied and not rep.exact
    assert rep.raw_upper - rep.raw_lower < Fraction(1, 10 ** 12)
    assert rep.root_lower ** 6 <= rep.raw_upper
    # even k on the same complex h stays exact
    rep2 = ek_norm(h, 2)
    assert rep2.exact and not rep2.modulus_applied


def test_holder_with_complex_pair():
    rng = random.Random(61)
    g = Z(6)
    for _ in range(5):
        pairs = [(rand_fn(g, rng, 2, complex_values=True),
                  rand_fn(g, rng, 2, complex_values=True)) for _ in range(2)]
        assert holder_ck_check(pairs).holds


def test_group_energy_matches_set_energy_without_wraparound():
    # indicators of small integer sets inside a large cycle count the same
    # tuples as the exact-set machinery
    from addcomb.energy import energy_k_pair
    from addcomb.sets import FiniteRealSet
    elems = [0, 1, 3, 7]
    g = Z(64)  # wide enough that differences never wrap
    f = GroupFunction.indicator(g, elems)
    a = FiniteRealSet(elems)
    for k in (2, 3, 4):
        assert ek_energy(f, k) == energy_k_pair(a, a, k, "additive").value


def test_norm_report_root_brackets():
    g = Z(8)
    f = GroupFunction.indicator(g, [0, 1, 3])
    rep = ek_norm(f, 2)
    assert rep.root_lower ** rep.degree <= rep.raw <= rep.root_upper ** rep.degree
    assert rep.degree == 4 and rep.exact


def test_complex_modulus_bounds_bracket_truth():
    g = Z(4)
    # f with |f| integer everywhere: values 3+4i etc.
    f = GroupFunction(g, [3, 0, 1, 0], [4, 0, 0, 2])
    lo, hi = ek_energy_modulus_bounds(f, 3)
    # |f| = (5, 0, 1, 2); E_3 computed directly on that real function
    exact = ek_energy(GroupFunction(g, [5, 0, 1, 2]), 3)
    assert lo <= exact <= hi
    assert hi - lo < Fraction(1, 10 ** 6)
