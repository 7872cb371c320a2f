from fractions import Fraction
from random import Random

import pytest

from slicecalc.algebra import QUATERNION, AlgebraElement, sample_units
from slicecalc.errors import (
    ArityMismatchError,
    DenominatorVanishesError,
    ZeroDenominatorError,
)
from slicecalc.multipoly import (
    CoordPoly,
    RationalFn,
    coord_s,
    coord_x,
    coord_xbar,
    restrict_poly,
    restrict_rf,
)
from slicecalc.sampling import rand_poly, rng_for

H = QUATERNION
ONE = AlgebraElement.one(H)
I, J, K = (AlgebraElement.basis(H, m) for m in (1, 2, 3))


def var(idx, n=4):
    return CoordPoly.variable(H, n, idx)


def const(c, n=4):
    return CoordPoly.constant(H, n, c)


def test_product_keeps_coefficients_in_order():
    x1_i = var(1).scale_left(I)
    x1_j = var(1).scale_left(J)
    assert x1_i * x1_j == (var(1) ** 2).scale_left(K)
    assert x1_j * x1_i == (var(1) ** 2).scale_left(-K)


def test_additive_inverse_and_square():
    p = rand_poly(rng_for(1, "p"), H, 4)
    assert (p + (-p)).is_zero()
    x0_plus_x1i = var(0) + var(1).scale_left(I)
    expect = var(0) ** 2 + (var(0) * var(1)).scale_left(I * 2) - var(1) ** 2
    assert x0_plus_x1i * x0_plus_x1i == expect


def test_arity_and_exponent_validation():
    with pytest.raises(ArityMismatchError):
        CoordPoly(H, 4, {(1, 0): ONE})
    with pytest.raises(ValueError):
        CoordPoly(H, 2, {(-1, 0): ONE})
    with pytest.raises(ArityMismatchError):
        var(0, n=4) + CoordPoly.variable(H, 2, 0)


def test_partial_derivatives_polynomial():
    p = (var(1) ** 2).scale_left(J)
    assert p.partial(1) == var(1).scale_left(J * 2)
    assert p.partial(0).is_zero()


def test_partial_quotient_rule_squares_single_factor():
    den = var(1) ** 2 + var(2) ** 2
    f = RationalFn(const(1), ((den, 1),))
    df = f.partial(1)
    assert df.den_factors == ((den, 2),)
    assert df.numer == var(1) * -2
    # a factor untouched by the derivative keeps its exponent
    assert f.partial(0).is_zero()
    g = RationalFn(var(0), ((den, 1),))
    assert g.partial(0) == RationalFn(const(1), ((den, 1),))


def test_partial_with_multiple_denominator_factors():
    s = coord_s(H)
    splus = s + const(1)
    f = RationalFn(var(0) * var(1), ((s, 1), (splus, 2)))
    df = f.partial(1)
    assert dict(df.den_factors) == {s: 2, splus: 3}
    rng = Random(7)
    step = 1e-5
    for _ in range(10):
        pt = [rng.uniform(0.4, 1.2) for _ in range(4)]
        up, dn = list(pt), list(pt)
        up[1] += step
        dn[1] -= step
        hi, lo = f.eval_float(up), f.eval_float(dn)
        got = df.eval_float(pt)
        for m in set(got) | set(hi):
            approx = (hi.get(m, 0.0) - lo.get(m, 0.0)) / (2 * step)
            assert abs(got.get(m, 0.0) - approx) <= 1e-6 * max(1.0, abs(got.get(m, 0.0)))


def test_eval_examples():
    p = (var(1) ** 2).scale_left(K)
    assert p.eval((0, 3, 0, 0)) == K * 9
    den = var(1) ** 4 + var(2) ** 2 + var(3) ** 2
    f = RationalFn(var(1) ** 2 * var(2), ((den, 1),))
    for h in (2, 3, 10):
        got = f.eval((0, Fraction(1, h), Fraction(1, h * h), 0))
        assert got == AlgebraElement.scalar(H, Fraction(1, 2))
    g = RationalFn(const(1), ((var(1) ** 2 + var(2) ** 2, 1),))
    with pytest.raises(DenominatorVanishesError):
        g.eval((1, 0, 0, 0))


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominatorError):
        RationalFn(const(1), ((CoordPoly.zero(H, 4), 1),))
    with pytest.raises(ValueError):
        RationalFn(const(1), ((var(1).scale_left(I), 1),))  # non-real denominator


def test_denominator_normalization_folds_content():
    den = (var(1) ** 2) * Fraction(-3, 2)
    f = RationalFn(const(1), ((den, 1),))
    # factor becomes primitive with positive leading coefficient
    assert f.den_factors == ((var(1) ** 2, 1),)
    assert f.numer == const(Fraction(-2, 3))
    assert f.eval((0, 2, 0, 0)) == AlgebraElement.scalar(H, Fraction(1, -6))


def test_value_equality_across_representations():
    s = coord_s(H)
    a = RationalFn(var(1) * s, ((s, 2),))
    b = RationalFn(var(1), ((s, 1),))
    assert a == b
    assert RationalFn.from_poly(var(1)) != b


def test_partials_commute_on_random_rational_functions():
    rng = rng_for(3, "commute")
    s = coord_s(H)
    for _ in range(200):
        numer = rand_poly(rng, H, 4, max_degree=3, n_terms=3)
        f = RationalFn(numer, ((s, 1),)) if rng.random() < 0.5 else RationalFn.from_poly(numer)
        h, k = rng.randrange(4), rng.randrange(4)
        assert f.partial(h).partial(k) == f.partial(k).partial(h)


def test_eval_is_multiplicative():
    rng = rng_for(4, "mult")
    for _ in range(500):
        p = rand_poly(rng, H, 4, max_degree=3, n_terms=3)
        q = rand_poly(rng, H, 4, max_degree=3, n_terms=3)
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        assert (p * q).eval(x) == p.eval(x) * q.eval(x)


def test_partial_matches_float_finite_differences():
    rng = rng_for(5, "fd")
    s = coord_s(H)
    step = 1e-5
    for _ in range(50):
        numer = rand_poly(rng, H, 4, max_degree=3, n_terms=4)
        f = RationalFn(numer, ((s, 1),))
        point = [rng.uniform(0.5, 1.5) for _ in range(4)]
        idx = rng.randrange(4)
        exact = f.partial(idx).eval_float(point)
        up = list(point)
        down = list(point)
        up[idx] += step
        down[idx] -= step
        hi, lo = f.eval_float(up), f.eval_float(down)
        for mask in set(exact) | set(hi) | set(lo):
            approx = (hi.get(mask, 0.0) - lo.get(mask, 0.0)) / (2 * step)
            scale = max(1.0, abs(exact.get(mask, 0.0)))
            assert abs(exact.get(mask, 0.0) - approx) <= 1e-6 * scale


def test_restrict_poly_substitution():
    unit = sample_units(H, 0, 5)[4]
    comps = unit.components()
    x = coord_x(H)
    restricted = restrict_poly(x, comps)
    expect = CoordPoly(H, 2, {(1, 0): ONE, (0, 1): unit.value})
    assert restricted == expect
    # evaluating the restriction equals evaluating at the substituted point
    rng = Random("restrict-eval")
    for _ in range(50):
        p = rand_poly(rng_for(6, f"rp{rng.random()}"), H, 4, max_degree=4, n_terms=4)
        alpha = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        beta = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        coords = [alpha] + [c * beta for c in comps]
        assert restrict_poly(p, comps).eval((alpha, beta)) == p.eval(coords)


def test_restrict_rf_zero_denominator_on_slice():
    unit = sample_units(H, 0, 2)[1]  # j: first component 0
    f = RationalFn(CoordPoly.constant(H, 4, 1), ((CoordPoly.variable(H, 4, 1), 1),))
    with pytest.raises(ZeroDenominatorError):
        restrict_rf(f, unit.components())


def test_conjugate_coordinate_polys():
    x = coord_x(H)
    xb = coord_xbar(H)
    point = (Fraction(1), Fraction(2), Fraction(-1), Fraction(3))
    value = x.eval(point)
    assert xb.eval(point) == value.conj()
    assert (x * xb).eval(point) == AlgebraElement.scalar(H, value.norm_sq())
