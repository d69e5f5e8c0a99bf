import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ptl.arith import Poly, field_make
from ptl.curves import AdditiveCoverModel, HyperellipticModel, SuperellipticModel, count_points, genus, hermitian, validate
from ptl.errors import NonIntegralCoefficient, WeilBoundViolation
from ptl.polygon import NewtonPolygon, lower_convex_hull
from ptl.zeta import (
    LPolynomial,
    is_supersingular_manin,
    l_polynomial,
    l_polynomial_from_counts,
    newton_polygon,
    p_rank_from_np,
    power_sums,
)


def _expand(factors):
    out = [1]
    for f in factors:
        new = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                new[i + j] += a * b
        out = new
    return tuple(out)


def test_elliptic_example():
    F = field_make(5)
    x = Poly.x(F)
    L = l_polynomial(HyperellipticModel(x**3 + x))
    assert L.coeffs == (1, -2, 5)
    assert str(L) == "1 - 2T + 5T^2"
    assert newton_polygon(L).is_ordinary()
    assert not is_supersingular_manin(L)


def test_hermitian_three():
    L = l_polynomial(hermitian(3))
    assert L.coeffs == _expand([(1, 0, 3)] * 3)


def test_artin_schreier_regression():
    F = field_make(3)
    model = AdditiveCoverModel(Poly(F, [0, -1, 0, 1]), Poly(F, [0, 0, 0, 0, 1]))
    L = l_polynomial(model)
    assert L.coeffs == (1, 0, -3, 0, -9, 0, 27)
    assert newton_polygon(L) == NewtonPolygon.supersingular(3)


def test_superelliptic_examples():
    F2 = field_make(2)
    L13 = l_polynomial(SuperellipticModel(F2, 13, (F2(0), F2(1)), (1, 1)))
    assert L13.coeffs == (1,) + (0,) * 11 + (64,)
    F11 = field_make(11)
    L5 = l_polynomial(SuperellipticModel(F11, 5, (F11(0), F11(1)), (1, 1)))
    assert L5.coeffs == (1, 1, -9, 11, 121)
    assert newton_polygon(L5).is_ordinary()


def random_curve(rng, p, g):
    F = field_make(p)
    while True:
        deg = 2 * g + 1 + rng.randrange(2)
        h = Poly(F, [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)])
        model = HyperellipticModel(h)
        if not validate(model):
            return model


@pytest.mark.parametrize("seed", range(12))
def test_counts_beyond_genus_are_predicted(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5, 7])
    g = rng.choice([1, 2, 3])
    model = random_curve(rng, p, g)
    L = l_polynomial(model)
    for s in range(1, g + 3):
        assert L.point_count(s) == count_points(model, s)


@pytest.mark.parametrize("seed", range(12))
def test_weil_structure(seed):
    rng = random.Random(100 + seed)
    p = rng.choice([3, 5, 7])
    g = rng.choice([1, 2, 3])
    L = l_polynomial(random_curve(rng, p, g))
    q = p
    for i in range(g + 1):
        assert L.coeffs[2 * g - i] == q ** (g - i) * L.coeffs[i]
    xi = newton_polygon(L)
    assert xi.is_valid_abelian() and xi.genus == g
    assert is_supersingular_manin(L) == xi.is_supersingular()
    assert p_rank_from_np(xi) == xi.multiplicity(1)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_power_sums_newton_identities(roots):
    # L = prod (1 - r T); power sums of the r are recovered
    L = _expand([(1, -r) for r in roots])
    ps = power_sums(L, 5)
    assert ps == [sum(r**s for r in roots) for s in range(1, 6)]


def test_counts_round_trip_for_products_of_elliptic_factors():
    q = 7
    traces = [1, -3, 0]
    L = _expand([(1, -a, q) for a in traces])
    counts = [q**s + 1 - sum(power_sums((1, -a, q), s)[s - 1] for a in traces) for s in range(1, 4)]
    assert l_polynomial_from_counts(counts, q, 3).coeffs == L


def test_weil_bound_violation():
    with pytest.raises(WeilBoundViolation):
        l_polynomial_from_counts([100], 5, 1)


def test_non_integral_coefficient():
    # power sums 1 and 0 give c_2 = (1 - 0) / 2
    with pytest.raises(NonIntegralCoefficient):
        l_polynomial_from_counts([5, 26], 5, 2)


def test_lpolynomial_validates_functional_equation():
    with pytest.raises(ValueError):
        LPolynomial((1, 2, 3), 5, 1)


def test_newton_polygon_with_explicit_r():
    L = LPolynomial((1, 0, 4), 4, 1)
    assert newton_polygon(L, r=2).is_supersingular()
    with pytest.raises(ValueError):
        newton_polygon(L, r=3)


@given(st.lists(st.tuples(st.integers(0, 8), st.fractions(0, 5, max_denominator=6)), min_size=2, max_size=8))
def test_lower_hull_lies_below_points(pts):
    pts = sorted({x: y for x, y in pts}.items())
    if len(pts) < 2:
        return
    hull = lower_convex_hull(pts)
    xi_pts = [(x, Fraction(y)) for x, y in pts]
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        for x, y in xi_pts:
            if x1 <= x <= x2:
                assert y >= y1 + (y2 - y1) * Fraction(x - x1, x2 - x1)


def test_threads_do_not_change_the_result():
    rng = random.Random(5)
    model = random_curve(rng, 5, 3)
    assert l_polynomial(model, threads=1) == l_polynomial(model, threads=4)
    assert genus(model) == 3
