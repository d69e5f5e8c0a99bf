import itertools
from fractions import Fraction

import pytest

from ptl.errors import BudgetExceeded, GenusMismatch
from ptl.polygon import NewtonPolygon
from ptl.strata import (
    EOType,
    SymmetricNP,
    YoungType,
    enumerate_symmetric_nps,
    eo_add_ordinary,
    eo_enumerate,
    eo_from_young,
    eo_invariants,
    eo_table,
    np_add_ordinary,
    np_compare,
    np_leq,
    sdim,
    ss_locus_dim,
    unlikely_audit,
    young_type,
)

# (name, cod, f, a, nu, mu), transcribed from the small-dimension p-torsion tables
GOLDEN = {
    2: [
        ("L^2", 0, 2, 0, [1, 2], []),
        ("L+I_{1,1}", 1, 1, 1, [1, 1], [1]),
        ("I_{2,1}", 2, 0, 1, [0, 1], [2]),
        ("(I_{1,1})^2", 3, 0, 2, [0, 0], [2, 1]),
    ],
    3: [
        ("L^3", 0, 3, 0, [1, 2, 3], []),
        ("L^2+I_{1,1}", 1, 2, 1, [1, 2, 2], [1]),
        ("L+I_{2,1}", 2, 1, 1, [1, 1, 2], [2]),
        ("L+(I_{1,1})^2", 3, 1, 2, [1, 1, 1], [2, 1]),
        ("I_{3,1}", 3, 0, 1, [0, 1, 2], [3]),
        ("I_{3,2}", 4, 0, 2, [0, 1, 1], [3, 1]),
        ("I_{1,1}+I_{2,1}", 5, 0, 2, [0, 0, 1], [3, 2]),
        ("(I_{1,1})^3", 6, 0, 3, [0, 0, 0], [3, 2, 1]),
    ],
}


def test_sdim_examples():
    assert sdim(NewtonPolygon.elementary(1, 4)) == 6
    assert sdim(NewtonPolygon.elementary(2, 5)) == 7
    for g in range(1, 10):
        assert sdim(NewtonPolygon.ordinary(g)) == g * (g + 1) // 2


def brute_sdim(xi):
    """Count lattice points directly from the vertex list."""
    verts = xi.vertices()

    def height(x):
        for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * Fraction(x - x1, x2 - x1)

    return sum(1 for x in range(1, xi.genus + 1) for y in range(x) if y >= height(x))


@pytest.mark.parametrize("g", range(1, 7))
def test_sdim_matches_direct_count(g):
    for xi in enumerate_symmetric_nps(g):
        assert sdim(xi) == brute_sdim(xi)


@pytest.mark.parametrize("g", range(1, 13))
def test_ss_locus_dimension(g):
    assert ss_locus_dim(g) == g * g // 4 == sdim(NewtonPolygon.supersingular(g))


def test_ss_locus_examples():
    assert ss_locus_dim(4) == 4
    assert ss_locus_dim(1) == 0
    assert ss_locus_dim(9) == 20


def test_enumeration_counts():
    assert [len(enumerate_symmetric_nps(g)) for g in range(1, 6)] == [2, 3, 5, 8, 13]
    for g in range(1, 7):
        nps = enumerate_symmetric_nps(g)
        assert len({xi.slopes for xi in nps}) == len(nps)
        assert all(xi.is_valid_abelian() and xi.genus == g for xi in nps)


@pytest.mark.parametrize("g", range(1, 5))
def test_compare_is_a_partial_order(g):
    nps = enumerate_symmetric_nps(g)
    for a in nps:
        assert np_compare(a, a) == "equal"
        assert np_leq(NewtonPolygon.supersingular(g), a)
        assert np_leq(a, NewtonPolygon.ordinary(g))
    for a, b in itertools.product(nps, repeat=2):
        if np_leq(a, b) and np_leq(b, a):
            assert a == b
        c1, c2 = np_compare(a, b), np_compare(b, a)
        assert {c1, c2} in ({"equal"}, {"below", "above"}, {"incomparable"})
    for a, b, c in itertools.product(nps, repeat=3):
        if np_leq(a, b) and np_leq(b, c):
            assert np_leq(a, c)


@pytest.mark.parametrize("g", range(1, 5))
def test_dimension_drop_bounds_chain_length(g):
    nps = enumerate_symmetric_nps(g)
    ordinary = NewtonPolygon.ordinary(g)
    longest = {}
    # longest strict chain from xi up to ord, processed from the top down
    for xi in sorted(nps, key=sdim, reverse=True):
        ups = [longest[y.slopes] for y in nps if y.slopes in longest and np_compare(xi, y) == "below"]
        longest[xi.slopes] = 1 + max(ups) if ups else 0
    for xi in nps:
        assert sdim(ordinary) - sdim(xi) >= longest[xi.slopes]


def test_compare_examples():
    g = 3
    assert np_compare(NewtonPolygon.supersingular(g), NewtonPolygon.ordinary(g)) == "below"
    assert np_compare(NewtonPolygon.ordinary(g), NewtonPolygon.supersingular(g)) == "above"
    incomparable = (NewtonPolygon.parse("ord+ss^3"), NewtonPolygon.elementary(1, 4))
    assert np_compare(*incomparable) == "incomparable"
    # the g = 3 pair {0,1/2^4,1} vs (1/3,2/3) is comparable: the first lies above
    first = NewtonPolygon.parse("0,1/2^4,1")
    second = NewtonPolygon.elementary(1, 3)
    assert np_compare(first, second) == "above"
    with pytest.raises(GenusMismatch):
        np_compare(NewtonPolygon.ordinary(2), NewtonPolygon.ordinary(3))


def test_symmetric_np_rejects_asymmetric_slopes():
    with pytest.raises(ValueError):
        SymmetricNP([(Fraction(1, 3), 3)])


def test_add_ordinary():
    xi = np_add_ordinary(NewtonPolygon.supersingular(1), 1)
    assert xi.slope_list() == [0, Fraction(1, 2), Fraction(1, 2), 1]
    assert np_add_ordinary(xi, 0) == xi
    assert eo_add_ordinary(EOType((0,)), 2) == EOType((1, 2, 2))
    assert eo_add_ordinary(EOType((0, 1)), 0) == EOType((0, 1))


def test_unlikely_audit():
    report = unlikely_audit(9, NewtonPolygon.supersingular(9))
    assert (report["dim_A_g"], report["sdim"], report["dim_M_g"], report["codim"]) == (45, 20, 24, 25)
    assert report["unlikely"]
    four = unlikely_audit(4, NewtonPolygon.supersingular(4))
    assert four["codim"] == 6 and not four["unlikely"]
    assert not unlikely_audit(5, NewtonPolygon.ordinary(5))["unlikely"]
    with pytest.raises(GenusMismatch):
        unlikely_audit(3, NewtonPolygon.ordinary(2))


def test_eo_enumeration():
    assert eo_enumerate(1) == [EOType((0,)), EOType((1,))]
    for g in range(1, 11):
        types = eo_enumerate(g)
        assert len(types) == 2**g
        assert [t.nu for t in types] == sorted(t.nu for t in types)
        for t in types:
            assert eo_from_young(young_type(t), g) == t
    with pytest.raises(BudgetExceeded):
        eo_enumerate(25)


@pytest.mark.parametrize("g", [2, 3])
def test_eo_golden_tables(g):
    got = [(r["name"], r["cod"], r["f"], r["a"], r["nu"], r["mu"]) for r in eo_table(g)]
    assert sorted(got, key=lambda r: (r[1], -r[2])) == sorted(GOLDEN[g], key=lambda r: (r[1], -r[2]))
    assert {tuple(t.nu) for t in eo_enumerate(g)} == {tuple(r[4]) for r in GOLDEN[g]}


def test_eo_invariant_examples():
    inv = eo_invariants(EOType((0, 1, 2)))
    assert (inv.p_rank, inv.a_number, inv.young, inv.dim, inv.codim) == (0, 1, YoungType((3,)), 3, 3)
    inv = eo_invariants(EOType((0, 1, 1)))
    assert (inv.p_rank, inv.a_number, inv.young.mu, inv.codim) == (0, 2, (3, 1), 4)
    for g in range(1, 8):
        inv = eo_invariants(EOType(tuple(range(1, g + 1))))
        assert (inv.p_rank, inv.a_number, inv.young.mu, inv.codim) == (g, 0, (), 0)


def test_eo_type_validation():
    for bad in [(2,), (0, 2), (1, 0)]:
        with pytest.raises(ValueError):
            EOType(bad)
    with pytest.raises(ValueError):
        YoungType((1, 2))
