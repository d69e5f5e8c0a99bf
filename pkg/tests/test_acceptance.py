"""End-to-end acceptance checks, one test per criterion.

Each test prints ``[criterion N] PASS`` or ``[criterion N] FAIL (...)`` and
the terminal summary repeats the full list.  Wall-clock limits are part of
the criterion: a correct result that exceeds its limit is a FAIL.

    pytest tests/test_acceptance.py -v
"""

from __future__ import annotations

import random
import shlex
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from ptl import cli
from ptl.arith import Poly, field_make, is_prime
from ptl.cartier import a_number, cartier_matrix_hyperelliptic, elliptic_is_supersingular, p_rank
from ptl.curves import AdditiveCoverModel, HyperellipticModel, SuperellipticModel, hermitian, validate
from ptl.cyclic import (
    MonodromyDatum,
    admissible_set,
    cm_newton_polygon,
    datum_canonicalize,
    is_special,
    moonen_table,
    mu_ordinary,
    signature,
    special_scan,
)
from ptl.families import ckp_genus_identity, legendre_ss_count, mass_formula_check, ss_j_count
from ptl.polygon import NewtonPolygon
from ptl.strata import eo_enumerate, eo_invariants, sdim, ss_locus_dim
from ptl.zeta import is_supersingular_manin, l_polynomial, newton_polygon

RESULTS: dict[int, str] = {}

# wall-clock limits in seconds; "instantaneous" is pinned at one second
LIMITS = {1: 30, 2: 10, 3: 5, 4: 60, 5: 60, 6: 180, 7: 1, 9: 60, 11: 120, 12: 1}


@contextmanager
def criterion(n: int):
    start = time.perf_counter()
    passed = False
    try:
        yield
        passed = True
    except BaseException as exc:
        RESULTS[n] = f"FAIL ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        print(f"[criterion {n}] {RESULTS[n]}")
        raise
    finally:
        elapsed = time.perf_counter() - start
        if passed:
            limit = LIMITS.get(n)
            if limit is not None and elapsed > limit:
                RESULTS[n] = f"FAIL (took {elapsed:.1f} s, limit {limit} s)"
            else:
                RESULTS[n] = f"PASS ({elapsed:.2f} s)"
            print(f"[criterion {n}] {RESULTS[n]}")
    if RESULTS[n].startswith("FAIL"):
        pytest.fail(RESULTS[n])


def _expand(factors):
    out = [1]
    for f in factors:
        new = [0] * (len(out) + len(f) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(f):
                new[i + j] += a * b
        out = new
    return tuple(out)


def test_criterion_01_hermitian_curves():
    with criterion(1):
        for q, g in ((3, 3), (4, 6)):
            L = l_polynomial(hermitian(q))
            assert L.coeffs == _expand([(1, 0, q)] * g)
            assert newton_polygon(L) == NewtonPolygon.supersingular(g)
            assert is_supersingular_manin(L)


def test_criterion_02_artin_schreier_curves():
    with criterion(2):
        F3, F2 = field_make(3), field_make(2)
        cases = [
            (AdditiveCoverModel(Poly(F3, [0, -1, 0, 1]), Poly(F3, [0, 0, 0, 0, 1])), 3),
            (AdditiveCoverModel(Poly(F2, [0, 1, 1]), Poly(F2, [0, 0, 0, 1])), 1),
        ]
        for model, g in cases:
            assert newton_polygon(l_polynomial(model)) == NewtonPolygon.supersingular(g)


def test_criterion_03_elliptic_congruences():
    with criterion(3):
        for p in range(5, 48):
            if not is_prime(p):
                continue
            x = Poly.x(field_make(p))
            assert elliptic_is_supersingular(x**3 + 1) == (p % 3 == 2)
            assert elliptic_is_supersingular(x**3 + x) == (p % 4 == 3)


def test_criterion_04_deuring_count():
    with criterion(4):
        for p in (5, 7, 11, 13, 17, 19, 23, 31, 37):
            assert legendre_ss_count(p) == (p - 1) // 2


def test_criterion_05_class_counts_and_mass():
    with criterion(5):
        eps = {1: 0, 5: 1, 7: 1, 11: 2}
        for p in range(2, 101):
            if not is_prime(p):
                continue
            if p >= 5:
                assert ss_j_count(p) == p // 12 + eps[p % 12]
            mass, expected = mass_formula_check(p)
            assert mass == expected == Fraction(p - 1, 24)


def test_criterion_06_cartier_zeta_concordance():
    with criterion(6):
        rng = random.Random(6)
        checked = 0
        while checked < 200:
            p = rng.choice([3, 5, 7])
            g = rng.choice([1, 2, 3])
            F = field_make(p)
            h = Poly(F, [rng.randrange(p) for _ in range(2 * g + 1 + rng.randrange(2))] + [rng.randrange(1, p)])
            model = HyperellipticModel(h)
            if validate(model):
                continue
            M = cartier_matrix_hyperelliptic(model)
            f, a = p_rank(M), a_number(M)
            assert f == newton_polygon(l_polynomial(model)).multiplicity(0)
            if f < g:
                assert 1 <= a + f <= g
            checked += 1


def test_criterion_07_stratum_dimensions():
    with criterion(7):
        assert sdim(NewtonPolygon.elementary(1, 4)) == 6
        assert sdim(NewtonPolygon.elementary(2, 5)) == 7
        for g in range(1, 13):
            assert ss_locus_dim(g) == g * g // 4 == sdim(NewtonPolygon.supersingular(g))
            assert sdim(NewtonPolygon.ordinary(g)) == g * (g + 1) // 2


def test_criterion_08_eo_tables():
    golden = {
        2: {((1, 2), 0, 2, 0, ()), ((1, 1), 1, 1, 1, (1,)), ((0, 1), 2, 0, 1, (2,)), ((0, 0), 3, 0, 2, (2, 1))},
        3: {
            ((1, 2, 3), 0, 3, 0, ()),
            ((1, 2, 2), 1, 2, 1, (1,)),
            ((1, 1, 2), 2, 1, 1, (2,)),
            ((1, 1, 1), 3, 1, 2, (2, 1)),
            ((0, 1, 2), 3, 0, 1, (3,)),
            ((0, 1, 1), 4, 0, 2, (3, 1)),
            ((0, 0, 1), 5, 0, 2, (3, 2)),
            ((0, 0, 0), 6, 0, 3, (3, 2, 1)),
        },
    }
    with criterion(8):
        for g, rows in golden.items():
            got = set()
            for nu in eo_enumerate(g):
                inv = eo_invariants(nu)
                got.add((nu.nu, inv.codim, inv.p_rank, inv.a_number, inv.young.mu))
            assert got == rows


def test_criterion_09_signatures_and_special_families():
    with criterion(9):
        assert signature(MonodromyDatum(5, (1, 1, 1, 1, 1))) == (3, 2, 1, 0)
        assert signature(MonodromyDatum(9, (1, 1, 1, 6))) == (2, 2, 1, 1, 1, 0, 0, 0)
        table = moonen_table()
        rows = table["one_dimensional"] + table["two_dimensional"]
        assert len(table["one_dimensional"]) == 14 and len(table["two_dimensional"]) == 4
        golden = set()
        for row in rows:
            datum = MonodromyDatum(row["m"], tuple(row["a"]))
            assert is_special(datum)
            golden.add((datum.m, datum_canonicalize(datum).a))
        found = {(d.m, d.a) for d in special_scan(12, 5)}
        assert found <= golden, f"false positives: {sorted(found - golden)}"
        assert found == golden


def test_criterion_10_kottwitz_polygons():
    m16, m19 = (3, 2, 1, 0), (2, 2, 1, 1, 1, 0, 0, 0)
    cases = [
        (5, m16, 2, "(1/4,3/4)+ss^2"),
        (5, m16, 3, "(1/4,3/4)+ss^2"),
        (5, m16, 19, "ord^2+ss^4"),
        (9, m19, 2, "(1/3,2/3)^2+ss"),
        (9, m19, 5, "(1/3,2/3)^2+ss"),
        (9, m19, 17, "ord^2+ss^5"),
    ]
    with criterion(10):
        for m, f, p, label in cases:
            assert mu_ordinary(m, f, p).slopes == NewtonPolygon.parse(label).slopes, (m, p)
        for m, f, p in [(5, m16, 2), (5, m16, 19), (9, m19, 2), (9, m19, 17)]:
            assert admissible_set(m, f, p).basic.is_supersingular()


def _zeta_polygon(m, a, p):
    F = field_make(p)
    model = SuperellipticModel(F, m, (F(0), F(1)), a[:2])
    return newton_polygon(l_polynomial(model))


def test_criterion_11_cm_cross_validation():
    with criterion(11):
        predicted = cm_newton_polygon(13, (1, 1, 11), 2)
        observed = _zeta_polygon(13, (1, 1, 11), 2)
        assert predicted.is_supersingular()
        assert observed == NewtonPolygon.supersingular(6)
        predicted = cm_newton_polygon(5, (1, 1, 3), 7)
        observed = _zeta_polygon(5, (1, 1, 3), 7)
        assert predicted.slopes == observed.slopes
        # the criterion calls this polygon non-supersingular; 7^2 = -1 mod 5 makes it supersingular
        assert not observed.is_supersingular(), f"(5,(1,1,3)) at p=7 is {observed.label()}, not non-supersingular"


def test_cm_pipelines_agree_on_a_non_supersingular_case():
    predicted = cm_newton_polygon(5, (1, 1, 3), 11)
    observed = _zeta_polygon(5, (1, 1, 3), 11)
    assert predicted.slopes == observed.slopes
    assert observed.is_ordinary()


def test_criterion_12_ckp_identity():
    with criterion(12):
        rng = random.Random(12)
        primes = [p for p in range(2, 50) if is_prime(p)]
        for _ in range(200):
            p = rng.choice(primes)
            bits = rng.getrandbits(rng.randint(1, 24)) | 1
            delta = sum(p**i for i in range(bits.bit_length()) if bits >> i & 1)
            assert ckp_genus_identity(p, delta)[1] == delta * p * (p - 1) // 2


DETERMINISM_COMMANDS = [
    'invariants "hyp;F3^2;h=x^7+t*x+1"',
    'zeta "sup;F7;m=3;a=1,1,1,1,2;b=0,1,2,3,4"',
    "strata --eo-table 3",
    "strata --polygons 5",
    "eo --g 4",
    "kottwitz --m 9 --sig 2,2,1,1,1,0,0,0 --p 2 --admissible",
    "special --m-max 12 --n-max 5",
    "cm --m 13 --a 1,1,11 --p 2",
    "scan --family legendre --field F7^2",
    "scan --family igusa --field F7",
    "mass --p 97",
    "ckp --p 5 --delta 651",
]


def _run(capsys, command: str) -> tuple[int, str]:
    code = cli.main(shlex.split(command))
    return code, capsys.readouterr().out


def test_criterion_13_thread_determinism(capsys):
    with criterion(13):
        for command in DETERMINISM_COMMANDS:
            outputs = set()
            for threads in (1, 2, 5):
                code, out = _run(capsys, f"{command} --json --no-timing --threads {threads}")
                assert code == 0, (command, out)
                outputs.add(out)
            assert len(outputs) == 1, command
