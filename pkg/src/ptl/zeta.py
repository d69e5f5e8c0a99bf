"""L-polynomials from point counts, Newton polygons and supersingularity tests."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveModel, count_points, genus
from .errors import NonIntegralCoefficient, WeilBoundViolation
from .polygon import NewtonPolygon, polygon_from_points


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple[int, ...]
    q: int
    g: int

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.g + 1 or self.coeffs[0] != 1:
            raise ValueError("L-polynomial must have degree 2g and constant term 1")
        for i in range(self.g + 1):
            if self.coeffs[2 * self.g - i] != self.q ** (self.g - i) * self.coeffs[i]:
                raise ValueError(f"functional equation fails at index {i}")

    @property
    def p(self) -> int:
        return _prime_of(self.q)

    def charpoly(self) -> tuple[int, ...]:
        """Coefficients of T^{2g} L(1/T), highest degree first: 1, a_1, ..., q^g."""
        return self.coeffs

    def point_count(self, s: int) -> int:
        """N_s predicted by the zeta function (power-series expansion)."""
        return self.q**s + 1 - power_sums(self.coeffs, s)[s - 1]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            mag = abs(c)
            body = (str(mag) if mag != 1 or not mon else "") + mon
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _prime_of(q: int) -> int:
    d = 2
    while q % d:
        d += 1
    return d


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def power_sums(coeffs, n: int) -> list[int]:
    """p_1..p_n of the reciprocal roots, from L via Newton's identities."""
    c = list(coeffs) + [0] * max(0, n + 1 - len(coeffs))
    ps: list[int] = []
    for s in range(1, n + 1):
        # s c_s = -sum_{i=1}^{s} p_i c_{s-i}  =>  p_s = -s c_s - sum_{i<s} p_i c_{s-i}
        ps.append(-s * c[s] - sum(ps[i - 1] * c[s - i] for i in range(1, s)))
    return ps


def l_polynomial_from_counts(counts, q: int, g: int) -> LPolynomial:
    """L-polynomial from N_1..N_g over F_q."""
    if len(counts) < g:
        raise ValueError(f"need {g} point counts, got {len(counts)}")
    for s, n in enumerate(counts[:g], start=1):
        dev = n - q**s - 1
        if dev * dev > 4 * g * g * q**s:
            raise WeilBoundViolation(f"N_{s} = {n} violates the Hasse-Weil bound over F_{q}")
    ps = [q**s + 1 - n for s, n in enumerate(counts[:g], start=1)]
    c = [1]
    for s in range(1, g + 1):
        num = -sum(ps[i - 1] * c[s - i] for i in range(1, s + 1))
        if num % s:
            raise NonIntegralCoefficient(f"c_{s} = {Fraction(num, s)} is not an integer")
        c.append(num // s)
    for i in range(g + 1, 2 * g + 1):
        c.append(q ** (i - g) * c[2 * g - i])
    return LPolynomial(tuple(c), q, g)


def l_polynomial(model: CurveModel, threads: int = 1) -> LPolynomial:
    g = genus(model)
    q = model.field.q
    if threads > 1 and g > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(lambda s: count_points(model, s), range(1, g + 1)))
    else:
        counts = [count_points(model, s) for s in range(1, g + 1)]
    return l_polynomial_from_counts(counts, q, g)


def newton_polygon(L: LPolynomial, r: int | None = None) -> NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)/r); zero coefficients are skipped."""
    p = L.p
    if r is None:
        r = _valuation(L.q, p)
    elif p**r != L.q:
        raise ValueError(f"q = {L.q} is not {p}^{r}")
    pts = [(i, Fraction(_valuation(abs(c), p), r)) for i, c in enumerate(L.coeffs) if c]
    return polygon_from_points(pts)


def p_rank_from_np(np_: NewtonPolygon) -> int:
    return np_.multiplicity(0)


def is_supersingular_manin(L: LPolynomial, r: int | None = None) -> bool:
    """p^ceil(jr/2) divides the j-th Frobenius charpoly coefficient for j = 1..g."""
    p = L.p
    if r is None:
        r = _valuation(L.q, p)
    a = L.charpoly()
    return all(a[j] % p ** (-(-j * r // 2)) == 0 for j in range(1, L.g + 1))
