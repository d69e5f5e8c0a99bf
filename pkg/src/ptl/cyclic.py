"""Monodromy data of cyclic covers of the line and their Frobenius-orbit invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
from math import gcd

from .curves import cover_genus
from .errors import BudgetExceeded, InconsistentSignature, InvalidDatum, NonIntegralSignature, NotCoprime
from .polygon import NewtonPolygon
from .strata import SymmetricNP, np_leq

SCAN_NODE_BUDGET = 10**7
ADMISSIBLE_HEIGHT_LIMIT = 28


@dataclass(frozen=True)
class MonodromyDatum:
    m: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        problems = datum_problems(self.m, self.a)
        if problems:
            raise InvalidDatum(f"({self.m}, {list(self.a)}): " + "; ".join(problems))

    @property
    def N(self) -> int:
        return len(self.a)

    @property
    def genus(self) -> int:
        return cover_genus(self.m, self.a)

    def __str__(self):
        return f"({self.m},{self.N},({','.join(map(str, self.a))}))"


def datum_problems(m: int, a) -> list[str]:
    out = []
    if m < 2:
        out.append("m must be at least 2")
    if len(a) < 3:
        out.append("need N >= 3 branch points")
    if any(not 1 <= x <= m - 1 for x in a):
        out.append("exponents must lie in [1, m-1]")
    g = m
    for x in a:
        g = gcd(g, x)
    if g != 1:
        out.append("gcd(m, a_1, ..., a_N) must be 1")
    if sum(a) % m:
        out.append("sum of exponents must be divisible by m")
    return out


def datum_canonicalize(datum: MonodromyDatum) -> MonodromyDatum:
    """Least sorted tuple in the orbit of (Z/m)^* x Sym_N."""
    m = datum.m
    best = min(tuple(sorted(c * x % m for x in datum.a)) for c in range(1, m) if gcd(c, m) == 1)
    return MonodromyDatum(m, best)


def signature(datum: MonodromyDatum) -> tuple[int, ...]:
    """f_n = -1 + sum_i <-n a_i / m> for n = 1..m-1."""
    m = datum.m
    f = []
    for n in range(1, m):
        value = -1 + sum(Fraction(-n * x % m, m) for x in datum.a)
        if value.denominator != 1:
            raise NonIntegralSignature(f"f_{n} = {value} for {datum}")
        f.append(int(value))
    if sum(f) != datum.genus:
        raise NonIntegralSignature(f"signature {f} does not sum to genus {datum.genus}")
    return tuple(f)


def shimura_dim(m: int, f) -> int:
    """sum over pairs {n, -n} with n != -n of f_n f_{-n}, plus f_{m/2}(f_{m/2}+1)/2 for even m."""
    f = tuple(f)
    if len(f) != m - 1 or any(x < 0 for x in f):
        raise InconsistentSignature(f"signature of length {len(f)} for m = {m}")
    total = sum(f[n - 1] * f[m - n - 1] for n in range(1, (m + 1) // 2))
    if m % 2 == 0:
        mid = f[m // 2 - 1]
        total += mid * (mid + 1) // 2
    return total


def is_special(datum: MonodromyDatum) -> bool:
    if datum.N < 4:
        raise InvalidDatum("special families need N >= 4")
    return shimura_dim(datum.m, signature(datum)) == datum.N - 3


def special_scan(m_max: int, n_max: int, n_min: int = 4) -> list[MonodromyDatum]:
    """Canonical special data with n_min <= N <= n_max and 2 <= m <= m_max."""
    if m_max > 40 or n_max > 8:
        raise BudgetExceeded("special_scan supports m <= 40 and N <= 8")
    found = []
    nodes = 0
    for m in range(2, m_max + 1):
        for N in range(max(n_min, 4), n_max + 1):
            for a in _special_candidates(m, N):
                nodes += 1
                if nodes > SCAN_NODE_BUDGET:
                    raise BudgetExceeded("special_scan visited too many candidates")
                if datum_problems(m, a):
                    continue
                datum = MonodromyDatum(m, a)
                if datum_canonicalize(datum).a != a:
                    continue
                if is_special(datum):
                    found.append(datum)
    return found


def _special_candidates(m: int, N: int):
    """Nondecreasing exponent tuples whose partial signatures can still be special.

    Partial sums S_n = sum <-n a_i/m> only grow, and the final f_n = S_n - 1 is
    an integer, so ceil(S_n) - 1 bounds f_n from below; a tuple is abandoned
    once those bounds force the Shimura dimension above N - 3.
    """
    target = N - 3
    half = (m + 1) // 2

    def bound(sums):
        lows = [max(0, -(-s // m) - 1) for s in sums]  # sums are scaled by m
        total = sum(lows[n - 1] * lows[m - n - 1] for n in range(1, half))
        if m % 2 == 0:
            mid = lows[m // 2 - 1]
            total += mid * (mid + 1) // 2
        return total

    def rec(prefix, start, sums):
        if len(prefix) == N:
            if sum(prefix) % m == 0:
                yield tuple(prefix)
            return
        for x in range(start, m):
            new = [s + (-n * x % m) for n, s in zip(range(1, m), sums)]
            if bound(new) > target:
                continue
            yield from rec(prefix + [x], x, new)

    yield from rec([], 1, [0] * (m - 1))


@lru_cache(maxsize=1)
def moonen_table() -> dict:
    """The special families shipped with the package (label, m, a, g, f)."""
    text = resources.files("ptl").joinpath("data/moonen_special.json").read_text()
    return json.loads(text)


# ---------------------------------------------------------------------------
# Frobenius orbits and Newton polygons


@dataclass(frozen=True)
class OrbitDecomposition:
    m: int
    p: int
    orbits: tuple[tuple[int, ...], ...]
    complement: tuple[int, ...]  # index of the orbit -o

    def self_dual(self, i: int) -> bool:
        return self.complement[i] == i


def orbits(m: int, p: int) -> OrbitDecomposition:
    if gcd(p, m) != 1:
        raise NotCoprime(f"gcd({p}, {m}) != 1")
    seen = set()
    out = []
    for t in range(1, m):
        if t in seen:
            continue
        orbit = []
        x = t
        while x not in orbit:
            orbit.append(x)
            x = x * p % m
        seen.update(orbit)
        out.append(tuple(orbit))
    index = {t: i for i, o in enumerate(out) for t in o}
    complement = tuple(index[(m - o[0]) % m] for o in out)
    return OrbitDecomposition(m, p % m, tuple(out), complement)


def _heights(m: int, f, decomposition: OrbitDecomposition) -> list[int]:
    hs = []
    for o in decomposition.orbits:
        values = {f[t - 1] + f[m - t - 1] for t in o}
        if len(values) != 1:
            raise InconsistentSignature(f"f_t + f_(m-t) is not constant on orbit {o}")
        hs.append(values.pop())
    return hs


def _orbit_mu(f, m: int, orbit, h: int) -> NewtonPolygon:
    d = len(orbit)
    return NewtonPolygon((Fraction(sum(1 for t in orbit if f[t - 1] >= j), d), d) for j in range(1, h + 1))


def mu_ordinary(m: int, f, p: int) -> SymmetricNP:
    """Maximal polygon: orbit o contributes slopes #{t in o : f_t >= j}/#o, j = 1..h_o."""
    f = tuple(f)
    if len(f) != m - 1:
        raise InconsistentSignature(f"signature of length {len(f)} for m = {m}")
    dec = orbits(m, p)
    hs = _heights(m, f, dec)
    total = NewtonPolygon()
    for i, (o, h) in enumerate(zip(dec.orbits, hs)):
        piece = _orbit_mu(f, m, o, h)
        assert all(mult % len(o) == 0 for _, mult in piece.slopes)
        assert len(piece.slopes) <= h
        if dec.self_dual(i):
            assert piece.is_symmetric()
        total = total + piece
    return SymmetricNP.of(total)


def p_rank_bound(m: int, f, p: int) -> int:
    dec = orbits(m, p)
    return sum(len(o) * min(f[t - 1] for t in o) for o in dec.orbits)


def _orbit_polygons(length: int, height: int, d: int, symmetric: bool, ceiling: NewtonPolygon):
    """Lattice polygons (0,0)->(length,height), segment lengths divisible by d,
    on or above ``ceiling``."""
    limits = ceiling.heights()
    out = []

    def rec(x, y, last_slope, pairs):
        if x == length:
            if y == height:
                out.append(NewtonPolygon(pairs))
            return
        for seg in range(d, length - x + 1, d):
            for rise in range(0, seg + 1):
                slope = Fraction(rise, seg)
                if last_slope is not None and slope <= last_slope:
                    continue
                if y + rise > height:
                    break
                # convexity plus the end point force the remaining slopes to be larger
                rest = length - x - seg
                if rest == 0 and y + rise != height:
                    continue
                if rest and Fraction(height - y - rise, rest) <= slope:
                    continue
                if any(y + slope * (k - x) < limits[k] for k in range(x + 1, x + seg + 1)):
                    continue
                rec(x + seg, y + rise, slope, pairs + [(slope, seg)])

    rec(0, 0, None, [])
    if symmetric:
        out = [xi for xi in out if xi.is_symmetric()]
    return out


def _dual(xi: NewtonPolygon) -> NewtonPolygon:
    return NewtonPolygon((1 - s, m) for s, m in xi.slopes)


@dataclass(frozen=True)
class AdmissibleSet:
    polygons: tuple[SymmetricNP, ...]
    mu_ordinary: SymmetricNP
    basic: SymmetricNP


def admissible_set(m: int, f, p: int) -> AdmissibleSet:
    f = tuple(f)
    if 2 * sum(f) > ADMISSIBLE_HEIGHT_LIMIT:
        raise BudgetExceeded(f"admissible set enumeration limited to 2g <= {ADMISSIBLE_HEIGHT_LIMIT}")
    dec = orbits(m, p)
    hs = _heights(m, f, dec)
    choices = []
    done = set()
    for i, (o, h) in enumerate(zip(dec.orbits, hs)):
        if i in done or h == 0:
            continue
        j = dec.complement[i]
        done.update({i, j})
        d = len(o)
        ceiling = _orbit_mu(f, m, o, h)
        height = sum(f[t - 1] for t in o)
        polys = _orbit_polygons(d * h, height, d, i == j, ceiling)
        if i == j:
            choices.append(polys)
        else:
            choices.append([xi + _dual(xi) for xi in polys])
    combined = {}
    for combo in product(*choices):
        total = NewtonPolygon()
        for piece in combo:
            total = total + piece
        combined[total.slopes] = SymmetricNP.of(total)
    polygons = tuple(sorted(combined.values(), key=lambda xi: xi.slope_list()))
    minimal = [xi for xi in polygons if all(np_leq(xi, other) for other in polygons)]
    if len(minimal) != 1:  # pragma: no cover - the per-orbit straight lines always give one
        raise InconsistentSignature("admissible set has no unique minimum")
    return AdmissibleSet(polygons, mu_ordinary(m, f, p), minimal[0])


def cm_newton_polygon(m: int, a, p: int) -> SymmetricNP:
    """Polygon of y^m = x^a1 (x-1)^a2 (three branch points): the mu-ordinary one."""
    datum = MonodromyDatum(m, tuple(a))
    if datum.N != 3:
        raise InvalidDatum("a CM datum has exactly three branch points")
    return mu_ordinary(m, signature(datum), p)


def multiplicative_order(p: int, m: int) -> int:
    if gcd(p, m) != 1:
        raise NotCoprime(f"gcd({p}, {m}) != 1")
    if m == 1:
        return 1
    k, x = 1, p % m
    while x != 1:
        x = x * p % m
        k += 1
    return k


def ss_criterion_cm(m: int, p: int) -> bool:
    """order of p mod m is even and p^(order/2) = -1 mod m."""
    if m % 2 == 0:
        raise ValueError("m must be odd")
    f = multiplicative_order(p, m)
    return f % 2 == 0 and pow(p, f // 2, m) == m - 1
