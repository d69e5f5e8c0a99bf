"""Newton-polygon poset and Ekedahl-Oort combinatorics.

Order convention: ``xi1 <= xi2`` when both share endpoints and xi1 lies on
or above xi2 as a graph, so the ordinary polygon is the maximum and the
supersingular polygon the minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal

from .errors import BudgetExceeded, GenusMismatch
from .polygon import NewtonPolygon

Comparison = Literal["equal", "below", "above", "incomparable"]

EO_GENUS_LIMIT = 24


class SymmetricNP(NewtonPolygon):
    """A Newton polygon of a g-dimensional abelian variety, not attached to a curve."""

    def __init__(self, pairs=()):
        super().__init__(pairs)
        if not self.is_valid_abelian():
            raise ValueError(f"not a symmetric Newton polygon: {list(self.slopes)}")

    @classmethod
    def of(cls, np_: NewtonPolygon) -> SymmetricNP:
        return cls(np_.slopes)


def np_compare(xi1: NewtonPolygon, xi2: NewtonPolygon) -> Comparison:
    """``below`` means xi1 <= xi2, i.e. xi1 is on or above xi2 pointwise."""
    if xi1.length != xi2.length:
        raise GenusMismatch(f"genus {xi1.genus} vs {xi2.genus}")
    h1, h2 = xi1.heights(), xi2.heights()
    if h1 == h2:
        return "equal"
    if all(a >= b for a, b in zip(h1, h2)):
        return "below"
    if all(a <= b for a, b in zip(h1, h2)):
        return "above"
    return "incomparable"


def np_leq(xi1: NewtonPolygon, xi2: NewtonPolygon) -> bool:
    return np_compare(xi1, xi2) in ("equal", "below")


def sdim(xi: NewtonPolygon) -> int:
    """#{(x, y) in Z^2 : 0 <= y < x <= g, y >= xi(x)}."""
    g = xi.genus
    total = 0
    for x in range(1, g + 1):
        floor_height = xi.height(x)
        lowest = -(-floor_height.numerator // floor_height.denominator)
        total += max(0, x - max(lowest, 0))
    return total


def ss_locus_dim(g: int) -> int:
    if g < 1:
        raise ValueError("g must be positive")
    value = g * g // 4
    assert value == sdim(NewtonPolygon.supersingular(g))
    return value


def enumerate_symmetric_nps(g: int) -> list[SymmetricNP]:
    """Every symmetric Newton polygon of height 2g (ordered by slope list)."""
    pieces = []  # (slope below 1/2 or 1/2, length consumed)
    for d in range(1, g + 1):
        for c in range(0, d):
            if gcd(c, d) == 1 and Fraction(c, d) < Fraction(1, 2):
                pieces.append((Fraction(c, d), 2 * d))
    pieces.append((Fraction(1, 2), 2))
    out = []

    def rec(idx, remaining, chosen):
        if remaining == 0:
            pairs = []
            for lam, n in chosen:
                if lam == Fraction(1, 2):
                    pairs.append((lam, 2 * n))
                else:
                    pairs += [(lam, lam.denominator * n), (1 - lam, lam.denominator * n)]
            out.append(SymmetricNP(pairs))
            return
        if idx == len(pieces):
            return
        lam, size = pieces[idx]
        for n in range(remaining // size, -1, -1):
            rec(idx + 1, remaining - n * size, chosen + ([(lam, n)] if n else []))

    rec(0, 2 * g, [])
    out.sort(key=lambda xi: xi.slope_list())
    return out


def unlikely_audit(g: int, xi: NewtonPolygon) -> dict:
    if xi.genus != g:
        raise GenusMismatch(f"polygon has genus {xi.genus}, expected {g}")
    dim_ag = g * (g + 1) // 2
    dim_mg = 3 * g - 3 if g >= 2 else 1
    codim = dim_ag - sdim(xi)
    return {
        "g": g,
        "polygon": xi.label(),
        "dim_A_g": dim_ag,
        "dim_M_g": dim_mg,
        "sdim": sdim(xi),
        "codim": codim,
        "unlikely": codim > dim_mg,
    }


def np_add_ordinary(xi: NewtonPolygon, e: int) -> NewtonPolygon:
    if e < 0:
        raise ValueError("e must be non-negative")
    out = xi + NewtonPolygon.ordinary(e) if e else xi
    return SymmetricNP.of(out) if isinstance(xi, SymmetricNP) else out


# ---------------------------------------------------------------------------
# Ekedahl-Oort types


@dataclass(frozen=True)
class EOType:
    nu: tuple[int, ...]

    def __post_init__(self):
        nu = self.nu
        if nu and nu[0] not in (0, 1):
            raise ValueError("nu_1 must be 0 or 1")
        if any(not (a <= b <= a + 1) for a, b in zip(nu, nu[1:])):
            raise ValueError(f"invalid Ekedahl-Oort sequence {list(nu)}")

    @property
    def g(self) -> int:
        return len(self.nu)

    def __str__(self):
        return "[" + ",".join(map(str, self.nu)) + "]"


@dataclass(frozen=True)
class YoungType:
    mu: tuple[int, ...]

    def __post_init__(self):
        if any(a <= b for a, b in zip(self.mu, self.mu[1:])) or any(m <= 0 for m in self.mu):
            raise ValueError(f"Young type must be strictly decreasing and positive: {self.mu}")

    def __str__(self):
        return "{" + ",".join(map(str, self.mu)) + "}" if self.mu else "{}"


def eo_enumerate(g: int) -> list[EOType]:
    """All 2^g Ekedahl-Oort types of length g in lexicographic order."""
    if g < 1:
        raise ValueError("g must be positive")
    if g > EO_GENUS_LIMIT:
        raise BudgetExceeded(f"2^{g} Ekedahl-Oort types")
    out = []
    for bits in range(2**g):
        nu = []
        prev = 0
        for i in range(g):
            prev += (bits >> (g - 1 - i)) & 1
            nu.append(prev)
        out.append(EOType(tuple(nu)))
    return out


def young_type(nu: EOType) -> YoungType:
    """mu_j = #{i : i - nu_i >= j}."""
    w = [i - v for i, v in enumerate(nu.nu, start=1)]
    mu = []
    j = 1
    while True:
        c = sum(1 for x in w if x >= j)
        if c == 0:
            break
        mu.append(c)
        j += 1
    return YoungType(tuple(mu))


def eo_from_young(mu: YoungType, g: int) -> EOType:
    if mu.mu and mu.mu[0] > g:
        raise ValueError("mu_1 exceeds g")
    # w_i = i - nu_i is nondecreasing, so it is determined by its counts mu_j
    w = _conjugate(mu.mu, g)
    return EOType(tuple(i - x for i, x in enumerate(w, start=1)))


def _conjugate(mu: tuple[int, ...], g: int) -> list[int]:
    """Multiset {w_i} (length g) whose counts #{w_i >= j} are mu_j."""
    w = [0] * g
    for j, m in enumerate(mu, start=1):
        # the m largest entries are >= j
        for i in range(g - m, g):
            w[i] = j
    return w


@dataclass(frozen=True)
class EOInvariants:
    p_rank: int
    a_number: int
    young: YoungType
    dim: int
    codim: int


def eo_invariants(nu: EOType) -> EOInvariants:
    g = nu.g
    f = max((i for i, v in enumerate(nu.nu, start=1) if v == i), default=0)
    a = g - nu.nu[-1]
    mu = young_type(nu)
    assert f == g - (mu.mu[0] if mu.mu else 0)
    if mu.mu:
        assert a == len(mu.mu)
    dim = sum(nu.nu)
    return EOInvariants(f, a, mu, dim, g * (g + 1) // 2 - dim)


def eo_add_ordinary(nu: EOType, e: int) -> EOType:
    if e < 0:
        raise ValueError("e must be non-negative")
    return EOType(tuple(range(1, e + 1)) + tuple(e + v for v in nu.nu))


# the p-torsion tables for g = 2, 3: (name, cod, f, a, nu, mu)
EO_GOLDEN = {
    2: [
        ("L^2", 0, 2, 0, (1, 2), ()),
        ("L+I_{1,1}", 1, 1, 1, (1, 1), (1,)),
        ("I_{2,1}", 2, 0, 1, (0, 1), (2,)),
        ("(I_{1,1})^2", 3, 0, 2, (0, 0), (2, 1)),
    ],
    3: [
        ("L^3", 0, 3, 0, (1, 2, 3), ()),
        ("L^2+I_{1,1}", 1, 2, 1, (1, 2, 2), (1,)),
        ("L+I_{2,1}", 2, 1, 1, (1, 1, 2), (2,)),
        ("L+(I_{1,1})^2", 3, 1, 2, (1, 1, 1), (2, 1)),
        ("I_{3,1}", 3, 0, 1, (0, 1, 2), (3,)),
        ("I_{3,2}", 4, 0, 2, (0, 1, 1), (3, 1)),
        ("I_{1,1}+I_{2,1}", 5, 0, 2, (0, 0, 1), (3, 2)),
        ("(I_{1,1})^3", 6, 0, 3, (0, 0, 0), (3, 2, 1)),
    ],
}


def eo_table(g: int) -> list[dict]:
    """One row per E-O type, from the ordinary type down to the superspecial one."""
    names = {row[4]: row[0] for row in EO_GOLDEN.get(g, [])}
    rows = []
    for nu in reversed(eo_enumerate(g)):
        inv = eo_invariants(nu)
        rows.append(
            {
                "name": names.get(nu.nu, ""),
                "cod": inv.codim,
                "f": inv.p_rank,
                "a": inv.a_number,
                "nu": list(nu.nu),
                "mu": list(inv.young.mu),
            }
        )
    return rows
