"""Cartier-Manin matrices of hyperelliptic curves, p-rank and a-number.

``SemilinearMatrix`` records which convention its entries follow.  The
modified matrix M has m_ij = [x^(p*i - j)] h^((p-1)/2); the unmodified one
is M^(p), every entry raised to the p-th power.  The p-rank is the rank of

    U^(p^(g-1)) ... U^(p) U,        U the unmodified matrix,

with the twists accumulating on the left factor.  This is the ordering
that agrees with the slope-0 multiplicity of the zeta function; the other
ordering can give a different rank over non-prime fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .arith import FieldElement, Poly, frobenius, matmul, poly_gcd, poly_pow, rank
from .curves import AdditiveCoverModel, HyperellipticModel, genus, require_valid
from .errors import InvalidModel

Convention = Literal["modified", "unmodified"]


@dataclass(frozen=True)
class SemilinearMatrix:
    rows: tuple[tuple[FieldElement, ...], ...]
    convention: Convention

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def field(self):
        return self.rows[0][0].field

    def twist(self, e: int) -> SemilinearMatrix:
        """Entrywise x -> x^(p^e)."""
        return SemilinearMatrix(tuple(tuple(frobenius(x, e) for x in r) for r in self.rows), self.convention)

    def unmodified(self) -> SemilinearMatrix:
        if self.convention == "unmodified":
            return self
        return SemilinearMatrix(self.twist(1).rows, "unmodified")

    def as_ints(self) -> list[list[int]]:
        """Entries as integer codes (base-p digits of the coefficient vector)."""
        return [[x.code for x in r] for r in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(repr(x) for x in r) + "]" for r in self.rows) + "]"


def cartier_matrix_hyperelliptic(model: HyperellipticModel) -> SemilinearMatrix:
    """Modified Cartier-Manin matrix w.r.t. the basis x^(j-1) dx / y, j = 1..g."""
    require_valid(model)
    g = genus(model)
    p = model.field.p
    # only coefficients up to x^(pg - 1) are ever read
    power = poly_pow(model.h, (p - 1) // 2, dmax=p * g - 1)
    rows = tuple(tuple(power.coeff(p * i - j) for j in range(1, g + 1)) for i in range(1, g + 1))
    return SemilinearMatrix(rows, "modified")


def a_number(M: SemilinearMatrix) -> int:
    """Corank of the Cartier operator (the same for either convention)."""
    return M.size - rank(M.rows)


def p_rank(M: SemilinearMatrix) -> int:
    """Stable rank: rank of U^(p^(g-1)) ... U^(p) U, U the unmodified matrix."""
    U = M.unmodified()
    g = U.size
    prod = [list(r) for r in U.rows]
    for t in range(1, g):
        prod = matmul([list(r) for r in U.twist(t).rows], prod)
    return rank(prod)


def p_rank_other_order(M: SemilinearMatrix) -> int:
    """Rank of U U^(p) ... U^(p^(g-1)); kept only to exhibit the ordering pitfall."""
    U = M.unmodified()
    g = U.size
    prod = [list(r) for r in U.rows]
    for t in range(1, g):
        prod = matmul(prod, [list(r) for r in U.twist(t).rows])
    return rank(prod)


def elliptic_is_supersingular(h: Poly, p: int | None = None) -> bool:
    """[x^(p-1)] h^((p-1)/2) == 0 for a separable cubic h."""
    F = h.field
    if p is not None and p != F.p:
        raise InvalidModel(f"h is defined over characteristic {F.p}, not {p}")
    p = F.p
    if p == 2:
        raise InvalidModel("the coefficient criterion needs p odd")
    if h.degree != 3:
        raise InvalidModel(f"expected a cubic, got degree {h.degree}")
    if poly_gcd(h, h.derivative()).degree > 0:
        raise InvalidModel("h is not separable")
    return not poly_pow(h, (p - 1) // 2, dmax=p - 1).coeff(p - 1)


def p_rank_additive_cover(model: AdditiveCoverModel) -> int:
    """Deuring-Shafarevich with a single branch point at infinity: (Q-1)(B-1) = 0."""
    require_valid(model)
    branch_points = 1
    return (model.degree_A - 1) * (branch_points - 1)
