"""Curve models, their validity checks, genus formulas and point counts.

Three families are supported:

* ``HyperellipticModel``   y^2 = h(x), p odd, h separable
* ``SuperellipticModel``   y^m = prod (x - b_i)^{a_i}, gcd(m, a_i) = 1
* ``AdditiveCoverModel``   A(y) = h(x), A an additive polynomial

Point counts are for the smooth projective model over F_{q^s}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

import numpy as np

from . import _kernels_numpy as npk
from .arith import Field, FieldElement, Poly, embedding, field_make, frobenius, nullspace_mod_p, poly_gcd
from .config import enumeration_budget
from .errors import BudgetExceeded, InvalidModel
from .kernels import backend
from .tables import field_tables


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class HyperellipticModel:
    h: Poly
    kind = "hyp"

    @property
    def field(self) -> Field:
        return self.h.field


@dataclass(frozen=True)
class SuperellipticModel:
    """y^m = prod (x - b_i)^{a_i} with finite branch points b_i.

    When sum(a_i) is not divisible by m the point at infinity is a further
    branch point with exponent ``infinity_exponent``.
    """

    field: Field
    m: int
    branch: tuple[FieldElement, ...]
    exponents: tuple[int, ...]
    kind = "sup"

    @property
    def infinity_exponent(self) -> int:
        return -sum(self.exponents) % self.m

    @property
    def ramification(self) -> tuple[int, ...]:
        """Inertia exponents including infinity when it is branched."""
        a = tuple(self.exponents)
        return a + ((self.infinity_exponent,) if self.infinity_exponent else ())

    def polynomial(self) -> Poly:
        f = Poly.constant(self.field, 1)
        x = Poly.x(self.field)
        for b, a in zip(self.branch, self.exponents):
            f = f * (x - b) ** a
        return f


@dataclass(frozen=True)
class AdditiveCoverModel:
    """A(y) = h(x) with A = sum_j c_j y^{p^j}; ``A`` is stored as a polynomial in y."""

    A: Poly
    h: Poly
    kind = "add"

    @property
    def field(self) -> Field:
        return self.h.field

    @property
    def degree_A(self) -> int:
        return self.A.degree


CurveModel = Union[HyperellipticModel, SuperellipticModel, AdditiveCoverModel]


def _is_p_power(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def validate(model: CurveModel) -> list[Diagnostic]:
    """All violated invariants of ``model``; an empty list means valid."""
    out: list[Diagnostic] = []
    F = model.field
    if isinstance(model, HyperellipticModel):
        h = model.h
        if F.p == 2:
            out.append(Diagnostic("CharacteristicTwo", "hyperelliptic models need p odd"))
        if h.degree < 3:
            out.append(Diagnostic("DegreeTooSmall", f"deg h = {h.degree} gives genus < 1"))
        if h.degree >= 1 and poly_gcd(h, h.derivative()).degree > 0:
            out.append(Diagnostic("SeparabilityViolation", "gcd(h, h') != 1"))
    elif isinstance(model, SuperellipticModel):
        m, a, b = model.m, model.exponents, model.branch
        if m < 2:
            out.append(Diagnostic("DegreeTooSmall", "m must be at least 2"))
        if m % F.p == 0:
            out.append(Diagnostic("CharacteristicDividesDegree", f"p = {F.p} divides m = {m}"))
        if len(a) != len(b):
            out.append(Diagnostic("LengthMismatch", "exponents and branch points differ in length"))
        if any(not 1 <= ai < m for ai in a):
            out.append(Diagnostic("ExponentRange", "exponents must lie in [1, m-1]"))
        if any(x.field != F for x in b):
            out.append(Diagnostic("ForeignElement", "branch points must lie in the base field"))
        if len(set(b)) != len(b):
            out.append(Diagnostic("RepeatedBranchPoint", "branch points must be distinct"))
        if m >= 2 and any(gcd(m, ai) != 1 for ai in model.ramification):
            out.append(Diagnostic("GcdRestriction", "every inertia exponent must be coprime to m"))
        if len(model.ramification) < 3:
            out.append(Diagnostic("TooFewBranchPoints", "need at least 3 branch points"))
    elif isinstance(model, AdditiveCoverModel):
        A, h = model.A, model.h
        if A.field != F:
            out.append(Diagnostic("ForeignElement", "A and h must share a field"))
        support = [i for i, c in enumerate(A.coeffs) if c]
        if any(not _is_p_power(i, F.p) for i in support):
            out.append(Diagnostic("NotAdditive", "A may only contain monomials y^(p^j)"))
        if not A.coeff(1):
            out.append(Diagnostic("InseparableA", "A needs a nonzero linear term"))
        if h.degree < 2:
            out.append(Diagnostic("DegreeTooSmall", "deg h must be at least 2"))
        elif h.degree % F.p == 0:
            out.append(Diagnostic("DegreeDivisibleByP", f"p = {F.p} divides deg h = {h.degree}"))
        if A.degree > F.q**6:
            out.append(Diagnostic("BudgetViolation", "deg A exceeds q^6"))
    else:
        out.append(Diagnostic("UnknownModel", f"unsupported model {type(model).__name__}"))
    return out


def require_valid(model: CurveModel) -> None:
    problems = validate(model)
    if problems:
        raise InvalidModel("; ".join(str(d) for d in problems))


def genus(model: CurveModel) -> int:
    require_valid(model)
    if isinstance(model, HyperellipticModel):
        return (model.h.degree + 1) // 2 - 1
    if isinstance(model, SuperellipticModel):
        return cover_genus(model.m, model.ramification)
    return (model.degree_A - 1) * (model.h.degree - 1) // 2


def cover_genus(m: int, a) -> int:
    """Riemann-Hurwitz genus of a cyclic degree-m cover with inertia exponents a."""
    n = len(a)
    twice = (n - 2) * m - sum(gcd(ai, m) for ai in a)
    return 1 + twice // 2


def count_points(model: CurveModel, s: int = 1) -> int:
    """#C(F_{q^s}) for the smooth projective model."""
    require_valid(model)
    if s < 1:
        raise ValueError("s must be positive")
    F = model.field
    Q = F.q**s
    if Q > enumeration_budget():
        raise BudgetExceeded(f"counting over F_{{{F.q}^{s}}} exceeds the enumeration budget")
    big = field_make(F.p, F.k * s)
    emb = embedding(F, big)
    tabs = field_tables(big)
    kern = backend(tabs.backend_name)
    if isinstance(model, HyperellipticModel):
        h = model.h
        coeffs = np.array([emb(c).code for c in reversed(h.coeffs)], dtype=np.int64)
        affine = int(kern.count_hyperelliptic(coeffs, *tabs.kernel_args()))
        if h.degree % 2:
            infinite = 1
        else:
            infinite = 2 if emb(h.leading).is_square() else 0
        return affine + infinite
    if isinstance(model, SuperellipticModel):
        d = gcd(model.m, Q - 1)
        branch = np.array([emb(b).code for b in model.branch], dtype=np.int64)
        powers = np.array(model.exponents, dtype=np.int64)
        affine = int(kern.count_superelliptic(branch, powers, d, *tabs.kernel_args()))
        infinite = 1 if model.infinity_exponent else d
        return affine + infinite
    return _count_additive(model, big, emb, tabs) + 1


def _count_additive(model: AdditiveCoverModel, big: Field, emb, tabs) -> int:
    p, K = big.p, big.k
    # columns: images of the F_p-basis t^i under y -> A(y)
    mat = np.zeros((K, K), dtype=np.int64)
    A = [(i, emb(c)) for i, c in enumerate(model.A.coeffs) if c]
    for i in range(K):
        e = big([0] * i + [1])
        img = big.zero
        for power, c in A:
            j = 0
            while p**j < power:
                j += 1
            img = img + c * frobenius(e, j)
        mat[:, i] = img.coeffs
    annihilator = nullspace_mod_p(mat.T, p)
    kernel_size = len(nullspace_mod_p(mat, p))
    hv = tabs.eval_all([emb(c).code for c in reversed(model.h.coeffs)])
    if len(annihilator) == 0:
        hits = big.q
    else:
        digits = npk.to_digits(hv, p, K)
        hits = int(np.count_nonzero(np.all((digits @ annihilator.T) % p == 0, axis=1)))
    return p**kernel_size * hits


def point_counts(model: CurveModel, smax: int) -> list[int]:
    return [count_points(model, s) for s in range(1, smax + 1)]


def hermitian(q: int) -> AdditiveCoverModel:
    """y^q + y = x^(q+1) over F_q."""
    from .arith import is_prime

    p = next(r for r in range(2, q + 1) if q % r == 0)
    k = 0
    while p**k < q:
        k += 1
    if p**k != q or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    F = field_make(p, k)
    A = Poly(F, [0, 1] + [0] * (q - 2) + [1])
    h = Poly(F, [0] * (q + 1) + [1])
    return AdditiveCoverModel(A, h)
