"""Exact arithmetic in F_p, single extensions F_{p^k} and polynomials over them.

Extension fields are always one simple extension F_p[t]/(modulus); there are
no towers.  Elements are immutable and hashable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import FIELD_MAKE_BUDGET, enumeration_budget
from .errors import BudgetExceeded, ConsistencyError, NotPrime, ZeroPolynomial

PRIME_LIMIT = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over F_p as little-endian int lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv % p
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
    return a


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return _trim(result)


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: f has no irreducible factor of degree d <= deg f / 2."""
    f = _trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    xp = [0, 1]
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# fields


class Field:
    """F_p (``modulus is None``) or F_p[t]/(modulus) with a monic irreducible modulus."""

    __slots__ = ("p", "k", "modulus", "q")

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not (2 <= p < PRIME_LIMIT) or not is_prime(p):
            raise NotPrime(f"{p} is not a prime below 2^31")
        if k < 1:
            raise ValueError("extension degree must be positive")
        if k == 1:
            modulus = None
        else:
            if modulus is None:
                raise ValueError("an extension field needs a modulus")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not is_irreducible_mod_p(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"F{self.p}"
        mod = format_int_poly(self.modulus, "t")
        return f"F{self.p}^{self.k}[{mod}]"

    @property
    def order(self) -> int:
        return self.q

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if value.field.k == 1 and value.field.p == self.p:
                return self(value.coeffs[0])
            raise ValueError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients for this field")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.k - len(coeffs)))

    def from_code(self, code: int) -> FieldElement:
        coeffs = []
        for _ in range(self.k):
            code, c = divmod(code, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    @property
    def gen(self) -> FieldElement:
        """The class of t in F_p[t]/(modulus)."""
        if self.k == 1:
            raise ValueError("a prime field has no generator t")
        return self([0, 1])

    def elements(self) -> Iterator[FieldElement]:
        for code in range(self.q):
            yield self.from_code(code)

    def mul_matrix(self, x: FieldElement) -> np.ndarray:
        """F_p-matrix of y -> x*y on coefficient vectors (columns = images of t^j)."""
        mat = np.zeros((self.k, self.k), dtype=np.int64)
        for j in range(self.k):
            basis = self([0] * j + [1])
            mat[:, j] = (x * basis).coeffs
        return mat

    def _reduce(self, coeffs: list[int]) -> tuple[int, ...]:
        if self.k == 1:
            return (coeffs[0] % self.p if coeffs else 0,)
        out = _pmod(coeffs, self.modulus, self.p) if len(coeffs) > self.k else coeffs
        out = list(out[: self.k])
        return tuple(out) + (0,) * (self.k - len(out))


def field_make(p: int, k: int = 1) -> Field:
    """F_{p^k} with the lexicographically first monic irreducible modulus.

    Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are scanned with the tuple
    (c_{k-1}, ..., c_0) read as a base-p number, in increasing order.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if p**k > FIELD_MAKE_BUDGET:
        raise BudgetExceeded(f"p^k = {p}^{k} exceeds 2^40")
    return _field_make(p, k)


@lru_cache(maxsize=None)
def _field_make(p: int, k: int) -> Field:
    if k == 1:
        return Field(p)
    for code in range(p**k):
        low = []
        for _ in range(k):
            code, c = divmod(code, p)
            low.append(c)
        candidate = low + [1]
        if is_irreducible_mod_p(candidate, p):
            return Field(p, k, candidate)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
        return self.field(other)

    @property
    def code(self) -> int:
        c = 0
        for x in reversed(self.coeffs):
            c = c * self.field.p + x
        return c

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        if F.k == 1:
            return FieldElement(F, (self.coeffs[0] * other.coeffs[0] % F.p,))
        prod = [0] * (2 * F.k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return FieldElement(F, F._reduce([c % F.p for c in prod]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.field.k == 1:
            p = self.field.p
            return FieldElement(self.field, (pow(self.coeffs[0], p - 2, p),))
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        return format_int_poly(self.coeffs, "t")

    def is_square(self) -> bool:
        if not self:
            return True
        if self.field.p == 2:
            return True
        return self ** ((self.field.q - 1) // 2) == 1

    def in_prime_field(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])


def frobenius(x: FieldElement, e: int = 1) -> FieldElement:
    """x^(p^e) by repeated p-th powering (e is reduced modulo the degree)."""
    F = x.field
    if F.k == 1:
        return x
    for _ in range(e % F.k):
        x = x**F.p
    return x


# ---------------------------------------------------------------------------
# embeddings between fields of the same characteristic


class Embedding:
    """The map F_p[t]/(f) -> target sending t to a fixed root of f."""

    def __init__(self, source: Field, target: Field, root: FieldElement | None):
        self.source = source
        self.target = target
        self.root = root
        if root is not None:
            self._powers = [root**i for i in range(source.k)]

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.source:
            raise ValueError(f"{x!r} is not in {self.source!r}")
        if self.root is None:
            return self.target(x.coeffs[0])
        acc = self.target.zero
        for c, power in zip(x.coeffs, self._powers):
            if c:
                acc = acc + power * c
        return acc


@lru_cache(maxsize=64)
def embedding(source: Field, target: Field) -> Embedding:
    """Embed ``source`` into ``target`` via the first root (in code order) of its modulus."""
    if source.p != target.p or target.k % source.k:
        raise ValueError(f"{source!r} does not embed in {target!r}")
    if source == target:
        return Embedding(source, target, target.gen if target.k > 1 else None)
    if source.k == 1:
        return Embedding(source, target, None)
    if target.q > enumeration_budget():
        raise BudgetExceeded(f"root search over {target.q} elements")
    from .tables import field_tables

    tabs = field_tables(target)
    vals = tabs.eval_all([c for c in reversed(source.modulus)])
    roots = np.flatnonzero(vals == 0)
    if len(roots) == 0:  # pragma: no cover - guaranteed by finite field theory
        raise ConsistencyError(f"modulus of {source!r} has no root in {target!r}")
    return Embedding(source, target, target.from_code(int(roots[0])))


def lift(x: FieldElement, target: Field) -> FieldElement:
    return embedding(x.field, target)(x)


# ---------------------------------------------------------------------------
# matrices over a field


def rank(rows: Sequence[Sequence[FieldElement]]) -> int:
    """Rank by Gaussian elimination."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inverse()
        for i in range(r + 1, nrows):
            if mat[i][c]:
                factor = mat[i][c] * inv
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == nrows:
            break
    return r


def matmul(a, b):
    n, inner, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(inner)), a[i][0].field.zero) for j in range(m)] for i in range(n)]


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : mat @ v = 0 mod p}."""
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        for i in range(nrows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for n, f in enumerate(free):
        basis[n, f] = 1
        for i, c in enumerate(pivots):
            basis[n, c] = -a[i, f] % p
    return basis


# ---------------------------------------------------------------------------
# univariate polynomials


class Poly:
    """Dense univariate polynomial, coefficients little-endian, no trailing zeros.

    The zero polynomial has ``degree == -1``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> Poly:
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> Poly:
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return _poly_mul(self, other, None)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [self.field.zero] * max(0, len(rem) - other.degree)
        inv = other.leading.inverse()
        while len(rem) - 1 >= other.degree and rem:
            shift = len(rem) - 1 - other.degree
            c = rem[-1] * inv
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.field, quot), Poly(self.field, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, x):
        x = self.field(x) if not isinstance(x, FieldElement) else x
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + (c if c.field == x.field else lift(c, x.field))
        return acc

    def derivative(self) -> Poly:
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> Poly:
        inv = self.leading.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def map(self, target: Field) -> Poly:
        if target == self.field:
            return self
        emb = embedding(self.field, target)
        return Poly(target, [emb(c) for c in self.coeffs])

    def __repr__(self):
        if self.field.k == 1:
            return format_int_poly([c.coeffs[0] for c in self.coeffs], "x")
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c:
                mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"({c!r})" + ("*" + mon if mon else ""))
        return " + ".join(terms) or "0"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _poly_mul(a: Poly, b: Poly, dmax: int | None) -> Poly:
    F = a.field
    if a.is_zero() or b.is_zero():
        return Poly(F)
    if F.k == 1:
        from .kernels import backend

        av = np.array([c.coeffs[0] for c in a.coeffs], dtype=np.int64)
        bv = np.array([c.coeffs[0] for c in b.coeffs], dtype=np.int64)
        out = backend().polymul_mod(av, bv, F.p, -1 if dmax is None else dmax)
        return Poly(F, out.tolist())
    n = len(a.coeffs) + len(b.coeffs) - 1
    if dmax is not None:
        n = min(n, dmax + 1)
    out = [F.zero] * n
    for i, x in enumerate(a.coeffs[:n]):
        if x:
            for j, y in enumerate(b.coeffs[: n - i]):
                out[i + j] = out[i + j] + x * y
    return Poly(F, out)


def poly_pow(h: Poly, e: int, dmax: int | None = None) -> Poly:
    """h^e by binary exponentiation, optionally truncated above degree ``dmax``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.constant(h.field, 1)
    base = h if dmax is None else Poly(h.field, h.coeffs[: dmax + 1])
    while e:
        if e & 1:
            result = _poly_mul(result, base, dmax)
        e >>= 1
        if e:
            base = _poly_mul(base, base, dmax)
    return result


def _x_pow_mod(e: int, f: Poly) -> Poly:
    result = Poly.constant(f.field, 1) % f
    base = Poly.x(f.field) % f
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return result


def poly_root_count(f: Poly, field: Field | None = None) -> int:
    """Number of distinct roots of f in ``field`` (default: f's own field)."""
    if f.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    field = field or f.field
    if field.q > enumeration_budget():
        raise BudgetExceeded(f"root count over a field of order {field.q}")
    f = f.map(field)
    from .tables import field_tables

    vals = field_tables(field).eval_all([c.code for c in reversed(f.coeffs)])
    count = int(np.count_nonzero(vals == 0))
    if f.degree <= 64:
        xq = _x_pow_mod(field.q, f) - Poly.x(field)
        by_gcd = poly_gcd(f, xq).degree
        if by_gcd != count:
            raise ConsistencyError(f"root count {count} disagrees with gcd degree {by_gcd}")
    return count


def format_int_poly(coeffs: Sequence[int], var: str) -> str:
    terms = []
    for i in reversed(range(len(coeffs))):
        c = int(coeffs[i])
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mon = var if i == 1 else f"{var}^{i}"
            terms.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(terms) or "0"


def all_tuples(field: Field, n: int) -> Iterator[tuple[FieldElement, ...]]:
    return itertools.product(list(field.elements()), repeat=n)
