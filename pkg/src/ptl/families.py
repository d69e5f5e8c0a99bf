"""Parameter scans and closed-form identities for families of curves."""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .arith import Field, FieldElement, Poly, _pgcd, _ppowmod, field_make, is_prime
from .cartier import cartier_matrix_hyperelliptic, elliptic_is_supersingular, p_rank
from .curves import HyperellipticModel, validate
from .errors import BadDigits, BudgetExceeded, ConsistencyError, NotPrime
from .kernels import backend

DEURING_PRIME_LIMIT = 2000
GCD_CHECK_PRIME_LIMIT = 500  # quadratic-time list arithmetic beyond this
CENSUS_PARAMETER_LIMIT = 10**7


def _check_prime(p: int, low: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < low:
        raise ValueError(f"p must be at least {low}")
    if p > DEURING_PRIME_LIMIT:
        raise BudgetExceeded(f"p = {p} exceeds {DEURING_PRIME_LIMIT}")


def _legendre_coefficient(lam: int, p: int) -> int:
    """[x^(p-1)] (x(x-1)(x-lam))^n mod p, n = (p-1)/2, for lam != 0 mod p.

    Writing the cubic as x*u(x) with u = (x-1)(x-lam), the wanted value is
    [x^n] u^n, obtained from the linear recurrence for powers of a polynomial
    with invertible constant term.
    """
    n = (p - 1) // 2
    u = [lam % p, (-1 - lam) % p, 1]
    inv_u0 = pow(u[0], p - 2, p)
    P = [pow(u[0], n, p)]
    for k in range(1, n + 1):
        acc = 0
        for j in (1, 2):
            if j <= k:
                acc += ((n + 1) * j - k) * u[j] * P[k - j]
        P.append(acc % p * inv_u0 * pow(k, p - 2, p) % p)
    return P[n]


def _interpolate(xs: list[int], ys: list[int], p: int) -> list[int]:
    """Lagrange interpolation over F_p; little-endian coefficients."""
    n = len(xs)
    full = [1]  # prod (x - x_j)
    for xj in xs:
        full = [((full[k - 1] if k else 0) - xj * (full[k] if k < len(full) else 0)) % p for k in range(len(full) + 1)]
    coeffs = [0] * n
    for xi, yi in zip(xs, ys):
        # full / (x - xi) by synthetic division
        basis = [0] * n
        carry = 0
        for k in range(n, 0, -1):
            carry = (full[k] + carry * xi) % p
            basis[k - 1] = carry
        denom = 1
        for xj in xs:
            if xj != xi:
                denom = denom * (xi - xj) % p
        scale = yi * pow(denom, p - 2, p) % p
        for k, b in enumerate(basis):
            coeffs[k] = (coeffs[k] + scale * b) % p
    return coeffs


@lru_cache(maxsize=32)
def deuring_polynomial(p: int) -> Poly:
    """D(lam) = [x^(p-1)] (x(x-1)(x-lam))^((p-1)/2) as a polynomial in lam over F_p."""
    _check_prime(p, 5)
    n = (p - 1) // 2
    xs = list(range(1, n + 3))
    ys = [_legendre_coefficient(x, p) for x in xs]
    coeffs = _interpolate(xs[: n + 1], ys[: n + 1], p)
    F = field_make(p)
    D = Poly(F, coeffs)
    if D(F(xs[-1])) != ys[-1]:
        raise ConsistencyError("Deuring interpolation is inconsistent at the extra sample")
    if D.degree != n:
        raise ConsistencyError(f"Deuring polynomial has degree {D.degree}, expected {n}")
    return D


def _monic(a: np.ndarray, p: int) -> np.ndarray:
    return a * pow(int(a[-1]), p - 2, p) % p


def _gcd(a: np.ndarray, b: np.ndarray, p: int, kern) -> np.ndarray:
    while len(b):
        a, b = b, kern.polyrem_mod(a, b, p)
    return _monic(a, p)


def _divide_exact(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = a.copy()
    db = len(b) - 1
    inv = pow(int(b[-1]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    for top in range(len(a) - 1, db - 1, -1):
        c = int(a[top]) * inv % p
        q[top - db] = c
        if c:
            a[top - db:top + 1] = (a[top - db:top + 1] - c * b) % p
    assert not a[:db].any(), "division left a remainder"
    return q


def _powmod(base: np.ndarray, e: int, m: np.ndarray, p: int, kern) -> np.ndarray:
    result = np.ones(1, dtype=np.int64)
    base = kern.polyrem_mod(base, m, p)
    while e:
        if e & 1:
            result = kern.polyrem_mod(kern.polymul_mod(result, base, p), m, p)
        base = kern.polyrem_mod(kern.polymul_mod(base, base, p), m, p)
        e >>= 1
    return result


def _split_quadratics(f: np.ndarray, p: int, kern, rng: random.Random) -> list[np.ndarray]:
    """Irreducible quadratic factors of a squarefree product of such (equal-degree splitting)."""
    if len(f) - 1 == 2:
        return [f]
    e = (p * p - 1) // 2
    while True:
        a = rng.randrange(p)
        h = _powmod(np.array([a, 1], dtype=np.int64), e, f, p, kern)
        h = np.concatenate([h, np.zeros(max(0, 1 - len(h)), dtype=np.int64)])
        h[0] = (h[0] - 1) % p
        h = h[: np.flatnonzero(h)[-1] + 1] if h.any() else h[:0]
        g = _gcd(f, h, p, kern) if len(h) else f
        if 0 < len(g) - 1 < len(f) - 1:
            rest = _divide_exact(f, g, p)
            return _split_quadratics(g, p, kern, rng) + _split_quadratics(rest, p, kern, rng)


def _roots_in_fp2(f: np.ndarray, p: int) -> list[FieldElement]:
    """Distinct roots in F_{p^2} of a squarefree f in F_p[x] that splits there."""
    kern = backend()
    F2 = field_make(p, 2)
    # linear factors: scan F_p
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in f[::-1]:
        vals = (vals * xs + int(c)) % p
    linear = [int(r) for r in np.flatnonzero(vals == 0)]
    rest = _monic(f, p)
    for r in linear:
        rest = _divide_exact(rest, np.array([-r % p, 1], dtype=np.int64), p)
    roots = [F2(r) for r in linear]
    if len(rest) > 1:
        if (len(rest) - 1) % 2:
            raise ConsistencyError("polynomial does not split over F_{p^2}")
        # w = t + a1/2 squares to the non-residue a1^2/4 - a0 of F_p
        a0, a1 = F2.modulus[0], F2.modulus[1]
        half = (p + 1) // 2
        w = F2.gen + a1 * half % p
        n0 = (a1 * a1 * half * half - a0) % p
        sqrt_p = {x * x % p: x for x in range(p)}
        for quad in _split_quadratics(rest, p, kern, random.Random(p)):
            c, b = int(quad[0]), int(quad[1])
            disc = (b * b - 4 * c) % p
            if disc in sqrt_p:
                raise ConsistencyError("quadratic factor is reducible")
            s = sqrt_p[disc * pow(n0, p - 2, p) % p] * w
            for sign in (1, -1):
                roots.append((F2(-b) + sign * s) * half)
    return sorted(roots, key=lambda r: r.code)


@lru_cache(maxsize=32)
def legendre_ss_roots(p: int) -> tuple[FieldElement, ...]:
    """Supersingular Legendre parameters, all in F_{p^2}."""
    D = deuring_polynomial(p)
    ints = np.array([c.code for c in D.coeffs], dtype=np.int64)
    kern = backend()
    if len(_gcd(ints, kern.polyrem_mod(np.array([c.code for c in D.derivative().coeffs], dtype=np.int64), ints, p), p, kern)) > 1:
        raise ConsistencyError("Deuring polynomial is not squarefree")
    roots = _roots_in_fp2(ints, p)
    return tuple(r for r in roots if r != 0 and r != 1)


def legendre_ss_count(p: int) -> int:
    roots = legendre_ss_roots(p)
    if p > GCD_CHECK_PRIME_LIMIT:
        return len(roots)
    # independent count: deg gcd(D, x^(p^2) - x), D squarefree
    ints = [c.code for c in deuring_polynomial(p).coeffs]
    xq = _ppowmod([0, 1], p * p, ints, p)
    xq = xq + [0] * max(0, 2 - len(xq))
    xq[1] = (xq[1] - 1) % p
    by_gcd = len(_pgcd(ints, xq, p)) - 1
    if by_gcd != len(roots):
        raise ConsistencyError("root enumeration and gcd count disagree")
    return len(roots)


def j_invariant(lam: FieldElement) -> FieldElement:
    """2^8 (lam^2 - lam + 1)^3 / (lam^2 (lam - 1)^2)."""
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


def ss_j_invariants(p: int) -> list[FieldElement]:
    js = {j_invariant(lam) for lam in legendre_ss_roots(p)}
    return sorted(js, key=lambda x: x.code)


def expected_ss_class_count(p: int) -> int:
    if p in (2, 3):
        return 1
    eps = {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]
    return p // 12 + eps


def ss_j_count(p: int) -> int:
    count = len(ss_j_invariants(p))
    if count != expected_ss_class_count(p):
        raise ConsistencyError(f"{count} supersingular j-invariants, expected {expected_ss_class_count(p)}")
    return count


def automorphism_order(j: int, p: int) -> int:
    """#Aut(E) for j(E) = j in characteristic p (standard table)."""
    if p == 2:
        return 24
    if p == 3:
        return 12
    if j % p == 0:
        return 6
    if j % p == 1728 % p:
        return 4
    return 2


def mass_formula_check(p: int) -> tuple[Fraction, Fraction]:
    """(sum over supersingular classes of 1/#Aut, (p-1)/24)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > DEURING_PRIME_LIMIT:
        raise BudgetExceeded(f"p = {p} exceeds {DEURING_PRIME_LIMIT}")
    expected = Fraction(p - 1, 24)
    if p in (2, 3):
        # a single supersingular class (j = 0 = 1728)
        mass = Fraction(1, automorphism_order(0, p))
    else:
        mass = Fraction(0)
        for j in ss_j_invariants(p):
            if not j.in_prime_field():
                mass += Fraction(1, 2)
            else:
                mass += Fraction(1, automorphism_order(j.coeffs[0], p))
    if mass != expected:
        raise ConsistencyError(f"mass {mass} != {expected} at p = {p}")
    return mass, expected


# ---------------------------------------------------------------------------
# non-ordinary census


@dataclass(frozen=True)
class HyperellipticFamily:
    name: str
    build: Callable[[FieldElement], Poly]
    description: str = ""


def _legendre(t: FieldElement) -> Poly:
    x = Poly.x(t.field)
    return x * (x - 1) * (x - t)


def _quintic(t: FieldElement) -> Poly:
    x = Poly.x(t.field)
    return x**5 + x * t + 1


def _igusa(t: FieldElement) -> Poly:
    x = Poly.x(t.field)
    return (x**3 - 1) * (x**3 - t)


FAMILIES = {
    "legendre": HyperellipticFamily("legendre", _legendre, "y^2 = x(x-1)(x-t)"),
    "quintic": HyperellipticFamily("quintic", _quintic, "y^2 = x^5 + t x + 1"),
    "igusa": HyperellipticFamily("igusa", _igusa, "y^2 = (x^3-1)(x^3-t)"),
}


@dataclass
class ScanReport:
    family: str
    field: str
    q: int
    total: int
    excluded: int
    ordinary: int
    non_ordinary: int
    by_p_rank: dict[int, int] = field(default_factory=dict)
    genus: int = 0
    heuristic_scale: int = 1
    elapsed_ms: float = 0.0

    def __post_init__(self):
        assert self.ordinary + self.non_ordinary == self.total
        assert sum(self.by_p_rank.values()) == self.total

    def ratio(self) -> Fraction:
        return Fraction(self.non_ordinary, self.heuristic_scale)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "field": self.field,
            "q": self.q,
            "genus": self.genus,
            "total": self.total,
            "excluded": self.excluded,
            "ordinary": self.ordinary,
            "non_ordinary": self.non_ordinary,
            "by_p_rank": {str(k): v for k, v in sorted(self.by_p_rank.items())},
            "heuristic_scale": str(self.heuristic_scale),
            "ratio": str(self.ratio()),
        }


def _classify(family: HyperellipticFamily, params: list[FieldElement]) -> tuple[Counter, int, int]:
    ranks: Counter = Counter()
    excluded = 0
    genus = 0
    for t in params:
        model = HyperellipticModel(family.build(t))
        if validate(model):
            excluded += 1
            continue
        M = cartier_matrix_hyperelliptic(model)
        genus = M.size
        ranks[p_rank(M)] += 1
    return ranks, excluded, genus


def nonordinary_census(family: HyperellipticFamily, F: Field, threads: int = 1) -> ScanReport:
    """Classify every parameter t in F by the p-rank of its Cartier-Manin matrix."""
    if F.q > CENSUS_PARAMETER_LIMIT:
        raise BudgetExceeded(f"{F.q} parameters exceed {CENSUS_PARAMETER_LIMIT}")
    start = time.perf_counter()
    params = list(F.elements())
    shards = max(1, threads)
    chunks = [params[i::shards] for i in range(shards)]
    if shards > 1:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            parts = list(pool.map(lambda c: _classify(family, c), chunks))
    else:
        parts = [_classify(family, chunks[0])]
    ranks: Counter = Counter()
    excluded = 0
    genus = 0
    for r, e, g in parts:
        ranks.update(r)
        excluded += e
        genus = max(genus, g)
    total = sum(ranks.values())
    ordinary = ranks.get(genus, 0)
    scale = F.q ** max(0, 3 * genus - 4) if genus else 1
    return ScanReport(
        family=family.name,
        field=repr(F),
        q=F.q,
        total=total,
        excluded=excluded,
        ordinary=ordinary,
        non_ordinary=total - ordinary,
        by_p_rank=dict(ranks),
        genus=genus,
        heuristic_scale=scale,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


# ---------------------------------------------------------------------------
# genus identity for fiber products of Artin-Schreier curves


@dataclass(frozen=True)
class CkpDecomposition:
    p: int
    delta: int
    runs: tuple[tuple[int, int], ...]  # (s_i, r_i)

    def __post_init__(self):
        total = sum(self.p**s * sum(self.p**k for k in range(r + 1)) for s, r in self.runs)
        if total != self.delta:
            raise ConsistencyError("runs do not reproduce delta")
        for (s0, r0), (s1, _) in zip(self.runs, self.runs[1:]):
            if s1 < s0 + r0 + 2:
                raise BadDigits(f"runs at {s0} and {s1} are too close")


def ckp_decompose(p: int, delta: int) -> CkpDecomposition:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if delta < 1:
        raise BadDigits("delta must be positive")
    digits = []
    n = delta
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    if any(d > 1 for d in digits):
        raise BadDigits(f"{delta} has a base-{p} digit above 1")
    runs = []
    i = 0
    while i < len(digits):
        if digits[i] == 1:
            j = i
            while j + 1 < len(digits) and digits[j + 1] == 1:
                j += 1
            runs.append((i, j - i))
            i = j + 1
        else:
            i += 1
    return CkpDecomposition(p, delta, tuple(runs))


def ckp_genus_identity(p: int, delta: int) -> tuple[CkpDecomposition, int]:
    """Evaluate the fiber-product genus sum and check it equals delta*p*(p-1)/2."""
    dec = ckp_decompose(p, delta)
    total = Fraction(0)
    before = 0  # sum of d_j for j < i
    last_u = None
    for s, r in dec.runs:
        d = r + 1
        u = (s + 1) - before
        if last_u is not None and u < last_u + 1:
            raise ConsistencyError("exponents u_i must increase")
        last_u = u
        total += Fraction(p**d - 1, p - 1) * p**before * p**u * Fraction(p - 1, 2)
        before += d
    expected = Fraction(delta * p * (p - 1), 2)
    if total != expected:
        raise ConsistencyError(f"genus sum {total} != {expected}")
    return dec, int(total)


def elliptic_supersingular_primes(h_builder: Callable[[Field], Poly], primes) -> list[int]:
    """Primes p for which the cubic h_builder(F_p) is supersingular."""
    return [p for p in primes if elliptic_is_supersingular(h_builder(field_make(p)))]
