"""Discrete exp/log tables for integer-encoded fields, feeding the kernels."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import Field, FieldElement, prime_factors
from .config import enumeration_budget
from .errors import BudgetExceeded
from . import _kernels_numpy
from .kernels import backend


def primitive_element(field: Field) -> FieldElement:
    """Smallest-code generator of the multiplicative group."""
    n = field.q - 1
    if n == 1:
        return field.one
    factors = prime_factors(n)
    for code in range(2, field.q):
        x = field.from_code(code)
        if all(x ** (n // r) != 1 for r in factors):
            return x
    raise AssertionError("multiplicative group is cyclic")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldTables:
    field: Field
    generator: FieldElement
    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray
    backend_name: str

    @property
    def q(self) -> int:
        return self.field.q

    def kernel_args(self):
        F = self.field
        return self.exp, self.log, self.zech, F.p, F.k, F.q

    def eval_all(self, coeff_codes_high_first) -> np.ndarray:
        coeffs = np.asarray(coeff_codes_high_first, dtype=np.int64)
        if len(coeffs) == 0:
            return np.zeros(self.q, dtype=np.int64)
        return backend(self.backend_name).eval_poly_all(coeffs, *self.kernel_args())


def field_tables(field: Field, backend_name: str | None = None) -> FieldTables:
    from .config import backend_name as env_backend

    return _field_tables(field, backend_name or env_backend())


@lru_cache(maxsize=8)
def _field_tables(field: Field, name: str) -> FieldTables:
    if field.q > enumeration_budget():
        raise BudgetExceeded(f"tables for a field of order {field.q}")
    g = primitive_element(field)
    kern = backend(name)
    exp = np.asarray(kern.build_exp(field.mul_matrix(g), field.p, field.k, field.q), dtype=np.int64)
    log = np.full(field.q, -1, dtype=np.int64)
    log[exp] = np.arange(field.q - 1, dtype=np.int64)
    zech = _kernels_numpy.zech_table(exp, log, field.p, field.k)
    return FieldTables(field, g, exp, log, zech, name)
