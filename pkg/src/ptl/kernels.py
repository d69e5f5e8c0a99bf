"""Backend dispatch for the hot field kernels.

The numba path is used unless ``PTL_BACKEND=numpy`` is set or numba cannot be
imported.  Both paths are exercised against each other in the test suite.
"""

import logging

from . import _kernels_numpy
from .config import backend_name

log = logging.getLogger(__name__)

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _kernels_numba = None

KERNEL_NAMES = (
    "build_exp",
    "eval_poly_all",
    "count_hyperelliptic",
    "count_superelliptic",
    "polymul_mod",
    "polyrem_mod",
)


def backend(name=None):
    """Module implementing the kernels for ``name`` (default: environment choice)."""
    name = name or backend_name()
    if name == "numba":
        if _kernels_numba is None:
            log.warning("numba unavailable, falling back to numpy kernels")
            return _kernels_numpy
        return _kernels_numba
    return _kernels_numpy


def available_backends():
    names = ["numpy"]
    if _kernels_numba is not None:
        names.insert(0, "numba")
    return names
