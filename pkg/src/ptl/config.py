"""Runtime knobs read from the environment.

``PTL_BACKEND``  ``numba`` (default when importable) or ``numpy``.
``PTL_BUDGET``   integer overriding the field-enumeration budget, i.e. the
                 largest field order that point counting and root counting
                 are allowed to enumerate.
"""

import os

FIELD_ENUMERATION_BUDGET = 2**24
FIELD_MAKE_BUDGET = 2**40


def enumeration_budget() -> int:
    raw = os.environ.get("PTL_BUDGET")
    if raw is None or raw.strip() == "":
        return FIELD_ENUMERATION_BUDGET
    return int(raw)


def backend_name() -> str:
    name = os.environ.get("PTL_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"PTL_BACKEND must be 'numba' or 'numpy', got {name!r}")
    return name
