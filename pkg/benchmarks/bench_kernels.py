"""Compare the numba and numpy field kernels on whole-field enumerations.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each row times one kernel call over every element of the field, after a
warm-up call (so numba compilation is excluded), and checks that both
backends return the same answer.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from ptl import _kernels_numba, _kernels_numpy
from ptl.arith import field_make
from ptl.tables import field_tables

CASES = [
    ("eval_poly_all", (3, 10), 9),
    ("eval_poly_all", (2, 16), 13),
    ("count_hyperelliptic", (3, 10), 7),
    ("count_hyperelliptic", (5, 7), 9),
    ("count_hyperelliptic", (7, 7), 7),
    ("count_superelliptic", (7, 6), 5),
    ("count_superelliptic", (13, 5), 4),
]


def _call(kern, name, rng_seed, F, size):
    args = field_tables(F).kernel_args()
    rng = np.random.default_rng(rng_seed)
    if name == "count_superelliptic":
        branch = np.unique(rng.integers(0, F.q, size))
        powers = np.ones(len(branch), dtype=np.int64)
        return lambda: kern.count_superelliptic(branch, powers, 5, *args)
    coeffs = rng.integers(0, F.q, size)
    coeffs[-1] = 1
    fn = getattr(kern, name)
    return lambda: fn(coeffs, *args)


def _best(fn, repeat: int) -> tuple[float, object]:
    out = fn()  # warm-up and result
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(repeat: int) -> list[dict]:
    rows = []
    for name, (p, k), size in CASES:
        F = field_make(p, k)
        t_nb, r_nb = _best(_call(_kernels_numba, name, p * k, F, size), repeat)
        t_np, r_np = _best(_call(_kernels_numpy, name, p * k, F, size), repeat)
        same = bool(np.array_equal(np.asarray(r_nb), np.asarray(r_np)))
        rows.append(
            {
                "kernel": name,
                "field": repr(F),
                "q": F.q,
                "numba_ms": round(t_nb * 1000, 2),
                "numpy_ms": round(t_np * 1000, 2),
                "speedup": round(t_np / t_nb, 1) if t_nb else None,
                "agree": same,
            }
        )
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        head = f"{'kernel':<22}{'field':<28}{'q':>10}{'numba ms':>11}{'numpy ms':>11}{'speedup':>9}  agree"
        print(head)
        for r in rows:
            print(f"{r['kernel']:<22}{r['field']:<28}{r['q']:>10}{r['numba_ms']:>11}{r['numpy_ms']:>11}{r['speedup']:>9}  {r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
