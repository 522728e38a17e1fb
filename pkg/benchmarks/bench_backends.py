#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallbacks.

Both implementations are imported directly, so the HCPOLY_BACKEND flag does
not matter here.  The numba timings exclude the first (compilation) call.

    python3 benchmarks/bench_backends.py --samples 20000 --repeat 5
"""

import argparse
import time

import numpy as np

from hcpoly import _kernels_numpy as knp
from hcpoly.algebra import OCTONIONS, QUATERNIONS

try:
    from hcpoly import _kernels_numba as knb
except ImportError:
    knb = None


def best_of(repeat, func, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    n = args.samples
    rows = []
    for algebra in (QUATERNIONS, OCTONIONS):
        tables = (algebra.table, algebra.tab_index, algebra.tab_sign)
        a = rng.normal(size=(n, algebra.dim))
        b = rng.normal(size=(n, algebra.dim))
        coeffs1 = rng.normal(size=(7, algebra.dim))
        coeffsN = rng.normal(size=(n, 7, algebra.dim))
        ts = rng.normal(size=(n, algebra.dim))
        mats = rng.normal(size=(n, algebra.dim, algebra.dim))
        dk_coeffs = rng.normal(size=13).astype(np.complex128)
        dk_init = (rng.normal(size=12) + 1j * rng.normal(size=12)).astype(np.complex128)

        cases = [
            (f"mul_many[{algebra.name}]", (a, b, *tables), "mul_many"),
            (f"polyval_many[{algebra.name}]", (coeffs1, ts, *tables, True), "polyval_many"),
            (f"jacobian_many[{algebra.name}]", (coeffsN, ts, *tables), "jacobian_many"),
            (f"left_matrix_many[{algebra.name}]", (a, *tables), "left_matrix_many"),
            (f"det_many[{algebra.name}]", (mats,), "det_many"),
        ]
        if algebra is QUATERNIONS:
            cases.append(
                ("durand_kerner", (dk_coeffs, dk_init, 500, 1e-14), "durand_kerner")
            )
        for label, call_args, attr in cases:
            t_np = best_of(args.repeat, getattr(knp, attr), *call_args)
            if knb is not None:
                getattr(knb, attr)(*call_args)  # compile outside the timer
                t_nb = best_of(args.repeat, getattr(knb, attr), *call_args)
            else:
                t_nb = float("nan")
            rows.append((label, t_np, t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for label, t_np, t_nb in rows:
        ratio = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{label:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms  {ratio:>7.1f}x")
    if knb is None:
        print("numba unavailable; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
