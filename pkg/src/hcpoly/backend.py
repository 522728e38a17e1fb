"""Backend selection for the batch kernels.

``HCPOLY_BACKEND`` picks the implementation:

* ``numba`` -- require the JIT kernels (ImportError if numba is missing),
* ``numpy`` -- force the pure-numpy fallback,
* ``auto``  -- numba when importable, numpy otherwise (default).

Both backends expose identical functions; ``benchmarks/bench_backends.py``
times them against each other.
"""

from __future__ import annotations

import os

import numpy as np

from .algebra import Algebra

_choice = os.environ.get("HCPOLY_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"HCPOLY_BACKEND={_choice!r} not understood; use 'numba', 'numpy', or 'auto'"
    )

if _choice == "numpy":
    from . import _kernels_numpy as _impl

    _name = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        _name = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import _kernels_numpy as _impl

        _name = "numpy"


def backend_name() -> str:
    return _name


def mul_many(algebra: Algebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise algebra products of two (N, dim) coordinate batches."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    return _impl.mul_many(a, b, algebra.table, algebra.tab_index, algebra.tab_sign)


def polyval_many(
    algebra: Algebra, coeffs: np.ndarray, ts: np.ndarray, left: bool = True
) -> np.ndarray:
    """Evaluate one (K, dim) coefficient stack at (N, dim) points."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    return _impl.polyval_many(
        coeffs, ts, algebra.table, algebra.tab_index, algebra.tab_sign, left
    )


def jacobian_many(algebra: Algebra, coeffs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Jacobians of per-sample left polynomials: coeffs (N, K, dim), ts (N, dim)."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    return _impl.jacobian_many(
        coeffs, ts, algebra.table, algebra.tab_index, algebra.tab_sign
    )


def left_matrix_many(algebra: Algebra, cs: np.ndarray) -> np.ndarray:
    cs = np.ascontiguousarray(cs, dtype=np.float64)
    return _impl.left_matrix_many(
        cs, algebra.table, algebra.tab_index, algebra.tab_sign
    )


def det_many(mats: np.ndarray) -> np.ndarray:
    return _impl.det_many(np.ascontiguousarray(mats, dtype=np.float64))


def durand_kerner(
    coeffs: np.ndarray, z0: np.ndarray, max_iter: int = 500, tol: float = 1e-14
):
    """Run the simultaneous iteration; returns (roots, iterations, last step)."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z0 = np.ascontiguousarray(z0, dtype=np.complex128)
    return _impl.durand_kerner(coeffs, z0, max_iter, tol)
