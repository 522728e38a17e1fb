"""Pure-numpy batch kernels (fallback backend).

Same call signatures as :mod:`hcpoly._kernels_numba`; the dense structure
table (dim, dim, dim) and the index/sign pair are both passed so either
implementation can pick the form it wants.
"""

import numpy as np


def mul_many(a, b, table, tab_index, tab_sign):
    """Row-wise products: out[s] = a[s] * b[s].  a, b: (N, dim)."""
    return np.einsum("ni,nj,ijk->nk", a, b, table, optimize=True)


def polyval_many(coeffs, ts, table, tab_index, tab_sign, left):
    """Evaluate one polynomial at many points.

    coeffs: (K, dim) low-to-high, ts: (N, dim).  Powers are built by repeated
    left-nested multiplication.
    """
    n = ts.shape[0]
    out = np.tile(coeffs[0], (n, 1))
    if coeffs.shape[0] == 1:
        return out
    power = ts.copy()
    for k in range(1, coeffs.shape[0]):
        if k > 1:
            power = np.einsum("ni,nj,ijk->nk", power, ts, table, optimize=True)
        ck = coeffs[k]
        if not ck.any():
            continue
        if left:
            out += np.einsum("i,nj,ijk->nk", ck, power, table, optimize=True)
        else:
            out += np.einsum("ni,j,ijk->nk", power, ck, table, optimize=True)
    return out


def jacobian_many(coeffs, ts, table, tab_index, tab_sign):
    """Jacobians of left polynomials at many points.

    coeffs: (N, K, dim) per-sample coefficients, ts: (N, dim).
    Column j of the result is sum_k a_k * (sum_{p+q=k-1} t^p * (e_j * t^q)).
    """
    n, k_count, dim = coeffs.shape
    if k_count < 2:
        return np.zeros((n, dim, dim))
    # Powers t^0 .. t^(K-2), each (N, dim), left-nested.
    pows = np.empty((k_count - 1, n, dim))
    pows[0] = 0.0
    pows[0, :, 0] = 1.0
    if k_count > 2:
        pows[1] = ts
    for p in range(2, k_count - 1):
        pows[p] = np.einsum("ni,nj,ijk->nk", pows[p - 1], ts, table, optimize=True)
    left_mats = np.einsum("pni,ijl->pnlj", pows, table, optimize=True)
    right_mats = np.einsum("pni,jil->pnlj", pows, table, optimize=True)
    coeff_mats = np.einsum("nki,ijl->nklj", coeffs, table, optimize=True)
    jac = np.zeros((n, dim, dim))
    for k in range(1, k_count):
        d = np.zeros((n, dim, dim))
        for p in range(k):
            d += np.matmul(left_mats[p], right_mats[k - 1 - p])
        jac += np.matmul(coeff_mats[:, k], d)
    return jac


def left_matrix_many(cs, table, tab_index, tab_sign):
    """Left-multiplication matrices for a batch of elements; cs: (N, dim)."""
    return np.einsum("ni,ijl->nlj", cs, table, optimize=True)


def det_many(mats):
    """Determinants of a batch of square matrices; mats: (N, d, d)."""
    return np.linalg.det(mats)


def durand_kerner(coeffs, z0, max_iter, tol):
    """Simultaneous root iteration for a complex polynomial.

    coeffs: (deg+1,) complex128 low-to-high with nonzero leading term;
    z0: (deg,) initial approximations.  Returns (roots, iterations, maxstep).
    """
    n = coeffs.shape[0] - 1
    lead = coeffs[-1]
    z = z0.astype(np.complex128).copy()
    maxstep = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        # Horner evaluation at all current points.
        pv = np.full(n, coeffs[-1])
        for c in coeffs[-2::-1]:
            pv = pv * z + c
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = lead * np.prod(diff, axis=1)
        step = pv / denom
        z -= step
        maxstep = float(np.max(np.abs(step)))
        if maxstep < tol:
            break
    return z, it, maxstep
