"""Numba-compiled batch kernels (default backend).

Mirrors :mod:`hcpoly._kernels_numpy` signature-for-signature.  The hot loops
use the index/sign form of the structure table: e_i e_j = tab_sign[i, j] *
e_{tab_index[i, j]}.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _mul_into(a, b, tab_index, tab_sign, out):
    d = a.shape[0]
    for k in range(d):
        out[k] = 0.0
    for i in range(d):
        ai = a[i]
        if ai == 0.0:
            continue
        for j in range(d):
            bj = b[j]
            if bj == 0.0:
                continue
            out[tab_index[i, j]] += tab_sign[i, j] * ai * bj


@njit(cache=True)
def mul_many(a, b, table, tab_index, tab_sign):
    n, d = a.shape
    out = np.zeros((n, d))
    for s in range(n):
        _mul_into(a[s], b[s], tab_index, tab_sign, out[s])
    return out


@njit(cache=True)
def polyval_many(coeffs, ts, table, tab_index, tab_sign, left):
    kc, d = coeffs.shape
    n = ts.shape[0]
    out = np.empty((n, d))
    power = np.empty(d)
    nxt = np.empty(d)
    term = np.empty(d)
    for s in range(n):
        for c in range(d):
            out[s, c] = coeffs[0, c]
        if kc == 1:
            continue
        for c in range(d):
            power[c] = ts[s, c]
        for k in range(1, kc):
            if k > 1:
                _mul_into(power, ts[s], tab_index, tab_sign, nxt)
                for c in range(d):
                    power[c] = nxt[c]
            if left:
                _mul_into(coeffs[k], power, tab_index, tab_sign, term)
            else:
                _mul_into(power, coeffs[k], tab_index, tab_sign, term)
            for c in range(d):
                out[s, c] += term[c]
    return out


@njit(cache=True)
def _left_matrix_into(c, tab_index, tab_sign, out):
    d = c.shape[0]
    for k in range(d):
        for j in range(d):
            out[k, j] = 0.0
    for i in range(d):
        ci = c[i]
        if ci == 0.0:
            continue
        for j in range(d):
            out[tab_index[i, j], j] += tab_sign[i, j] * ci


@njit(cache=True)
def _right_matrix_into(c, tab_index, tab_sign, out):
    d = c.shape[0]
    for k in range(d):
        for j in range(d):
            out[k, j] = 0.0
    for i in range(d):
        ci = c[i]
        if ci == 0.0:
            continue
        for j in range(d):
            out[tab_index[j, i], j] += tab_sign[j, i] * ci


@njit(cache=True)
def jacobian_many(coeffs, ts, table, tab_index, tab_sign):
    n, kc, d = coeffs.shape
    jac = np.zeros((n, d, d))
    if kc < 2:
        return jac
    pows = np.empty((kc - 1, d))
    lmats = np.empty((kc - 1, d, d))
    rmats = np.empty((kc - 1, d, d))
    cmat = np.empty((d, d))
    dmat = np.empty((d, d))
    for s in range(n):
        pows[0, :] = 0.0
        pows[0, 0] = 1.0
        for p in range(1, kc - 1):
            if p == 1:
                pows[1] = ts[s]
            else:
                _mul_into(pows[p - 1], ts[s], tab_index, tab_sign, pows[p])
        for p in range(kc - 1):
            _left_matrix_into(pows[p], tab_index, tab_sign, lmats[p])
            _right_matrix_into(pows[p], tab_index, tab_sign, rmats[p])
        for k in range(1, kc):
            ck = coeffs[s, k]
            nz = False
            for c in range(d):
                if ck[c] != 0.0:
                    nz = True
                    break
            if not nz:
                continue
            dmat[:, :] = 0.0
            for p in range(k):
                dmat += np.dot(lmats[p], rmats[k - 1 - p])
            _left_matrix_into(ck, tab_index, tab_sign, cmat)
            jac[s] += np.dot(cmat, dmat)
    return jac


@njit(cache=True)
def left_matrix_many(cs, table, tab_index, tab_sign):
    n, d = cs.shape
    out = np.empty((n, d, d))
    for s in range(n):
        _left_matrix_into(cs[s], tab_index, tab_sign, out[s])
    return out


@njit(cache=True)
def det_many(mats):
    n = mats.shape[0]
    out = np.empty(n)
    for s in range(n):
        out[s] = np.linalg.det(np.ascontiguousarray(mats[s]))
    return out


@njit(cache=True)
def durand_kerner(coeffs, z0, max_iter, tol):
    n = coeffs.shape[0] - 1
    lead = coeffs[-1]
    z = z0.astype(np.complex128).copy()
    maxstep = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        maxstep = 0.0
        for i in range(n):
            pv = coeffs[-1]
            for c in range(n - 1, -1, -1):
                pv = pv * z[i] + coeffs[c]
            denom = lead
            for j in range(n):
                if j != i:
                    denom *= z[i] - z[j]
            step = pv / denom
            z[i] -= step
            astep = abs(step)
            if astep > maxstep:
                maxstep = astep
        if maxstep < tol:
            break
    return z, it, maxstep
