"""Dense real univariate polynomial helpers, coefficients low to high.

Two GCD routes live here: an exact one over ``fractions.Fraction`` taken when
every coefficient is a small dyadic-style rational (floats convert exactly),
and a thresholded Euclidean fallback for general float input.  Multiplicity
detection goes through Yun's square-free decomposition on the exact route.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import GCD_TRUNC

_MAX_DEN = 1 << 24  # beyond this a float coefficient is treated as inexact


def trim(c, tol: float = 0.0) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=np.float64))
    scale = np.max(np.abs(c)) if c.size else 0.0
    cut = c.size
    while cut > 1 and abs(c[cut - 1]) <= tol * scale:
        cut -= 1
    return c[:cut].copy()


def degree(c) -> int:
    c = trim(c)
    if c.size == 1 and c[0] == 0.0:
        return -1
    return c.size - 1


def polyval(c, x):
    return npoly.polyval(x, np.asarray(c, dtype=np.float64))


def polyval_complex(c, z):
    return npoly.polyval(z, np.asarray(c, dtype=np.complex128))


def mul(a, b) -> np.ndarray:
    return np.convolve(np.asarray(a, float), np.asarray(b, float))


def derivative(c) -> np.ndarray:
    return npoly.polyder(np.asarray(c, dtype=np.float64))


def divmod_poly(a, b):
    q, r = npoly.polydiv(np.asarray(a, float), np.asarray(b, float))
    return np.atleast_1d(q), np.atleast_1d(r)


# ---------------------------------------------------------------------------
# exact route


def as_fractions(c) -> list[Fraction] | None:
    """Exact Fraction coefficients, or None when any denominator is large."""
    out = []
    for x in np.asarray(c, dtype=np.float64):
        f = Fraction(float(x))
        if f.denominator > _MAX_DEN:
            return None
        out.append(f)
    return out


def _ftrim(c: list[Fraction]) -> list[Fraction]:
    cut = len(c)
    while cut > 1 and c[cut - 1] == 0:
        cut -= 1
    return c[:cut]


def _fdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        factor = a[k + len(b) - 1] * inv
        q[k] = factor
        for i, bi in enumerate(b):
            a[k + i] -= factor * bi
    return _ftrim(q), _ftrim(a[: len(b) - 1] or [Fraction(0)])


def _fgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _ftrim(a), _ftrim(b)
    while len(b) > 1 or b[0] != 0:
        _, r = _fdivmod(a, b)
        a, b = b, r
    return [x / a[-1] for x in a]  # monic


def _fderiv(c: list[Fraction]) -> list[Fraction]:
    if len(c) == 1:
        return [Fraction(0)]
    return _ftrim([c[k] * k for k in range(1, len(c))])


def _fsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _ftrim(
        [
            (a[k] if k < len(a) else Fraction(0)) - (b[k] if k < len(b) else Fraction(0))
            for k in range(n)
        ]
    )


def square_free_decomposition(c):
    """Yun's algorithm over exact rationals.

    Returns [(factor_coeffs, multiplicity), ...] with float factors, or None
    when coefficients are not exactly representable small rationals.  The
    product of factor^multiplicity reproduces the monic part of the input.
    """
    fr = as_fractions(trim(c))
    if fr is None or len(fr) <= 1:
        return None
    fr = [x / fr[-1] for x in fr]
    d = _fderiv(fr)
    a = _fgcd(fr, d)
    if len(a) == 1:
        return [(np.array([float(x) for x in fr]), 1)]
    out = []
    b, _ = _fdivmod(fr, a)  # square-free part
    cpart, _ = _fdivmod(d, a)
    dpart = _fsub(cpart, _fderiv(b))
    m = 1
    while len(b) > 1:
        ai = _fgcd(b, dpart)
        if len(ai) > 1:
            out.append((np.array([float(x) for x in ai]), m))
        b, _ = _fdivmod(b, ai)
        cpart, _ = _fdivmod(dpart, ai)
        dpart = _fsub(cpart, _fderiv(b))
        m += 1
    return out


# ---------------------------------------------------------------------------
# approximate route


def gcd(a, b, trunc: float = GCD_TRUNC) -> np.ndarray:
    """Monic approximate GCD via Euclid with relative coefficient truncation.

    Uses the exact Fraction route when both inputs convert exactly.
    """
    a, b = trim(a), trim(b)
    fa, fb = as_fractions(a), as_fractions(b)
    if fa is not None and fb is not None:
        if degree(a) < 0:
            return b / (b[-1] if b[-1] else 1.0)
        if degree(b) < 0:
            return a / (a[-1] if a[-1] else 1.0)
        g = _fgcd(fa, fb)
        return np.array([float(x) for x in g])
    if degree(a) < degree(b):
        a, b = b, a
    while degree(b) >= 1:
        _, r = divmod_poly(a, b)
        r = np.atleast_1d(r)
        scale = np.max(np.abs(b))
        r = trim(np.where(np.abs(r) <= trunc * scale, 0.0, r))
        if degree(r) < 0:
            return b / b[-1]
        a, b = b, r / np.max(np.abs(r))
    return np.array([1.0])
