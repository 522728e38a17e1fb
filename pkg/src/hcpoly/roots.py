"""Root enumeration and classification for one-sided polynomials.

The route goes through the real norm polynomial conj(f)*f: its complex root
classes (alpha, beta) are exactly the similarity classes containing roots of
f.  Division by the characteristic quadratic q(t) = t^2 - 2*alpha*t +
(alpha^2 + beta^2) then decides each class: a vanishing remainder means the
whole similarity sphere consists of roots (a spherical class), otherwise the
linear remainder r1*t + r0 pins the unique isolated root c = -r1^{-1} r0 in
the class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import backend, realpoly
from .algebra import Element, embed_complex, nth_root
from .config import CLUSTER_RADIUS, ROOT_TOL, SPHERICAL_TOL
from .jacobian import exact_jacobian
from .polynomial import Polynomial

__all__ = [
    "ClassRoot",
    "RootRecord",
    "RootFindingError",
    "InconsistencyError",
    "DescentError",
    "RefineResult",
    "real_poly_complex_roots",
    "find_roots",
    "classify_and_multiplicity",
    "is_simple_root",
    "factor_linear_chain",
    "reconvolve",
    "descent_step",
    "newton_refine",
]


class RootFindingError(RuntimeError):
    """Root iteration failed; carries the best iterates found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class InconsistencyError(RuntimeError):
    """Characteristic division produced r1 = 0 with r0 != 0 (tolerance clash)."""


class DescentError(RuntimeError):
    """No strict decrease found at machine precision."""


class ClassRoot(NamedTuple):
    """One conjugate root class of a real polynomial."""

    alpha: float
    beta: float  # >= 0; 0 marks a real root
    multiplicity: int


@dataclass
class RootRecord:
    value: Element
    kind: str  # 'isolated' | 'spherical'
    multiplicity: int
    residual: float

    def to_json(self) -> dict:
        return {
            "value": self.value.coords.tolist(),
            "kind": self.kind,
            "multiplicity": self.multiplicity,
            "residual": self.residual,
        }


@dataclass
class RefineResult:
    value: Element
    residual: float
    iterations: int
    converged: bool
    singular: bool


# ---------------------------------------------------------------------------
# real polynomial root classes


def _initial_ring(coeffs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = coeffs.shape[0] - 1
    radius = 1.0 + np.max(np.abs(coeffs[:-1])) / abs(coeffs[-1])
    angles = (
        2.0 * np.pi * (np.arange(n) + 0.371) / n
        + rng.uniform(0.0, 2.0 * np.pi)
        + rng.normal(0.0, 0.05, n)
    )
    radii = 0.5 * radius * (1.0 + 0.1 * rng.normal(0.0, 1.0, n))
    return radii * np.exp(1j * angles)


def _dk_roots(coeffs: np.ndarray, max_iter: int, rng: np.random.Generator) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    scale = np.max(np.abs(coeffs))
    roots, _, _ = backend.durand_kerner(
        coeffs / scale, _initial_ring(coeffs, rng), max_iter, 1e-14
    )
    return roots


def _newton_polish(p, dp, z: complex, m: int, steps: int = 6) -> complex:
    """Multiplicity-aware Newton z -= m p/p'; quadratic at an m-fold root."""
    best = z
    best_val = abs(realpoly.polyval_complex(p, z))
    for _ in range(steps):
        d = realpoly.polyval_complex(dp, z)
        if d == 0:
            break
        z = z - m * realpoly.polyval_complex(p, z) / d
        val = abs(realpoly.polyval_complex(p, z))
        if val <= best_val:
            best, best_val = z, val
    return best


def _fold_half_plane(points, radius: float) -> list[ClassRoot]:
    """Cluster (alpha, |beta|) pairs; conjugate pairs count once.

    points: list of (complex z, weight).  Weights in a cluster with beta
    above the real band sum over both half-planes, so the class multiplicity
    is half the total.
    """
    keys = [(z.real, abs(z.imag)) for z, _ in points]
    n = len(keys)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            sep = np.hypot(keys[i][0] - keys[j][0], keys[i][1] - keys[j][1])
            scale = 1.0 + max(abs(keys[i][0]), keys[i][1])
            if sep <= radius * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for idx in groups.values():
        total = sum(points[i][1] for i in idx)
        alpha = sum(keys[i][0] * points[i][1] for i in idx) / total
        beta = sum(keys[i][1] * points[i][1] for i in idx) / total
        if beta <= radius * (1.0 + abs(alpha)):
            out.append(ClassRoot(alpha, 0.0, total))
        else:
            out.append(ClassRoot(alpha, beta, max(1, round(total / 2))))
    out.sort(key=lambda c: (c.alpha, c.beta))
    return out


def real_poly_complex_roots(
    p,
    max_iter: int = 500,
    cluster_radius: float = CLUSTER_RADIUS,
    rng: np.random.Generator | None = None,
) -> list[ClassRoot]:
    """All conjugate root classes of a real polynomial, with multiplicities.

    Multiple roots are resolved exactly through a square-free decomposition
    when the coefficients are exactly-representable small rationals; otherwise
    a GCD deflation or plain clustering of the simultaneous iteration is used.
    """
    p = realpoly.trim(np.asarray(p, dtype=np.float64))
    n = realpoly.degree(p)
    if n < 1:
        raise ValueError("need degree >= 1")
    if rng is None:
        rng = np.random.default_rng(0x5EED)
    dp = realpoly.derivative(p)
    points: list[tuple[complex, int]] = []

    decomposition = realpoly.square_free_decomposition(p)
    if decomposition is not None:
        for factor, mult in decomposition:
            if realpoly.degree(factor) < 1:
                continue
            dfac = realpoly.derivative(factor)
            for z in _dk_roots(factor, max_iter, rng):
                points.append((_newton_polish(factor, dfac, complex(z), 1), mult))
    else:
        g = realpoly.gcd(p, dp)
        if realpoly.degree(g) >= 1:
            squarefree, _ = realpoly.divmod_poly(p, g)
            zs = [
                _newton_polish(squarefree, realpoly.derivative(squarefree), complex(z), 1)
                for z in _dk_roots(squarefree, max_iter, rng)
            ]
            mults = [_multiplicity_by_chain(p, z) for z in zs]
            if sum(mults) == n:
                points = list(zip(zs, mults))
        if not points:
            zs = _dk_roots(p, max_iter, rng)
            points = [(complex(z), 1) for z in zs]

    classes = _fold_half_plane(points, cluster_radius)
    # Polish class representatives on p itself with multiplicity-aware Newton.
    polished = []
    for cls in classes:
        m = cls.multiplicity * (2 if cls.beta > 0 else 1)
        z = _newton_polish(p, dp, complex(cls.alpha, cls.beta), m)
        polished.append(ClassRoot(z.real, abs(z.imag) if cls.beta > 0 else 0.0, cls.multiplicity))
    scale = np.max(np.abs(p))
    for cls in polished:
        z = complex(cls.alpha, cls.beta)
        bound = ROOT_TOL * scale * (1.0 + abs(z)) ** n
        if abs(realpoly.polyval_complex(p, z)) > bound:
            raise RootFindingError(
                f"root iteration residual {abs(realpoly.polyval_complex(p, z)):.3e} "
                f"exceeds {bound:.3e}",
                best=polished,
            )
    polished.sort(key=lambda c: (c.alpha, c.beta))
    return polished


def _multiplicity_by_chain(p, z: complex, tol: float = 1e-5) -> int:
    """Count how many successive derivatives of p vanish at z."""
    m = 0
    cur = np.asarray(p, dtype=np.float64)
    while realpoly.degree(cur) >= 0:
        scale = np.max(np.abs(cur)) * (1.0 + abs(z)) ** max(realpoly.degree(cur), 0)
        if abs(realpoly.polyval_complex(cur, z)) > tol * scale:
            break
        m += 1
        cur = realpoly.derivative(cur)
    return max(m, 1)


# ---------------------------------------------------------------------------
# roots of one-sided polynomials


def _characteristic_power(f: Polynomial, alpha: float, beta: float, tol: float) -> int:
    """Largest s with q_{alpha,beta}^s dividing f within tolerance."""
    s = 0
    work = f
    while work.degree >= 2:
        h, r1, r0 = work.divide_characteristic(alpha, beta)
        if max(r1.norm(), r0.norm()) > tol:
            break
        s += 1
        work = h
    return s


def find_roots(f: Polynomial, tol: float = ROOT_TOL) -> list[RootRecord]:
    """Every root class of f: isolated roots and spherical representatives.

    Spherical records carry the class point alpha + beta*e1.  A primitive f
    yields at most deg(f) records, all isolated.
    """
    if f.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    if f.side == "right":
        # conj maps right roots to left roots of the conjugated-coefficient twin
        twin = f.mirror_conjugate()
        records = find_roots(twin, tol)
        out = []
        for rec in records:
            if rec.kind == "spherical":
                out.append(rec)
            else:
                value = rec.value.conjugate()
                out.append(
                    RootRecord(value, rec.kind, rec.multiplicity, f(value).norm())
                )
        return out

    scale = 1.0 + f.coeff_scale()
    if f.degree == 1:
        a1 = f.coefficient(1)
        a0 = f.coefficient(0)
        c = -(a1.inverse() * a0)
        return [RootRecord(c, "isolated", 1, f(c).norm())]
    classes = real_poly_complex_roots(f.norm_poly())
    spherical: list[RootRecord] = []
    isolated: list[tuple[Element, float, int]] = []
    for cls in classes:
        if cls.beta > 0.0:
            h, r1, r0 = f.divide_characteristic(cls.alpha, cls.beta)
            rem = max(r1.norm(), r0.norm())
            if rem <= SPHERICAL_TOL * scale:
                value = embed_complex(f.algebra, cls.alpha, cls.beta)
                s = _characteristic_power(f, cls.alpha, cls.beta, SPHERICAL_TOL * scale)
                spherical.append(
                    RootRecord(value, "spherical", 2 * s, f(value).norm())
                )
                continue
            if r1.norm() <= SPHERICAL_TOL * scale:
                raise InconsistencyError(
                    f"class ({cls.alpha:.6g}, {cls.beta:.6g}): r1 ~ 0 but "
                    f"|r0| = {r0.norm():.3e}"
                )
            candidate = -(r1.inverse() * r0)
            refined = newton_refine(f, candidate)
            isolated.append((refined.value, refined.residual, cls.multiplicity))
        else:
            candidate = Element.real(f.algebra, cls.alpha)
            refined = newton_refine(f, candidate)
            # real similarity classes are points; the norm polynomial counts
            # them twice, so halve
            isolated.append(
                (refined.value, refined.residual, max(1, cls.multiplicity // 2))
            )

    merged: list[list] = []
    for value, residual, mu in isolated:
        for slot in merged:
            if (slot[0] - value).norm() <= CLUSTER_RADIUS * (1.0 + value.norm()):
                slot[2] += mu
                if residual < slot[1]:
                    slot[0], slot[1] = value, residual
                break
        else:
            merged.append([value, residual, mu])

    records = spherical + [
        RootRecord(v, "isolated", mu, r) for v, r, mu in merged
    ]
    bad = [rec for rec in records if rec.residual > tol * scale]
    if bad:
        raise RootFindingError(
            f"{len(bad)} root record(s) above residual tolerance "
            f"{tol * scale:.3e}; worst {max(r.residual for r in bad):.3e}",
            best=records,
        )
    records.sort(
        key=lambda rec: (
            rec.value.re,
            rec.value.imag_norm(),
            tuple(rec.value.coords),
        )
    )
    return records


def classify_and_multiplicity(f: Polynomial, c, tol: float = ROOT_TOL) -> RootRecord:
    """Kind and multiplicity of a known root c of f."""
    if isinstance(c, Element):
        value = c
    else:
        value = Element(f.algebra, f.algebra.coerce(c))
    scale = 1.0 + f.coeff_scale()
    residual = f(value).norm()
    if residual > tol * scale:
        raise ValueError(f"|f(c)| = {residual:.3e} exceeds {tol * scale:.3e}; not a root")
    alpha = value.re
    beta = value.imag_norm()
    if beta > 0.0 and f.degree >= 2:
        s = _characteristic_power(f, alpha, beta, SPHERICAL_TOL * scale)
        if s > 0:
            rep = embed_complex(f.algebra, alpha, beta)
            return RootRecord(rep, "spherical", 2 * s, f(rep).norm())
    classes = real_poly_complex_roots(f.norm_poly())
    best = min(classes, key=lambda k: abs(k.alpha - alpha) + abs(k.beta - beta))
    mu = best.multiplicity
    if beta <= CLUSTER_RADIUS * (1.0 + abs(alpha)):
        mu = max(1, mu // 2)
    return RootRecord(value, "isolated", mu, residual)


def is_simple_root(f: Polynomial, c: Element, tol: float = SPHERICAL_TOL) -> bool:
    """Quotient test for simplicity of a root c of f.

    With f = g*(t - c), the root is multiple exactly when g vanishes
    somewhere on the similarity class of c.  The quotient has such a zero
    iff the class point alpha + i*beta annihilates the norm polynomial of g,
    so the test is deterministic (no sphere sampling, whose witnesses can be
    single points).  Equivalent to det J(f)(c) > 0 at the root.
    """
    g, _ = f.divide_linear(c)
    if g.degree < 1:
        return True  # constant nonzero quotient: degree-1 f
    npg = g.norm_poly()
    z = complex(c.re, c.imag_norm())
    scale = float(np.max(np.abs(npg))) * (1.0 + abs(z)) ** realpoly.degree(npg)
    return abs(realpoly.polyval_complex(npg, z)) > tol * scale


# ---------------------------------------------------------------------------
# factorization


def factor_linear_chain(f: Polynomial) -> tuple[Element, list[Element]]:
    """Linear factors c_1..c_n with f = leading * (t-c_n)...(t-c_1).

    c_1 is always a root of f; the later c_j generally are not.
    """
    if f.degree < 1:
        raise ValueError("factorization needs degree >= 1")
    scale = 1.0 + f.coeff_scale()
    work = f
    factors: list[Element] = []
    while work.degree >= 1:
        if work.degree == 1:
            a1 = work.coefficient(1)
            a0 = work.coefficient(0)
            if work.side == "left":
                c = -(a1.inverse() * a0)
            else:
                c = -(a0 * a1.inverse())
        else:
            c = find_roots(work)[0].value
        work, rem = work.divide_linear(c)
        if rem.norm() > 1e-6 * scale:
            raise RootFindingError(
                f"division remainder {rem.norm():.3e} after factoring out a root"
            )
        factors.append(c)
    return f.leading, factors


def reconvolve(
    algebra, leading, factors, side: str = "left"
) -> Polynomial:
    """Rebuild leading * (t-c_n)...(t-c_1) from a factor chain [c_1..c_n]."""
    return Polynomial.from_linear_factors(algebra, factors, leading, side)


# ---------------------------------------------------------------------------
# local moves


def newton_refine(f: Polynomial, c0, max_iter: int = 50) -> RefineResult:
    """Damped Newton on the real coordinate map of f; never increases |f|.

    Falls back to a least-squares step when the Jacobian is singular (the
    flag reports it); at simple roots convergence is quadratic.
    """
    if isinstance(c0, Element):
        x = c0.coords.copy()
    else:
        x = f.algebra.coerce(c0).copy()
    scale = 1.0 + f.coeff_scale()
    target = 1e-13 * scale
    value = Element(f.algebra, x)
    residual = f(value).norm()
    singular = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        if residual <= target:
            iterations -= 1
            break
        jac = exact_jacobian(f, value)
        fx = f(value).coords
        try:
            step = np.linalg.solve(jac, -fx)
            if not np.all(np.isfinite(step)):
                raise np.linalg.LinAlgError
        except np.linalg.LinAlgError:
            singular = True
            step = np.linalg.lstsq(jac, -fx, rcond=None)[0]
        improved = False
        lam = 1.0
        for _ in range(16):
            trial = Element(f.algebra, x + lam * step)
            r_trial = f(trial).norm()
            if r_trial < residual:
                x = trial.coords
                value = trial
                residual = r_trial
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    return RefineResult(
        value=value,
        residual=residual,
        iterations=iterations,
        converged=residual <= ROOT_TOL * scale,
        singular=singular,
    )


def descent_step(f: Polynomial, t0: float, radius: float) -> Element:
    """A point t with |t - t0| < radius and |f(t)| < |f(t0)|, t0 real.

    Shifts to q(t) = f(t0)^{-1} f(t + t0), takes the lowest-order nonzero
    coefficient b_k, moves along the direction zeta with zeta^k =
    -|b_k|/b_k (where the leading correction is exactly -rho^k |b_k| f(t0)),
    and halves the step until the decrease is strict.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if f.degree < 1:
        raise ValueError("descent needs a nonconstant polynomial")
    t0 = float(t0)
    f0 = f(Element.real(f.algebra, t0))
    n0 = f0.norm()
    if n0 == 0.0:
        raise ValueError("f(t0) = 0; nothing to descend")
    shifted = f.shifted(t0)
    f0_inv = f0.inverse()
    bs = []
    for k in range(shifted.coeffs.shape[0]):
        ak = shifted.coefficient(k)
        bs.append(f0_inv * ak if f.side == "left" else ak * f0_inv)
    norms = [b.norm() for b in bs]
    top = max(norms[1:])
    k = next(i for i in range(1, len(bs)) if norms[i] > 1e-13 * top)
    bk = bs[k]
    # -|b_k|/b_k = -conj(b_k)/|b_k|, a unit element
    target = bk.conjugate() * (-1.0 / bk.norm())
    zeta = nth_root(target, k)

    # Largest dyadic rho in (0, radius) keeping |b_k| - sum_{i>k} |b_i| rho^(i-k)
    # positive (the strict-decrease bound), then backtrack on |f| itself.
    def margin(rho):
        return norms[k] - sum(
            norms[i] * rho ** (i - k) for i in range(k + 1, len(bs))
        )

    rho = radius * (1.0 - 1e-9)
    for _ in range(200):
        if margin(rho) > 0:
            break
        rho *= 0.5
    else:
        raise DescentError("no positive-margin step below the radius")
    for _ in range(200):
        coords = rho * zeta.coords
        coords[0] += t0
        trial = Element(f.algebra, coords)
        if f(trial).norm() < n0:
            return trial
        rho *= 0.5
    raise DescentError("no strict decrease found at machine precision")
