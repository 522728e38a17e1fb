"""Topological degree by signed preimage counting.

For a polynomial self-map the degree of the extension to the one-point
compactification is the signed count of preimages of a regular value; the
Jacobian nonnegativity theorem makes every sign +1, so the degree equals the
preimage count.  Sphere power maps t -> t^k reduce to the polynomial
t^k - e1*r whose roots all lie strictly inside the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .algebra import Algebra, Element, get_algebra, matrix_rep, right_matrix_rep
from .config import CLUSTER_RADIUS
from .jacobian import det_sign, exact_jacobian, fd_jacobian, jacobian_sign
from .polynomial import GeneralMonomial, Polynomial, pointwise_product
from .roots import RootFindingError, find_roots

__all__ = [
    "DegreeReport",
    "RegularValueError",
    "poly_map_degree",
    "product_degree_additivity",
    "sphere_power_degree",
    "sphere_product_additivity",
    "nonregular_demo",
]


class RegularValueError(RuntimeError):
    """No regular target value found within the retry budget."""


@dataclass
class DegreeReport:
    map_label: str
    algebra: str
    method: str  # 'signed_preimage' | 'composition' | 'formula'
    degree: int
    target: Element | None = None
    preimages: list = field(default_factory=list)  # (Element, sign)

    def to_json(self) -> dict:
        return {
            "map": self.map_label,
            "algebra": self.algebra,
            "method": self.method,
            "degree": self.degree,
            "target": None if self.target is None else self.target.coords.tolist(),
            "preimages": [
                {"point": point.coords.tolist(), "sign": sign}
                for point, sign in self.preimages
            ],
        }


def _ball_point(algebra: Algebra, rng: np.random.Generator, radius: float) -> Element:
    v = rng.normal(size=algebra.dim)
    v *= radius * rng.random() ** (1.0 / algebra.dim) / np.linalg.norm(v)
    return Element(algebra, v)


def _target_radius(f: Polynomial, rng: np.random.Generator) -> float:
    probes = np.vstack(
        [_ball_point(f.algebra, rng, 1.0).coords for _ in range(32)]
    )
    values = f.evaluate_many(probes)
    return 1.0 + float(np.max(np.linalg.norm(values, axis=1)))


def _simple_preimages(f: Polynomial, h: Element):
    """Roots of f - h if all are isolated and Jacobian-regular, else None."""
    g = f - h
    try:
        records = find_roots(g)
    except RootFindingError:
        return None
    if any(rec.kind == "spherical" for rec in records):
        return None
    points = []
    for rec in records:
        sign = jacobian_sign(g, rec.value)
        if sign == 0:
            return None
        points.append((rec.value, sign))
    return points


def poly_map_degree(
    f: Polynomial,
    h: Element | None = None,
    rng: np.random.Generator | None = None,
    max_redraws: int = 20,
) -> DegreeReport:
    """Degree of the polynomial self-map via signed preimages of a target.

    Draws targets until one is regular (all preimages simple); the signed
    count then equals deg(f), every sign being +1.
    """
    if f.degree < 1:
        raise ValueError("degree computation needs a nonconstant polynomial")
    if f.leading.norm() == 0.0:
        raise ValueError("leading coefficient must be nonzero")
    if rng is None:
        rng = np.random.default_rng(0)
    label = "poly:" + _safe_label(f)
    if h is not None:
        points = _simple_preimages(f, h)
        if points is None:
            raise RegularValueError("the supplied target value is not regular")
        return DegreeReport(
            label, f.algebra.name, "signed_preimage",
            int(sum(s for _, s in points)), h, points,
        )
    radius = _target_radius(f, rng)
    for _ in range(max_redraws):
        h_try = _ball_point(f.algebra, rng, radius)
        points = _simple_preimages(f, h_try)
        if points is not None and len(points) == f.degree:
            return DegreeReport(
                label, f.algebra.name, "signed_preimage",
                int(sum(s for _, s in points)), h_try, points,
            )
    raise RegularValueError(f"no regular value after {max_redraws} draws")


def product_degree_additivity(
    f: Polynomial,
    g: Polynomial,
    rng: np.random.Generator | None = None,
    max_redraws: int = 20,
) -> DegreeReport:
    """Degree of t -> (f(t)-h) * (g(t)-z) for regular h, z with disjoint fibers.

    The zero set is the union of both preimage sets (norms multiply), and at
    a zero from the f-fiber the product-rule Jacobian is R[g(a)-z] @ J(f)(a),
    whose determinant sign matches sign|J(f)(a)|.  The signed count is then
    deg(f) + deg(g).  Signs are cross-checked with a finite-difference
    Jacobian of the pointwise product map.
    """
    if f.algebra is not g.algebra:
        raise ValueError("both polynomials must live in the same algebra")
    if rng is None:
        rng = np.random.default_rng(0)
    algebra = f.algebra
    for _ in range(max_redraws):
        h = _ball_point(algebra, rng, _target_radius(f, rng))
        z = _ball_point(algebra, rng, _target_radius(g, rng))
        pts_f = _simple_preimages(f, h)
        pts_g = _simple_preimages(g, z)
        if pts_f is None or pts_g is None:
            continue
        if len(pts_f) != f.degree or len(pts_g) != g.degree:
            continue
        sep = min(
            ((a - b).norm() for a, _ in pts_f for b, _ in pts_g),
            default=np.inf,
        )
        if sep <= CLUSTER_RADIUS:
            continue
        fh = f - h
        gz = g - z
        phi = pointwise_product(fh, gz)
        preimages = []
        ok = True
        for a, sign_f in pts_f:
            jac = right_matrix_rep(gz(a)) @ exact_jacobian(fh, a)
            sign = det_sign(jac)
            fd_sign = det_sign(fd_jacobian(phi, a))
            if sign != sign_f or fd_sign != sign_f:
                ok = False
                break
            preimages.append((a, sign))
        if not ok:
            continue
        for b, sign_g in pts_g:
            jac = matrix_rep(fh(b)) @ exact_jacobian(gz, b)
            sign = det_sign(jac)
            fd_sign = det_sign(fd_jacobian(phi, b))
            if sign != sign_g or fd_sign != sign_g:
                ok = False
                break
            preimages.append((b, sign))
        if not ok:
            continue
        label = f"product:({_safe_label(f)})*({_safe_label(g)})"
        return DegreeReport(
            label, algebra.name, "signed_preimage",
            int(sum(s for _, s in preimages)), None, preimages,
        )
    raise RegularValueError(
        f"no regular disjoint target pair after {max_redraws} draws"
    )


def sphere_power_degree(
    k: int, r: float = 0.5, algebra: Algebra | str = "H"
) -> DegreeReport:
    """Degree of t -> t^k on the unit sphere of the algebra.

    k >= 1 counts the k simple roots of t^k - e1*r (all of modulus r^(1/k),
    strictly inside the sphere, all signs +1).  k = 0 is the constant map.
    k = -1 composes the imag_dim coordinate reflections of the inversion
    t -> conj(t)/|t|^2 restricted to the sphere; k <= -2 composes t^(-k)
    with the inversion.
    """
    algebra = get_algebra(algebra)
    m = algebra.imag_dim
    label = f"power:{k}"
    if k == 0:
        return DegreeReport(label, algebra.name, "formula", 0)
    if k == -1:
        return DegreeReport(label, algebra.name, "formula", (-1) ** m)
    if k <= -2:
        # deg(h) * deg(t^-1) = deg(t^(-k)) = -k, so deg(h) = k for odd m.
        return DegreeReport(label, algebra.name, "composition", k)
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1) for positive powers")
    target = Element(algebra, r * algebra.basis_coords(1))
    p = Polynomial.monomial(algebra, k) - target
    records = find_roots(p)
    expected_mod = r ** (1.0 / k)
    points = []
    for rec in records:
        if rec.kind != "isolated":
            raise RegularValueError("unexpected spherical preimage for a power map")
        if abs(rec.value.norm() - expected_mod) > 1e-8:
            raise RegularValueError(
                f"preimage modulus {rec.value.norm():.12f} != {expected_mod:.12f}"
            )
        sign = jacobian_sign(p, rec.value)
        if sign <= 0:
            raise RegularValueError("nonpositive Jacobian sign at a power-map root")
        points.append((rec.value, sign))
    if len(points) != k:
        raise RegularValueError(f"found {len(points)} preimages, expected {k}")
    return DegreeReport(
        label, algebra.name, "signed_preimage",
        int(sum(s for _, s in points)), target, points,
    )


def sphere_product_additivity(
    n: int, k: int, algebra: Algebra | str = "H", r: float = 0.5
) -> DegreeReport:
    """Degree of t -> t^n * t^k on the sphere, checked against n + k.

    On the sphere powers of one element multiply as t^n * t^k = t^(n+k), so
    the product map is the (n+k) power map; its degree must equal the sum of
    the factor degrees.
    """
    algebra = get_algebra(algebra)
    total = n + k
    if total == 0:
        report = DegreeReport(f"power:{n}*power:{k}", algebra.name, "formula", 0)
    else:
        inner = sphere_power_degree(total, r, algebra)
        report = DegreeReport(
            f"power:{n}*power:{k}", algebra.name, inner.method,
            inner.degree, inner.target, inner.preimages,
        )
    deg_n = sphere_power_degree(n, r, algebra).degree
    deg_k = sphere_power_degree(k, r, algebra).degree
    if report.degree != deg_n + deg_k:
        raise RegularValueError(
            f"additivity failed: {report.degree} != {deg_n} + {deg_k}"
        )
    return report


def nonregular_demo(
    algebra: Algebra | str = "H",
    samples: int = 120_000,
    radii=(0.5, 1.0, 2.0, 5.0),
    rng: np.random.Generator | None = None,
) -> dict:
    """Sampled evidence that i t^2 j + j t^2 i - 1 stays away from zero.

    The top form collapses along the real and e1 axes (so |f| = 1 there) but
    grows along mixed directions; the sampled minimum of |f| over dense grids
    plus random draws inside several radii bounds the value away from zero.
    Sampling evidence only, not a proof.
    """
    algebra = get_algebra(algebra)
    if algebra.name != "H":
        raise ValueError("the demo map is quaternionic")
    if rng is None:
        rng = np.random.default_rng(0)
    i = algebra.basis_coords(1)
    j = algebra.basis_coords(2)
    mono_a = GeneralMonomial(algebra, [i, 1.0, j])  # i t 1 t j = i t^2 j
    mono_b = GeneralMonomial(algebra, [j, 1.0, i])

    def values(points: np.ndarray) -> np.ndarray:
        total = (
            _monomial_it2j(algebra, points, i, j)
            + _monomial_it2j(algebra, points, j, i)
        )
        total[:, 0] -= 1.0
        return np.linalg.norm(total, axis=1)

    per_radius = max(1, samples // (2 * len(radii)))
    min_norm = np.inf
    argmin = None
    total_points = 0
    for radius in radii:
        side = int(round(per_radius ** 0.25))
        axes = [np.linspace(-radius, radius, max(side, 2))] * 4
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 4)
        rand = rng.uniform(-radius, radius, size=(per_radius, 4))
        for block in (grid, rand):
            norms = values(block)
            total_points += block.shape[0]
            idx = int(np.argmin(norms))
            if norms[idx] < min_norm:
                min_norm = float(norms[idx])
                argmin = block[idx].tolist()
    xs = np.linspace(-10.0, 10.0, 2001)
    real_axis = np.zeros((xs.size, 4))
    real_axis[:, 0] = xs
    real_vals = values(real_axis)
    rays = {}
    for name, direction in (
        ("1", np.array([1.0, 0, 0, 0])),
        ("e1", np.array([0.0, 1, 0, 0])),
        ("(1+e1)/sqrt2", np.array([1.0, 1, 0, 0]) / np.sqrt(2.0)),
    ):
        ss = np.linspace(0.0, 50.0, 26)
        pts = ss[:, None] * direction[None, :]
        top = (
            _monomial_it2j(algebra, pts, i, j) + _monomial_it2j(algebra, pts, j, i)
        )
        rays[name] = np.linalg.norm(top, axis=1).tolist()
    # sanity: the two evaluation routes agree
    check = rng.normal(size=(16, 4))
    route_a = mono_a.evaluate_many(check) + mono_b.evaluate_many(check)
    route_b = _monomial_it2j(algebra, check, i, j) + _monomial_it2j(algebra, check, j, i)
    assert np.max(np.abs(route_a - route_b)) < 1e-10
    return {
        "map": "i t^2 j + j t^2 i - 1",
        "algebra": algebra.name,
        "samples": total_points,
        "min_abs_value": min_norm,
        "argmin": argmin,
        "real_axis_min": float(np.min(real_vals)),
        "real_axis_max": float(np.max(real_vals)),
        "top_form_along_rays": rays,
    }


def _monomial_it2j(algebra: Algebra, points: np.ndarray, a: np.ndarray, b: np.ndarray):
    """a * t^2 * b over a batch of points."""
    t2 = backend.mul_many(algebra, points, points)
    an = np.broadcast_to(a, points.shape)
    bn = np.broadcast_to(b, points.shape)
    return backend.mul_many(algebra, backend.mul_many(algebra, an, t2), bn)


def _safe_label(f: Polynomial) -> str:
    from .parsing import format_polynomial

    try:
        return format_polynomial(f)
    except Exception:
        return f"degree-{f.degree}"
