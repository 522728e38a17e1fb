"""Named property suites behind the CLI ``verify`` subcommand.

Each suite returns a report dict with a ``passed`` flag, the sample budget it
actually used, headline statistics (min/argmin where meaningful), and a
counterexample when one was found.  All randomness flows through one seeded
generator, so identical seeds reproduce identical reports.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .algebra import (
    OCTONIONS,
    QUATERNIONS,
    Element,
    matrix_rep,
    multiply,
    random_element,
)
from .degree import poly_map_degree, product_degree_additivity, sphere_power_degree
from .jacobian import (
    block_matrix_a,
    det_identity_lhs,
    det_identity_rhs,
    exact_jacobian,
    lemma_matrix_check,
    row_norm_scale,
)
from .polynomial import Polynomial

__all__ = ["SUITES", "run_suite"]


def _report(name, passed, samples, details, counterexample=None):
    return {
        "suite": name,
        "passed": bool(passed),
        "samples": int(samples),
        "details": details,
        "counterexample": counterexample,
    }


def algebra_tables(samples: int = 10_000, seed: int = 0) -> dict:
    """Exact table identities plus the sampled norm/alternativity laws."""
    rng = np.random.default_rng(seed)
    failures = []
    triples = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 6, 4), (2, 5, 7), (3, 4, 7), (3, 5, 6))
    unit = lambda n: Element.unit(OCTONIONS, n)
    checked = 0
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            checked += 1
            if not (unit(x) * unit(y) == unit(z)):
                failures.append(f"e{x}*e{y} != e{z}")
            if not (unit(y) * unit(x) == -unit(z)):
                failures.append(f"e{y}*e{x} != -e{z}")
    for x in range(1, 8):
        if not (unit(x) * unit(x) == Element.real(OCTONIONS, -1.0)):
            failures.append(f"e{x}^2 != -1")
    # quaternion units embed as e1, e2, e3
    for a in range(4):
        for b in range(4):
            qprod = Element.unit(QUATERNIONS, a) * Element.unit(QUATERNIONS, b)
            oprod = unit(a) * unit(b)
            if not np.array_equal(qprod.coords, oprod.coords[:4]) or oprod.coords[4:].any():
                failures.append(f"embedding mismatch at ({a},{b})")
    worst_norm = 0.0
    worst_alt = 0.0
    per_algebra = max(1, samples // 2)
    for algebra in (QUATERNIONS, OCTONIONS):
        for _ in range(per_algebra):
            a = random_element(algebra, rng)
            b = random_element(algebra, rng)
            worst_norm = max(
                worst_norm, abs((a * b).norm() - a.norm() * b.norm())
            )
            if algebra is OCTONIONS:
                worst_alt = max(
                    worst_alt,
                    ((a * b) * b - a * (b * b)).norm(),
                    (b * (b * a) - (b * b) * a).norm(),
                )
    if worst_norm > 1e-12:
        failures.append(f"norm multiplicativity deviation {worst_norm:.3e}")
    if worst_alt > 1e-11:
        failures.append(f"alternativity deviation {worst_alt:.3e}")
    details = {
        "table_identities": checked,
        "worst_norm_multiplicativity": worst_norm,
        "worst_alternativity": worst_alt,
    }
    return _report(
        "algebra", not failures, samples, details,
        failures[0] if failures else None,
    )


def theorem_nonnegative_jacobian(samples: int = 10_000, seed: int = 0) -> dict:
    """min det J over random (f, t); planted double roots pin det ~ 0."""
    rng = np.random.default_rng(seed)
    details = {}
    passed = True
    counterexample = None
    for algebra in (QUATERNIONS, OCTONIONS):
        degrees = rng.integers(1, 7, size=samples)
        coeffs = rng.normal(size=(samples, 7, algebra.dim))
        for s in range(samples):
            coeffs[s, degrees[s] + 1 :] = 0.0
        ts = rng.normal(size=(samples, algebra.dim))
        jacs = backend.jacobian_many(algebra, coeffs, ts)
        dets = backend.det_many(jacs)
        scales = np.maximum(
            np.prod(np.linalg.norm(jacs, axis=2), axis=1), 1e-300
        )
        normalized = dets / scales
        idx = int(np.argmin(normalized))
        details[f"min_normalized_det_{algebra.name}"] = float(normalized[idx])
        details[f"argmin_t_{algebra.name}"] = ts[idx].tolist()
        if normalized[idx] < -1e-9:
            passed = False
            counterexample = {
                "algebra": algebra.name,
                "coeffs": coeffs[idx].tolist(),
                "t": ts[idx].tolist(),
                "normalized_det": float(normalized[idx]),
            }
        # planted double roots
        worst_double = 0.0
        for _ in range(min(200, samples)):
            c = random_element(algebra, rng)
            f = Polynomial.from_linear_factors(algebra, [c, c])
            jac = exact_jacobian(f, c)
            scale = max(row_norm_scale(jac), 1e-300)
            worst_double = max(worst_double, abs(np.linalg.det(jac)) / scale)
        details[f"max_double_root_det_{algebra.name}"] = worst_double
        if worst_double > 1e-6:
            passed = False
            counterexample = counterexample or {
                "algebra": algebra.name,
                "double_root_det": worst_double,
            }
    return _report("thm2.2", passed, samples, details, counterexample)


def lemma_power_matrices(samples: int = 13, seed: int = 0) -> dict:
    """J(t^k (t - e1)) at e1 equals the k-th power of the block matrix."""
    kmax = max(0, min(int(samples), 13) - 1)
    failures = [
        (algebra, k)
        for algebra in ("H", "O")
        for k in range(kmax + 1)
        if not lemma_matrix_check(k, algebra)
    ]
    details = {"k_range": [0, kmax], "algebras": ["H", "O"]}
    return _report(
        "lemma2.2", not failures, 2 * (kmax + 1), details,
        {"algebra": failures[0][0], "k": failures[0][1]} if failures else None,
    )


def determinant_identity(samples: int = 10_000, seed: int = 0) -> dict:
    """Closed form vs det(I + CA) over random octonions; zero at imaginary units."""
    rng = np.random.default_rng(seed)
    a_mat = block_matrix_a(8)
    worst_rel = 0.0
    worst_c = None
    neg_rhs = 0
    for _ in range(samples):
        c = random_element(OCTONIONS, rng, scale=float(rng.choice([0.3, 1.0, 3.0])))
        lhs = float(np.linalg.det(np.eye(8) + matrix_rep(c) @ a_mat))
        rhs = det_identity_rhs(c)
        rel = abs(lhs - rhs) / max(1.0, abs(rhs))
        if rel > worst_rel:
            worst_rel, worst_c = rel, c.coords.tolist()
        if rhs < 0:
            neg_rhs += 1
    worst_unit = 0.0
    for _ in range(max(1, samples // 10)):
        v = rng.normal(size=7)
        v /= np.linalg.norm(v)
        c = Element(OCTONIONS, np.concatenate(([0.0], v)))
        worst_unit = max(
            worst_unit,
            abs(det_identity_rhs(c)),
            abs(float(np.linalg.det(np.eye(8) + matrix_rep(c) @ a_mat))),
        )
    passed = worst_rel <= 1e-9 and neg_rhs == 0 and worst_unit <= 1e-9
    details = {
        "worst_rel_error": worst_rel,
        "argmax_c": worst_c,
        "negative_rhs_count": neg_rhs,
        "worst_imaginary_unit_det": worst_unit,
    }
    return _report("det-identity", passed, samples, details)


def degree_additivity(samples: int = 100, seed: int = 0) -> dict:
    """deg(t^n) = n for n = 1..5 (both algebras) and product additivity."""
    rng = np.random.default_rng(seed)
    failures = []
    for algebra in (QUATERNIONS, OCTONIONS):
        for n in range(1, 6):
            rep = poly_map_degree(Polynomial.monomial(algebra, n), rng=rng)
            if rep.degree != n or any(s != 1 for _, s in rep.preimages):
                failures.append({"algebra": algebra.name, "power": n, "got": rep.degree})
    pair_budget = max(1, samples)
    for index in range(pair_budget):
        algebra = QUATERNIONS if index % 2 == 0 else OCTONIONS
        deg_f = int(rng.integers(1, 4))
        deg_g = int(rng.integers(1, 4))
        f = Polynomial(algebra, rng.normal(size=(deg_f + 1, algebra.dim)))
        g = Polynomial(algebra, rng.normal(size=(deg_g + 1, algebra.dim)))
        rep = product_degree_additivity(f, g, rng=rng)
        if rep.degree != deg_f + deg_g or any(s != 1 for _, s in rep.preimages):
            failures.append(
                {"algebra": algebra.name, "degrees": [deg_f, deg_g], "got": rep.degree}
            )
    details = {"power_range": [1, 5], "pairs": pair_budget}
    return _report(
        "prop3.1", not failures, 10 + pair_budget, details,
        failures[0] if failures else None,
    )


def sphere_power_suite(samples: int = 6, seed: int = 0) -> dict:
    """Sphere power maps: degree k with the right preimage moduli."""
    kmax = max(1, min(int(samples), 6))
    failures = []
    for algebra in ("H", "O"):
        for k in range(1, kmax + 1):
            rep = sphere_power_degree(k, 0.5, algebra)
            moduli_ok = all(
                abs(point.norm() - 0.5 ** (1.0 / k)) <= 1e-8
                for point, _ in rep.preimages
            )
            if rep.degree != k or len(rep.preimages) != k or not moduli_ok:
                failures.append({"algebra": algebra, "k": k, "got": rep.degree})
        if sphere_power_degree(-1, algebra=algebra).degree != -1:
            failures.append({"algebra": algebra, "k": -1})
        for k in (-2, -3):
            if sphere_power_degree(k, algebra=algebra).degree != k:
                failures.append({"algebra": algebra, "k": k})
    details = {"k_range": [1, kmax], "negative_k": [-1, -2, -3]}
    return _report(
        "lemma3.1", not failures, 2 * (kmax + 3), details,
        failures[0] if failures else None,
    )


SUITES = {
    "algebra": algebra_tables,
    "thm2.2": theorem_nonnegative_jacobian,
    "lemma2.2": lemma_power_matrices,
    "det-identity": determinant_identity,
    "prop3.1": degree_additivity,
    "lemma3.1": sphere_power_suite,
}


def run_suite(name: str, samples: int | None = None, seed: int = 0) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    func = SUITES[name]
    if samples is None:
        return func(seed=seed)
    return func(samples=samples, seed=seed)
