"""One-sided polynomials and general monomials over the quaternions/octonions.

A left polynomial is f(t) = sum a_k t^k, a right one f(t) = sum t^k a_k.
Coefficients are stored as a (degree+1, dim) float array, index = power.
The formal product keeps coefficients together as if they commuted with t:
(fg)_k = sum_i a_i * b_{k-i}, with f's coefficient on the left of each
product.  Pointwise multiplication of the induced maps is a different
operation (see :func:`pointwise_product`) and generally disagrees with it.
"""

from __future__ import annotations

import math

import numpy as np

from . import backend, realpoly
from .algebra import Algebra, AlgebraMismatchError, Element, get_algebra

__all__ = [
    "Polynomial",
    "GeneralMonomial",
    "pointwise_product",
]

_SIDES = ("left", "right")


class Polynomial:
    """Ordinary one-sided polynomial with hypercomplex coefficients."""

    __slots__ = ("algebra", "side", "coeffs")

    def __init__(self, algebra: Algebra, coeffs, side: str = "left"):
        algebra = get_algebra(algebra)
        if side not in _SIDES:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        rows = [algebra.coerce(c) for c in coeffs]
        if not rows:
            rows = [np.zeros(algebra.dim)]
        arr = np.array(rows, dtype=np.float64)
        # canonical form: drop trailing zero coefficients (zero poly keeps one row)
        last = arr.shape[0]
        while last > 1 and not arr[last - 1].any():
            last -= 1
        self.algebra = algebra
        self.side = side
        self.coeffs = arr[:last]

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_real_coeffs(cls, algebra, values, side: str = "left") -> "Polynomial":
        algebra = get_algebra(algebra)
        arr = np.zeros((len(values), algebra.dim))
        arr[:, 0] = values
        return cls(algebra, arr, side)

    @classmethod
    def monomial(cls, algebra, power: int, coeff=1.0, side: str = "left") -> "Polynomial":
        algebra = get_algebra(algebra)
        rows = np.zeros((power + 1, algebra.dim))
        rows[power] = algebra.coerce(coeff)
        return cls(algebra, rows, side)

    @classmethod
    def variable(cls, algebra, side: str = "left") -> "Polynomial":
        """The polynomial t."""
        return cls.monomial(algebra, 1, 1.0, side)

    @classmethod
    def linear_factor(cls, c: Element, side: str = "left") -> "Polynomial":
        """t - c."""
        return cls(c.algebra, [(-c).coords, c.algebra.coerce(1.0)], side)

    @classmethod
    def from_linear_factors(cls, algebra, roots, leading=1.0, side: str = "left") -> "Polynomial":
        """leading * (t - c_n) ... (t - c_1) for roots = [c_1, ..., c_n]."""
        algebra = get_algebra(algebra)
        out = cls(algebra, [algebra.coerce(leading)], side)
        for c in reversed(list(roots)):
            out = out * cls.linear_factor(_lift(algebra, c), side)
        return out

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        if self.coeffs.shape[0] == 1 and not self.coeffs[0].any():
            return -1
        return self.coeffs.shape[0] - 1

    def coefficient(self, k: int) -> Element:
        if 0 <= k < self.coeffs.shape[0]:
            return Element(self.algebra, self.coeffs[k].copy())
        return Element.zero(self.algebra)

    @property
    def leading(self) -> Element:
        return Element(self.algebra, self.coeffs[-1].copy())

    def coeff_scale(self) -> float:
        """max_k |a_k|, used to scale residual tolerances."""
        return float(np.max(np.linalg.norm(self.coeffs, axis=1)))

    def components(self) -> np.ndarray:
        """Real component polynomials a_q(t), shape (dim, degree+1), low to high."""
        return self.coeffs.T.copy()

    def is_zero(self) -> bool:
        return self.degree < 0

    # -- evaluation ------------------------------------------------------

    def __call__(self, t) -> Element:
        t = _lift(self.algebra, t)
        out = self.coeffs[0].copy()
        power = None
        for k in range(1, self.coeffs.shape[0]):
            power = t.coords if k == 1 else self.algebra.mul(power, t.coords)
            ck = self.coeffs[k]
            if not ck.any():
                continue
            if self.side == "left":
                out += self.algebra.mul(ck, power)
            else:
                out += self.algebra.mul(power, ck)
        return Element(self.algebra, out)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Values at an (N, dim) coordinate batch, via the selected backend."""
        return backend.polyval_many(
            self.algebra, self.coeffs, points, self.side == "left"
        )

    # -- ring-ish operations ---------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.algebra is not other.algebra:
            raise AlgebraMismatchError("polynomials live in different algebras")
        if self.side != other.side:
            raise ValueError("polynomials have different coefficient sides")

    def __add__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_compatible(other)
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros((n, self.algebra.dim))
        a[: self.coeffs.shape[0]] = self.coeffs
        a[: other.coeffs.shape[0]] += other.coeffs
        return Polynomial(self.algebra, a, self.side)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.algebra, -self.coeffs, self.side)

    def __sub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def _as_poly(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, float, np.integer, np.floating, Element)):
            return Polynomial(self.algebra, [self.algebra.coerce(other)], self.side)
        return NotImplemented

    def __mul__(self, other):
        """Formal product with (fg)_k = sum_i a_i * b_{k-i}."""
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_compatible(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.algebra, [np.zeros(self.algebra.dim)], self.side)
        na, nb = self.coeffs.shape[0], other.coeffs.shape[0]
        out = np.zeros((na + nb - 1, self.algebra.dim))
        for i in range(na):
            ai = self.coeffs[i]
            if not ai.any():
                continue
            for j in range(nb):
                bj = other.coeffs[j]
                if not bj.any():
                    continue
                out[i + j] += self.algebra.mul(ai, bj)
        return Polynomial(self.algebra, out, self.side)

    def __rmul__(self, other):
        poly = self._as_poly(other)
        if poly is NotImplemented:
            return NotImplemented
        return poly * self

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.side == other.side
            and self.coeffs.shape == other.coeffs.shape
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def isclose(self, other: "Polynomial", tol: float = 1e-10) -> bool:
        if self.algebra is not other.algebra or self.side != other.side:
            return False
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros((n, self.algebra.dim))
        b = np.zeros((n, self.algebra.dim))
        a[: self.coeffs.shape[0]] = self.coeffs
        b[: other.coeffs.shape[0]] = other.coeffs
        return bool(np.max(np.abs(a - b)) <= tol)

    # -- conjugation and the norm polynomial ------------------------------

    def conjugate(self) -> "Polynomial":
        c = self.coeffs.copy()
        c[:, 1:] = -c[:, 1:]
        return Polynomial(self.algebra, c, self.side)

    def norm_poly(self) -> np.ndarray:
        """Real coefficients of conj(f) * f = sum_q a_q(t)^2, low to high.

        Nonnegative on the real line; degree is twice deg(f).
        """
        if self.is_zero():
            raise ValueError("norm polynomial of the zero polynomial")
        out = np.zeros(2 * self.coeffs.shape[0] - 1)
        for q in range(self.algebra.dim):
            comp = self.coeffs[:, q]
            if comp.any():
                out += np.convolve(comp, comp)
        return realpoly.trim(out)

    def is_primitive(self) -> bool:
        """True when the real component polynomials have a degree-0 GCD."""
        if self.is_zero():
            raise ValueError("primitivity of the zero polynomial is undefined")
        comps = [
            realpoly.trim(self.coeffs[:, q])
            for q in range(self.algebra.dim)
            if self.coeffs[:, q].any()
        ]
        g = comps[0]
        for c in comps[1:]:
            g = realpoly.gcd(g, c)
            if realpoly.degree(g) == 0:
                return True
        return realpoly.degree(g) == 0

    # -- division --------------------------------------------------------

    def divide_linear(self, c) -> tuple["Polynomial", Element]:
        """Quotient and constant remainder with f = g * (t - c) + r (left side).

        Right polynomials divide as f = (t - c) * g + r.  In both cases
        r = f(c).
        """
        if self.degree < 1:
            raise ValueError("divide_linear needs degree >= 1")
        c = _lift(self.algebra, c)
        n = self.degree
        g = np.zeros((n, self.algebra.dim))
        g[n - 1] = self.coeffs[n]
        for k in range(n - 1, 0, -1):
            if self.side == "left":
                g[k - 1] = self.coeffs[k] + self.algebra.mul(g[k], c.coords)
            else:
                g[k - 1] = self.coeffs[k] + self.algebra.mul(c.coords, g[k])
        if self.side == "left":
            r = self.coeffs[0] + self.algebra.mul(g[0], c.coords)
        else:
            r = self.coeffs[0] + self.algebra.mul(c.coords, g[0])
        return Polynomial(self.algebra, g, self.side), Element(self.algebra, r)

    def divide_characteristic(
        self, alpha: float, beta: float
    ) -> tuple["Polynomial", Element, Element]:
        """Divide by the real quadratic q(t) = t^2 - 2*alpha*t + (alpha^2+beta^2).

        Returns (h, r1, r0) with f = h*q + r1*t + r0.  q is real, so the
        division is side-independent and unambiguous.
        """
        if self.degree < 2:
            raise ValueError("divide_characteristic needs degree >= 2")
        if beta < 0:
            raise ValueError("beta must be nonnegative")
        p = 2.0 * float(alpha)
        s = float(alpha) ** 2 + float(beta) ** 2
        n = self.degree
        h = np.zeros((n - 1, self.algebra.dim))
        for k in range(n, 1, -1):
            acc = self.coeffs[k].copy()
            if k - 1 <= n - 2:
                acc += p * h[k - 1]
            if k <= n - 2:
                acc -= s * h[k]
            h[k - 2] = acc
        r1 = self.coeffs[1] + p * h[0] - (s * h[1] if n >= 3 else 0.0)
        r0 = self.coeffs[0] - s * h[0]
        return (
            Polynomial(self.algebra, h, self.side),
            Element(self.algebra, r1),
            Element(self.algebra, r0),
        )

    def shifted(self, t0: float) -> "Polynomial":
        """f(t + t0) for real t0 (binomial re-expansion keeps the side)."""
        t0 = float(t0)
        n = self.coeffs.shape[0]
        out = np.zeros_like(self.coeffs)
        for k in range(n):
            ak = self.coeffs[k]
            if not ak.any():
                continue
            for j in range(k + 1):
                out[j] += math.comb(k, j) * t0 ** (k - j) * ak
        return Polynomial(self.algebra, out, self.side)

    def mirror_conjugate(self) -> "Polynomial":
        """Side-swapped twin with conjugated coefficients.

        conj(f(t)) = sum conj(t)^k conj(a_k) for left f, so c is a root of f
        exactly when conj(c) is a root of the mirror.
        """
        c = self.coeffs.copy()
        c[:, 1:] = -c[:, 1:]
        return Polynomial(
            self.algebra, c, "right" if self.side == "left" else "left"
        )

    # -- presentation ----------------------------------------------------

    def __repr__(self):
        return (
            f"Polynomial({self.algebra.name!r}, degree={self.degree}, "
            f"side={self.side!r})"
        )

    def __str__(self):
        if self.side != "left":
            return repr(self)
        from .parsing import format_polynomial

        return format_polynomial(self)

    def to_json(self) -> dict:
        return {
            "kind": self.algebra.name,
            "side": self.side,
            "coeffs": self.coeffs.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        return cls(get_algebra(data["kind"]), data["coeffs"], data["side"])


def _lift(algebra: Algebra, value) -> Element:
    if isinstance(value, Element):
        if value.algebra is not algebra:
            raise AlgebraMismatchError(
                f"expected {algebra.name} element, got {value.algebra.name}"
            )
        return value
    return Element(algebra, algebra.coerce(value))


def pointwise_product(f, g):
    """The map t -> f(t) * g(t) for two evaluators (callables or polynomials).

    This is the value-wise product of the induced maps, not the formal
    coefficient product; the two genuinely differ at non-real points.
    """
    def product(t):
        return f(t) * g(t)

    return product


class GeneralMonomial:
    """Product a_0 t a_1 t ... t a_n with an explicit evaluation-order tree.

    The 2n+1 factors are indexed 0..2n; even positions hold the coefficients,
    odd positions hold t.  ``tree`` is either a leaf index or a pair of
    subtrees; the in-order leaves must be 0..2n.  For quaternions the tree
    never changes the value; for octonions it can.
    """

    __slots__ = ("algebra", "coeffs", "tree")

    def __init__(self, algebra: Algebra, coeffs, tree=None):
        algebra = get_algebra(algebra)
        rows = [algebra.coerce(c) for c in coeffs]
        if not rows:
            raise ValueError("a general monomial needs at least one coefficient")
        self.algebra = algebra
        self.coeffs = np.array(rows, dtype=np.float64)
        n_factors = 2 * self.degree + 1
        if tree is None:
            tree = self.left_nested_tree(self.degree)
        leaves = []
        _collect_leaves(tree, leaves)
        if leaves != list(range(n_factors)):
            raise ValueError(
                f"tree leaves {leaves} must be 0..{n_factors - 1} in order"
            )
        self.tree = tree

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @staticmethod
    def left_nested_tree(n: int):
        """(((0 1) 2) ... 2n), the default grouping."""
        tree = 0
        for leaf in range(1, 2 * n + 1):
            tree = (tree, leaf)
        return tree

    def _factor(self, index: int, t: Element) -> Element:
        if index % 2 == 1:
            return t
        return Element(self.algebra, self.coeffs[index // 2].copy())

    def __call__(self, t) -> Element:
        t = _lift(self.algebra, t)

        def walk(node):
            if isinstance(node, int):
                return self._factor(node, t)
            left, right = node
            return walk(left) * walk(right)

        return walk(self.tree)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Values at an (N, dim) batch, grouping products by the tree."""
        points = np.ascontiguousarray(points, dtype=np.float64)
        n = points.shape[0]

        def walk(node):
            if isinstance(node, int):
                if node % 2 == 1:
                    return points
                return np.broadcast_to(
                    self.coeffs[node // 2], (n, self.algebra.dim)
                )
            left, right = node
            return backend.mul_many(self.algebra, walk(left), walk(right))

        return walk(self.tree)

    def __repr__(self):
        return (
            f"GeneralMonomial({self.algebra.name!r}, degree={self.degree}, "
            f"tree={self.tree!r})"
        )


def _collect_leaves(node, out):
    if isinstance(node, int):
        out.append(node)
    else:
        left, right = node
        _collect_leaves(left, out)
        _collect_leaves(right, out)
