"""Quaternion and octonion arithmetic over signed structure-constant tables.

An element is a real coordinate vector of length 4 or 8, scalar part first.
The two singletons :data:`QUATERNIONS` and :data:`OCTONIONS` own their
multiplication tables.  Octonion units multiply along seven oriented basis
triples, each behaving like (i, j, k); the quaternion units are identified
with e1, e2, e3 of the octonions, so the 4-dimensional table is the
restriction of the 8-dimensional one.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .config import RES_TOL, SIM_TOL

__all__ = [
    "Algebra",
    "AlgebraMismatchError",
    "Element",
    "QUATERNIONS",
    "OCTONIONS",
    "get_algebra",
    "multiply",
    "conjugate",
    "norm",
    "inverse",
    "matrix_rep",
    "right_matrix_rep",
    "similarity_check",
    "similarity_witness",
    "complex_representative",
    "embed_complex",
    "nth_root",
    "random_element",
]


class AlgebraMismatchError(ValueError):
    """Operands live in different algebras."""


_QUATERNION_TRIPLES = ((1, 2, 3),)
# Oriented unit triples: within each, products behave like (i, j, k).
_OCTONION_TRIPLES = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 6, 7),
    (2, 6, 4),
    (2, 5, 7),
    (3, 4, 7),
    (3, 5, 6),
)


def _signed_table(dim, triples):
    """Index/sign form of the basis products: e_i e_j = sign[i,j] * e_index[i,j]."""
    index = np.zeros((dim, dim), dtype=np.int64)
    sign = np.zeros((dim, dim), dtype=np.float64)
    for j in range(dim):
        index[0, j] = index[j, 0] = j
        sign[0, j] = sign[j, 0] = 1.0
    for i in range(1, dim):
        index[i, i] = 0
        sign[i, i] = -1.0
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            index[x, y] = z
            sign[x, y] = 1.0
            index[y, x] = z
            sign[y, x] = -1.0
    return index, sign


class Algebra:
    """One of the two normed division algebras handled here ('H' or 'O')."""

    def __init__(self, name: str, dim: int, triples):
        self.name = name
        self.dim = dim
        self.imag_dim = dim - 1
        self.tab_index, self.tab_sign = _signed_table(dim, triples)
        table = np.zeros((dim, dim, dim))
        for i in range(dim):
            for j in range(dim):
                table[i, j, self.tab_index[i, j]] = self.tab_sign[i, j]
        self.table = table
        self._table2d = np.ascontiguousarray(table.reshape(dim * dim, dim))
        if name == "H":
            self.unit_names = ("", "i", "j", "k")
        else:
            self.unit_names = ("",) + tuple(f"e{k}" for k in range(1, dim))

    # -- raw coordinate-vector operations -------------------------------

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.outer(a, b).ravel() @ self._table2d

    def left_matrix(self, c: np.ndarray) -> np.ndarray:
        """Matrix L with L @ x = c * x (column j is c * e_j)."""
        return np.einsum("i,ijk->kj", c, self.table)

    def right_matrix(self, c: np.ndarray) -> np.ndarray:
        """Matrix R with R @ x = x * c (column j is e_j * c)."""
        return np.einsum("i,jik->kj", c, self.table)

    def basis_coords(self, k: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[k] = 1.0
        return e

    def coerce(self, value) -> np.ndarray:
        """Coordinate vector from an Element, scalar, or array-like."""
        if isinstance(value, Element):
            if value.algebra is not self:
                raise AlgebraMismatchError(
                    f"expected {self.name} element, got {value.algebra.name}"
                )
            return value.coords
        if isinstance(value, (int, float, np.integer, np.floating)):
            c = np.zeros(self.dim)
            c[0] = float(value)
            return c
        c = np.asarray(value, dtype=np.float64)
        if c.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got shape {c.shape}")
        return c

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim})"


QUATERNIONS = Algebra("H", 4, _QUATERNION_TRIPLES)
OCTONIONS = Algebra("O", 8, _OCTONION_TRIPLES)

_BY_NAME = {
    "H": QUATERNIONS,
    "O": OCTONIONS,
    "quaternion": QUATERNIONS,
    "octonion": OCTONIONS,
}


def get_algebra(name) -> Algebra:
    if isinstance(name, Algebra):
        return name
    try:
        return _BY_NAME[str(name)]
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; use 'H' or 'O'") from None


class Element:
    """A point of the algebra, stored as ``dim`` real coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords):
        coords = np.asarray(coords, dtype=np.float64)
        if coords.shape != (algebra.dim,):
            raise ValueError(
                f"expected {algebra.dim} coordinates for {algebra.name}, "
                f"got shape {coords.shape}"
            )
        self.algebra = algebra
        self.coords = coords

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, algebra: Algebra) -> "Element":
        return cls(algebra, np.zeros(algebra.dim))

    @classmethod
    def one(cls, algebra: Algebra) -> "Element":
        return cls.real(algebra, 1.0)

    @classmethod
    def real(cls, algebra: Algebra, value: float) -> "Element":
        c = np.zeros(algebra.dim)
        c[0] = float(value)
        return cls(algebra, c)

    @classmethod
    def unit(cls, algebra: Algebra, k: int) -> "Element":
        """Basis element e_k (k = 0 is the real unit)."""
        return cls(algebra, algebra.basis_coords(k))

    # -- structure -------------------------------------------------------

    @property
    def re(self) -> float:
        return float(self.coords[0])

    @property
    def im(self) -> np.ndarray:
        """Imaginary coordinates (length dim - 1)."""
        return self.coords[1:]

    def imag_norm(self) -> float:
        return float(np.linalg.norm(self.coords[1:]))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def conjugate(self) -> "Element":
        c = self.coords.copy()
        c[1:] = -c[1:]
        return Element(self.algebra, c)

    def inverse(self) -> "Element":
        n2 = float(self.coords @ self.coords)
        if n2 == 0.0:
            raise ZeroDivisionError("inverse of zero element")
        c = self.coords / n2
        c[1:] = -c[1:]
        return Element(self.algebra, c)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.norm() <= tol

    def isclose(self, other: "Element", tol: float = 1e-12) -> bool:
        other = _as_element(self.algebra, other)
        return bool(np.max(np.abs(self.coords - other.coords)) <= tol)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise AlgebraMismatchError(
                    f"cannot combine {self.algebra.name} and {other.algebra.name} elements"
                )
            return other.coords
        if isinstance(other, (int, float, np.integer, np.floating)):
            c = np.zeros(self.algebra.dim)
            c[0] = float(other)
            return c
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Element(self.algebra, self.coords + c)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Element(self.algebra, self.coords - c)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Element(self.algebra, c - self.coords)

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Element(self.algebra, self.coords * float(other))
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Element(self.algebra, self.algebra.mul(self.coords, c))

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Element(self.algebra, self.coords * float(other))
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return Element(self.algebra, self.algebra.mul(c, self.coords))

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Element(self.algebra, self.coords / float(other))
        if isinstance(other, Element):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and np.array_equal(
                self.coords, other.coords
            )
        if isinstance(other, (int, float, np.integer, np.floating)):
            return np.array_equal(self.coords, self._coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra.name, self.coords.tobytes()))

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 0:
            return NotImplemented
        out = Element.one(self.algebra)
        # Left-nested products; power associativity makes the nesting immaterial.
        for _ in range(int(n)):
            out = out * self
        return out

    # -- presentation ----------------------------------------------------

    def __repr__(self):
        return f"Element({self.algebra.name!r}, {self.coords.tolist()})"

    def __str__(self):
        from .parsing import format_element

        return format_element(self)

    def to_json(self) -> dict:
        return {"kind": self.algebra.name, "coords": self.coords.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "Element":
        return cls(get_algebra(data["kind"]), data["coords"])


def _as_element(algebra: Algebra, value) -> Element:
    if isinstance(value, Element):
        if value.algebra is not algebra:
            raise AlgebraMismatchError(
                f"expected {algebra.name} element, got {value.algebra.name}"
            )
        return value
    return Element(algebra, algebra.coerce(value))


# ---------------------------------------------------------------------------
# operations


def multiply(a: Element, b: Element) -> Element:
    if a.algebra is not b.algebra:
        raise AlgebraMismatchError(
            f"cannot multiply {a.algebra.name} by {b.algebra.name}"
        )
    return a * b


def conjugate(a: Element) -> Element:
    return a.conjugate()


def norm(a: Element) -> float:
    return a.norm()


def inverse(a: Element) -> Element:
    return a.inverse()


def matrix_rep(c: Element) -> np.ndarray:
    """Left-multiplication matrix: (matrix_rep(c)) @ x = coords of c * x."""
    return c.algebra.left_matrix(c.coords)


def right_matrix_rep(c: Element) -> np.ndarray:
    """Right-multiplication matrix: (right_matrix_rep(c)) @ x = coords of x * c."""
    return c.algebra.right_matrix(c.coords)


def complex_representative(c: Element) -> tuple[float, float]:
    """(alpha, beta) with alpha = Re(c), beta = |Im(c)| >= 0."""
    return c.re, c.imag_norm()


def embed_complex(algebra: Algebra, alpha: float, beta: float) -> Element:
    """alpha + beta * e1, the canonical point of the similarity class."""
    c = np.zeros(algebra.dim)
    c[0] = float(alpha)
    c[1] = float(beta)
    return Element(algebra, c)


def similarity_check(c1: Element, c2: Element, tol: float = SIM_TOL) -> bool:
    """True when Re and |Im| agree within ``tol`` (c1 and c2 are conjugate)."""
    if c1.algebra is not c2.algebra:
        raise AlgebraMismatchError("similarity is defined within one algebra")
    return (
        abs(c1.re - c2.re) <= tol
        and abs(c1.imag_norm() - c2.imag_norm()) <= tol
    )


def similarity_witness(c1: Element, c2: Element) -> Element:
    """Unit eta with c1 * eta = eta * c2.

    For unit imaginary directions u, v the sum u + v conjugates u into v:
    u(u+v) = u^2 + uv = (u+v)v since u^2 = v^2 = -1.  That identity uses only
    bilinearity, so it holds for octonions as well.  When v = -u any unit
    imaginary orthogonal to u anticommutes with it and serves instead.
    """
    if not similarity_check(c1, c2):
        raise ValueError("elements are not similar; no witness exists")
    algebra = c1.algebra
    beta = 0.5 * (c1.imag_norm() + c2.imag_norm())
    if beta <= SIM_TOL or (c1 - c2).norm() <= SIM_TOL * (1.0 + c1.norm()):
        return Element.one(algebra)
    u = c1.im / c1.imag_norm()
    v = c2.im / c2.imag_norm()
    w = u + v
    wn = np.linalg.norm(w)
    if wn > 1e-6:
        direction = w / wn
    else:
        # Antipodal imaginary parts: pick the basis direction least aligned
        # with u and orthogonalize (for c2 on the -e1 axis this yields e2).
        b = int(np.argmin(np.abs(u)))
        q = np.zeros(algebra.imag_dim)
        q[b] = 1.0
        q -= (q @ u) * u
        direction = q / np.linalg.norm(q)
    coords = np.zeros(algebra.dim)
    coords[1:] = direction
    eta = Element(algebra, coords)
    residual = (c1 * eta - eta * c2).norm()
    if residual > RES_TOL * (1.0 + c1.norm()):
        raise ValueError(f"witness residual {residual:.3e} out of tolerance")
    return eta


def nth_root(a: Element, n: int) -> Element:
    """A solution of t^n = a (principal branch).

    The root is taken inside the commutative plane spanned by 1 and the
    imaginary direction of ``a`` (the e1 axis when ``a`` is real), where the
    problem reduces to the principal complex n-th root with argument in
    (-pi, pi].
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return Element(a.algebra, a.coords.copy())
    alpha, beta = complex_representative(a)
    if alpha == 0.0 and beta == 0.0:
        return Element.zero(a.algebra)
    r = math.hypot(alpha, beta)
    theta = math.atan2(beta, alpha)  # beta >= 0, so theta lies in [0, pi]
    w = r ** (1.0 / n) * cmath.exp(1j * theta / n)
    if beta > 0.0:
        u = a.im / beta
    else:
        u = np.zeros(a.algebra.imag_dim)
        u[0] = 1.0
    coords = np.zeros(a.algebra.dim)
    coords[0] = w.real
    coords[1:] = w.imag * u
    return Element(a.algebra, coords)


def random_element(algebra: Algebra, rng: np.random.Generator, scale: float = 1.0) -> Element:
    """Element with independent N(0, scale^2) coordinates."""
    return Element(algebra, rng.normal(0.0, scale, algebra.dim))
