import numpy as np
import pytest

from hcpoly.algebra import (
    OCTONIONS,
    QUATERNIONS,
    Element,
    matrix_rep,
    random_element,
    similarity_witness,
)
from hcpoly.jacobian import (
    block_matrix_a,
    det_identity_lhs,
    det_identity_rhs,
    det_sign,
    exact_jacobian,
    exact_jacobian_many,
    fd_jacobian,
    jacobian_sign,
    lemma_matrix_check,
    row_norm_scale,
)
from hcpoly.polynomial import Polynomial

H, O = QUATERNIONS, OCTONIONS
I, J, K = (Element.unit(H, n) for n in (1, 2, 3))


def unit_ball_element(algebra, rng):
    v = rng.normal(size=algebra.dim)
    v *= rng.random() ** (1.0 / algebra.dim) / np.linalg.norm(v)
    return Element(algebra, v)


def _fraction_det(mat):
    """Fraction-exact determinant by Gaussian elimination with pivoting."""
    from fractions import Fraction

    mat = [row[:] for row in mat]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col] == 0:
                continue
            factor = mat[r][col] * inv
            for c in range(col, n):
                mat[r][c] -= factor * mat[col][c]
    return det


class TestBlockMatrix:
    def test_squares_to_minus_identity(self):
        for dim in (4, 8):
            a = block_matrix_a(dim)
            assert np.array_equal(a @ a, -np.eye(dim))

    def test_is_right_multiplication_by_e1(self, algebra):
        a = block_matrix_a(algebra.dim)
        e1 = Element.unit(algebra, 1)
        for k in range(algebra.dim):
            ek = Element.unit(algebra, k)
            assert np.array_equal(a @ ek.coords, (ek * e1).coords)


class TestExactJacobian:
    def test_linear_shift_is_identity(self, algebra, rng):
        f = Polynomial.linear_factor(random_element(algebra, rng))
        t = random_element(algebra, rng)
        assert np.array_equal(exact_jacobian(f, t), np.eye(algebra.dim))

    def test_square_at_one(self, algebra):
        f = Polynomial.monomial(algebra, 2)
        jac = exact_jacobian(f, Element.one(algebra))
        assert np.allclose(jac, 2 * np.eye(algebra.dim), atol=0)
        assert np.isclose(np.linalg.det(jac), 2.0 ** algebra.dim)

    def test_real_poly_at_real_point_is_scalar(self, algebra, rng):
        f = Polynomial.from_real_coeffs(algebra, rng.normal(size=5))
        r = float(rng.normal())
        jac = exact_jacobian(f, Element.real(algebra, r))
        assert np.allclose(jac, jac[0, 0] * np.eye(algebra.dim), atol=1e-12)

    def test_batch_matches_scalar(self, algebra, rng):
        f = Polynomial(algebra, rng.normal(size=(6, algebra.dim)))
        pts = rng.normal(size=(30, algebra.dim))
        batch = exact_jacobian_many(f, pts)
        for s in range(30):
            scalar = exact_jacobian(f, Element(algebra, pts[s]))
            assert np.max(np.abs(batch[s] - scalar)) <= 1e-10


class TestFiniteDifference:
    def test_constant_map(self, algebra):
        constant = lambda t: Element.one(algebra)
        jac = fd_jacobian(constant, Element.one(algebra))
        assert np.max(np.abs(jac)) <= 1e-12

    def test_linear_map_recovered(self, algebra, rng):
        c = random_element(algebra, rng)
        func = lambda t: c * t
        t = random_element(algebra, rng)
        assert np.max(np.abs(fd_jacobian(func, t) - matrix_rep(c))) <= 1e-9

    def test_agreement_with_exact(self, algebra, rng):
        worst = 0.0
        for _ in range(500):
            deg = int(rng.integers(1, 7))
            f = Polynomial(algebra, rng.normal(size=(deg + 1, algebra.dim)))
            t = unit_ball_element(algebra, rng)
            worst = max(worst, float(np.max(np.abs(exact_jacobian(f, t) - fd_jacobian(f, t)))))
        assert worst <= 1e-6


class TestPowerMatrixLemma:
    @pytest.mark.parametrize("name", ["H", "O"])
    def test_k_range(self, name):
        for k in range(13):
            assert lemma_matrix_check(k, name)

    def test_base_case_is_identity(self, algebra):
        coeffs = np.zeros((2, algebra.dim))
        coeffs[1, 0] = 1.0
        coeffs[0, 1] = -1.0
        f = Polynomial(algebra, coeffs)  # t - e1
        assert np.array_equal(exact_jacobian(f, Element.unit(algebra, 1)), np.eye(algebra.dim))

    def test_k2_is_minus_identity(self, algebra):
        a = block_matrix_a(algebra.dim)
        assert np.array_equal(np.linalg.matrix_power(a, 2), -np.eye(algebra.dim))


class TestDeterminantIdentity:
    def test_at_zero_and_e1(self):
        assert det_identity_rhs(Element.zero(O)) == 1.0
        assert det_identity_rhs(Element.unit(O, 1)) == 0.0
        assert abs(det_identity_lhs(Element.unit(O, 1))) <= 1e-12

    def test_matches_determinant(self, rng):
        worst = 0.0
        for _ in range(5000):
            c = random_element(O, rng, scale=float(rng.choice([0.3, 1.0, 3.0])))
            lhs = det_identity_lhs(c)
            rhs = det_identity_rhs(c)
            assert rhs >= 0.0
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        assert worst <= 1e-9

    def test_zero_exactly_at_imaginary_units(self, rng):
        for _ in range(500):
            v = rng.normal(size=7)
            v /= np.linalg.norm(v)
            c = Element(O, np.concatenate(([0.0], v)))
            assert abs(det_identity_rhs(c)) <= 1e-12
            assert abs(det_identity_lhs(c)) <= 1e-9
        # near-misses stay positive
        for _ in range(200):
            v = rng.normal(size=7)
            v *= (1.0 + rng.choice([-0.05, 0.05])) / np.linalg.norm(v)
            c = Element(O, np.concatenate(([0.0], v)))
            assert det_identity_rhs(c) > 1e-6

    def test_exact_rational_oracle(self, rng):
        # re-derive the identity in exact rational arithmetic: both sides are
        # polynomials in the coordinates, so exact agreement at random
        # rational points certifies the closed form (no float tolerance)
        from fractions import Fraction

        a_int = block_matrix_a(8).astype(int)
        for _ in range(40):
            coords = [Fraction(int(x), int(y)) for x, y in
                      zip(rng.integers(-9, 10, 8), rng.integers(1, 7, 8))]
            # matrix of I + L(c) A over Fractions
            lmat = [[Fraction(0)] * 8 for _ in range(8)]
            for i in range(8):
                if coords[i] == 0:
                    continue
                for jcol in range(8):
                    lmat[O.tab_index[i, jcol]][jcol] += int(O.tab_sign[i, jcol]) * coords[i]
            mat = [
                [
                    (Fraction(1) if r == c else Fraction(0))
                    + sum(lmat[r][m] * a_int[m][c] for m in range(8))
                    for c in range(8)
                ]
                for r in range(8)
            ]
            det = _fraction_det(mat)
            gn2 = sum(x * x for x in coords[1:])
            cn2 = coords[0] * coords[0] + gn2
            rhs = ((1 + cn2) ** 2 - 4 * gn2) * (1 + 2 * coords[1] + cn2) ** 2
            assert det == rhs

    def test_quaternion_nonnegativity_no_closed_form(self, rng):
        # the 4x4 analogue is verified numerically only
        a = block_matrix_a(4)
        for _ in range(2000):
            c = random_element(H, rng)
            det = np.linalg.det(np.eye(4) + matrix_rep(c) @ a)
            assert det >= -1e-9 * (1 + c.norm()) ** 4


class TestSigns:
    def test_linear_always_positive(self, algebra, rng):
        f = Polynomial.linear_factor(random_element(algebra, rng))
        assert jacobian_sign(f, random_element(algebra, rng)) == 1

    def test_double_root_zero(self):
        one = Element.one(H)
        f = Polynomial.from_linear_factors(H, [one, one])
        assert jacobian_sign(f, one) == 0

    def test_cubic_multiple_root_is_zero(self):
        # (t+k)(t+j)(t+i) has -j ~ -i killing the quotient on the class, so
        # the single root -i is multiple and the Jacobian determinant vanishes
        f = Polynomial.from_linear_factors(H, [-I, -J, -K])
        jac = exact_jacobian(f, -I)
        assert abs(np.linalg.det(jac)) <= 1e-12 * max(row_norm_scale(jac), 1.0)
        assert jacobian_sign(f, -I) == 0

    def test_nonnegativity_random_sweep(self, algebra, rng):
        for _ in range(2000):
            deg = int(rng.integers(1, 7))
            f = Polynomial(algebra, rng.normal(size=(deg + 1, algebra.dim)))
            t = random_element(algebra, rng)
            jac = exact_jacobian(f, t)
            det = np.linalg.det(jac)
            assert det >= -1e-9 * max(row_norm_scale(jac), 1e-300)


class TestStructureAtE1:
    @staticmethod
    def _alternating_sums(g):
        b_even = np.zeros(g.algebra.dim)
        b_odd = np.zeros(g.algebra.dim)
        for k in range(g.coeffs.shape[0]):
            if k % 2 == 0:
                b_even += (-1) ** (k // 2) * g.coeffs[k]
            else:
                b_odd += (-1) ** ((k - 1) // 2) * g.coeffs[k]
        return b_even, b_odd

    def test_even_odd_decomposition_quaternions(self, rng):
        # f = g*(t - e1) has J(f)(e1) = L[B_even] + L[B_odd] @ A with the
        # alternating sums of g's coefficients; needs L to be multiplicative,
        # so it is a quaternion identity
        a = block_matrix_a(4)
        e1 = Element.unit(H, 1)
        for _ in range(50):
            deg = int(rng.integers(0, 5))
            g = Polynomial(H, rng.normal(size=(deg + 1, 4)))
            f = g * Polynomial.linear_factor(e1)
            b_even, b_odd = self._alternating_sums(g)
            expected = H.left_matrix(b_even) + H.left_matrix(b_odd) @ a
            jac = exact_jacobian(f, e1)
            assert np.max(np.abs(jac - expected)) <= 1e-10 * (1 + np.max(np.abs(expected)))

    def test_even_odd_decomposition_fails_over_octonions(self, rng):
        # L(b * e1) != L(b) L(e1) over O, so the same display is not an
        # octonion identity (the zero-locus conclusion below still is)
        a = block_matrix_a(8)
        e1 = Element.unit(O, 1)
        gaps = []
        for _ in range(20):
            g = Polynomial(O, rng.normal(size=(4, 8)))
            f = g * Polynomial.linear_factor(e1)
            b_even, b_odd = self._alternating_sums(g)
            expected = O.left_matrix(b_even) + O.left_matrix(b_odd) @ a
            gaps.append(np.max(np.abs(exact_jacobian(f, e1) - expected)))
        assert max(gaps) > 1e-3

    def test_zero_locus_with_planted_unit(self, algebra, rng):
        e1 = Element.unit(algebra, 1)
        for _ in range(50):
            b1 = random_element(algebra, rng)
            if b1.norm() < 1e-3:
                continue
            v = rng.normal(size=algebra.imag_dim)
            v /= np.linalg.norm(v)
            delta = Element(algebra, np.concatenate(([0.0], v)))
            b0 = -(b1 * delta)
            g = Polynomial(algebra, [b0.coords, b1.coords])
            f = g * Polynomial.linear_factor(e1)
            jac = exact_jacobian(f, e1)
            assert abs(np.linalg.det(jac)) <= 1e-8 * max(row_norm_scale(jac), 1e-300)
            assert g(delta).norm() <= 1e-12 * (1 + b1.norm())
            # generic constant term: determinant strictly positive
            g2 = Polynomial(algebra, [random_element(algebra, rng).coords, b1.coords])
            f2 = g2 * Polynomial.linear_factor(e1)
            sign = det_sign(exact_jacobian(f2, e1))
            assert sign >= 0

    def test_conjugation_preserves_determinant(self, algebra, rng):
        # u(t) = eta^-1 t eta is orthogonal, so |J(f o u)| = |J(f)| at
        # corresponding points
        for _ in range(25):
            f = Polynomial(algebra, rng.normal(size=(4, algebra.dim)))
            c = random_element(algebra, rng)
            if c.imag_norm() < 1e-6:
                continue
            target = Element(
                algebra,
                np.concatenate(([c.re], [c.imag_norm()], np.zeros(algebra.dim - 2))),
            )
            eta = similarity_witness(c, target)
            eta_inv = eta.inverse()

            def composed(t):
                return f(eta_inv * (t * eta))

            x = random_element(algebra, rng)
            lhs = np.linalg.det(fd_jacobian(composed, x, h=1e-6))
            rhs = np.linalg.det(exact_jacobian(f, eta_inv * (x * eta)))
            assert abs(lhs - rhs) <= 1e-4 * (1 + abs(rhs))
