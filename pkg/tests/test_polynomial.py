import numpy as np
import pytest

from hcpoly import realpoly
from hcpoly.algebra import OCTONIONS, QUATERNIONS, Element, random_element
from hcpoly.polynomial import GeneralMonomial, Polynomial, pointwise_product

H, O = QUATERNIONS, OCTONIONS
I, J, K = (Element.unit(H, n) for n in (1, 2, 3))


def lone_root_cubic(algebra=H):
    """(t + k)(t + j)(t + i) = t^3 + (i+j+k)t^2 + (-i+j-k)t + 1."""
    return Polynomial.from_linear_factors(
        algebra,
        [-Element.unit(algebra, 1), -Element.unit(algebra, 2), -Element.unit(algebra, 3)],
    )


def mul_by_coordinate_formula(f, g):
    """The 4-coordinate product formula, used as an independent oracle."""
    f0, f1, f2, f3 = f.coords
    g0, g1, g2, g3 = g.coords
    return np.array(
        [
            f0 * g0 - f1 * g1 - f2 * g2 - f3 * g3,
            f0 * g1 + f1 * g0 + f2 * g3 - f3 * g2,
            f0 * g2 + f2 * g0 + f3 * g1 - f1 * g3,
            f0 * g3 + f3 * g0 + f1 * g2 - f2 * g1,
        ]
    )


class TestEvaluate:
    def test_imaginary_unit_root_of_t2_plus_1(self):
        f = Polynomial.from_real_coeffs(H, [1, 0, 1])
        assert f(J).norm() == 0.0
        v = np.array([0.0, 0.6, 0.0, 0.8])
        assert f(Element(H, v)).norm() <= 1e-15

    def test_cubic_at_minus_i_and_minus_j(self):
        f = lone_root_cubic()
        assert f(-I).norm() == 0.0
        # hand expansion: (-j)^3 + (i+j+k)(-j)^2 + (-i+j-k)(-j) + 1 = 2 - 2i
        value = f(-J)
        assert np.array_equal(value.coords, [2.0, -2.0, 0.0, 0.0])

    def test_convolution_coefficients_match_display(self):
        f = lone_root_cubic()
        expected = np.array(
            [[1, 0, 0, 0], [0, -1, 1, -1], [0, 1, 1, 1], [1, 0, 0, 0]], dtype=float
        )
        assert np.array_equal(f.coeffs, expected)

    def test_right_side_evaluation(self, rng):
        c = random_element(H, rng)
        left = Polynomial(H, [c.coords, H.coerce(1.0)], side="left")
        right = Polynomial(H, [c.coords, H.coerce(1.0)], side="right")
        t = random_element(H, rng)
        assert left(t).isclose(right(t), 1e-12)  # degree-1 sides agree
        q = random_element(H, rng)
        left2 = Polynomial(H, [np.zeros(4), q.coords], side="left")
        right2 = Polynomial(H, [np.zeros(4), q.coords], side="right")
        assert left2(t).isclose(q * t, 1e-12)
        assert right2(t).isclose(t * q, 1e-12)

    def test_batch_matches_scalar(self, algebra, rng):
        f = Polynomial(algebra, rng.normal(size=(5, algebra.dim)))
        pts = rng.normal(size=(40, algebra.dim))
        batch = f.evaluate_many(pts)
        for s in range(pts.shape[0]):
            assert np.max(np.abs(batch[s] - f(Element(algebra, pts[s])).coords)) <= 1e-12


class TestGeneralMonomial:
    def test_degree_one_identity(self, algebra, rng):
        mono = GeneralMonomial(algebra, [1.0, 1.0])
        for _ in range(10):
            t = random_element(algebra, rng)
            assert mono(t).isclose(t, 1e-14)

    def test_flat_monomial_sum_at_one(self):
        # i*1*j + j*1*i - 1 = k + (-k) - 1 = -1
        a = GeneralMonomial(H, [I, 1.0, J])
        b = GeneralMonomial(H, [J, 1.0, I])
        total = a(Element.one(H)) + b(Element.one(H)) - 1
        assert total == Element.real(H, -1.0)

    def test_trees_equal_over_quaternions(self, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 4))
            coeffs = rng.normal(size=(n + 1, 4))
            t = random_element(H, rng)
            left = GeneralMonomial(H, coeffs)
            # right-nested alternative tree
            tree = 2 * n
            for leaf in range(2 * n - 1, -1, -1):
                tree = (leaf, tree)
            right = GeneralMonomial(H, coeffs, tree)
            assert left(t).isclose(right(t), 1e-9)

    def test_trees_can_differ_over_octonions(self, rng):
        coeffs = rng.normal(size=(3, 8))
        t = random_element(O, rng)
        left = GeneralMonomial(O, coeffs)
        tree = (0, (1, (2, (3, 4))))
        right = GeneralMonomial(O, coeffs, tree)
        assert not left(t).isclose(right(t), 1e-6)

    def test_bad_tree_rejected(self):
        with pytest.raises(ValueError):
            GeneralMonomial(H, [1.0, 1.0], tree=(1, 0))  # out of order
        with pytest.raises(ValueError):
            GeneralMonomial(H, [1.0, 1.0], tree=(0, 1))  # missing leaf
        with pytest.raises(ValueError):
            GeneralMonomial(H, [1.0, 1.0], tree=((0, 1), (1, 2)))  # duplicate

    def test_batch_matches_scalar(self, algebra, rng):
        coeffs = rng.normal(size=(3, algebra.dim))
        mono = GeneralMonomial(algebra, coeffs)
        pts = rng.normal(size=(25, algebra.dim))
        batch = mono.evaluate_many(pts)
        for s in range(25):
            assert np.max(np.abs(batch[s] - mono(Element(algebra, pts[s])).coords)) <= 1e-12


class TestConvolutionProduct:
    def test_difference_of_conjugate_factors(self):
        f = Polynomial.linear_factor(I) * Polynomial.linear_factor(-I)
        # (t-i)(t+i): c1 = (-i)*1 + 1*i = 0, c0 = (-i)*i = 1 -> t^2+1
        g = Polynomial.linear_factor(-I) * Polynomial.linear_factor(I)
        expected = Polynomial.from_real_coeffs(H, [1, 0, 1])
        assert f == expected and g == expected

    def test_multiply_by_one(self, algebra, rng):
        f = Polynomial(algebra, rng.normal(size=(4, algebra.dim)))
        assert f * Polynomial.from_real_coeffs(algebra, [1]) == f

    def test_associative_and_distributive(self, algebra, rng):
        # coefficient products reassociate only over the quaternions, so the
        # formal product is associative there and merely distributive over O
        for _ in range(50):
            fs = [
                Polynomial(algebra, rng.normal(size=(int(rng.integers(1, 6)) + 1, algebra.dim)))
                for _ in range(3)
            ]
            f, g, h = fs
            if algebra is H:
                assert ((f * g) * h).isclose(f * (g * h), 1e-10)
            assert (f * (g + h)).isclose(f * g + f * h, 1e-10)

    def test_nonassociative_over_octonions(self, rng):
        hits = 0
        for _ in range(20):
            f, g, h = (Polynomial(O, rng.normal(size=(2, 8))) for _ in range(3))
            if not ((f * g) * h).isclose(f * (g * h), 1e-10):
                hits += 1
        assert hits > 0

    def test_side_mismatch(self):
        f = Polynomial.from_real_coeffs(H, [1, 1], side="left")
        g = Polynomial.from_real_coeffs(H, [1, 1], side="right")
        with pytest.raises(ValueError):
            f * g


class TestPointwiseProduct:
    def test_square_map(self, algebra, rng):
        t_poly = Polynomial.variable(algebra)
        square = pointwise_product(t_poly, t_poly)
        for _ in range(20):
            c = random_element(algebra, rng)
            assert square(c).isclose(c * c, 1e-12)

    def test_disagrees_with_convolution(self):
        f = Polynomial.linear_factor(I)
        g = Polynomial.linear_factor(J)
        conv = f * g
        pw = pointwise_product(f, g)
        # at 0 both give i*j = k
        assert pw(Element.zero(H)) == Element(H, [0, 0, 0, 1])
        assert Element(H, conv.coeffs[0]) == Element(H, [0, 0, 0, 1])
        # at i the pointwise product vanishes, the convolution does not
        assert pw(I).norm() == 0.0
        gap = (conv(I) - pw(I)).norm()
        assert gap >= 0.1

    def test_coordinate_formula(self, rng):
        for _ in range(1000):
            a = random_element(H, rng)
            b = random_element(H, rng)
            assert np.max(np.abs(mul_by_coordinate_formula(a, b) - (a * b).coords)) <= 1e-12


class TestConjugateAndNorm:
    def test_conjugate_examples(self):
        f = Polynomial.linear_factor(I)  # t - i
        assert f.conjugate() == Polynomial.linear_factor(-I)
        assert f.conjugate().conjugate() == f
        g = Polynomial.from_real_coeffs(O, [1, 2, 3])
        assert g.conjugate() == g

    def test_norm_poly_examples(self):
        f = Polynomial.linear_factor(I)
        assert np.array_equal(f.norm_poly(), [1.0, 0.0, 1.0])
        g = Polynomial.from_real_coeffs(H, [1, 0, 1])
        assert np.array_equal(g.norm_poly(), np.convolve([1, 0, 1], [1, 0, 1]))

    def test_norm_poly_degree_and_values(self, algebra, rng):
        for _ in range(300):
            deg = int(rng.integers(1, 6))
            f = Polynomial(algebra, rng.normal(size=(deg + 1, algebra.dim)))
            npoly = f.norm_poly()
            assert realpoly.degree(npoly) == 2 * deg
            x = float(rng.normal())
            fx = f(Element.real(algebra, x)).norm()
            assert abs(realpoly.polyval(npoly, x) - fx * fx) <= 1e-9 * (1 + fx * fx)

    def test_norm_poly_nonnegative_on_reals(self, rng):
        f = Polynomial(O, rng.normal(size=(4, 8)))
        xs = np.linspace(-10, 10, 201)
        assert np.all(realpoly.polyval(f.norm_poly(), xs) >= -1e-12)

    def test_real_factor_multiplicativity(self, algebra, rng):
        f = Polynomial(algebra, rng.normal(size=(4, algebra.dim)))
        q = Polynomial.from_real_coeffs(algebra, [2.0, 0.0, 1.0])  # t^2 + 2, real
        lhs = (q * f).norm_poly()
        rhs = np.convolve(np.convolve([2.0, 0.0, 1.0], [2.0, 0.0, 1.0]), f.norm_poly())
        assert np.max(np.abs(lhs - rhs)) <= 1e-9


class TestDivision:
    def test_divide_linear_examples(self):
        f = Polynomial.from_real_coeffs(H, [1, 0, 1])
        g, r = f.divide_linear(I)
        assert g == Polynomial(H, [I.coords, H.coerce(1.0)])  # t + i
        assert r.norm() == 0.0
        cubic = lone_root_cubic()
        _, r = cubic.divide_linear(-I)
        assert r.norm() == 0.0
        t_poly = Polynomial.variable(H)
        g, r = t_poly.divide_linear(Element.one(H))
        assert g == Polynomial.from_real_coeffs(H, [1]) and r == Element.one(H)

    def test_remainder_equals_value(self, algebra, rng):
        for _ in range(300):
            deg = int(rng.integers(1, 6))
            f = Polynomial(algebra, rng.normal(size=(deg + 1, algebra.dim)))
            c = random_element(algebra, rng)
            g, r = f.divide_linear(c)
            rebuilt = g * Polynomial.linear_factor(c) + r
            assert rebuilt.isclose(f, 1e-10 * (1 + f.coeff_scale()))
            assert (r - f(c)).norm() <= 1e-10 * (1 + f(c).norm())

    def test_remainder_equals_value_right_side(self, rng):
        for _ in range(100):
            f = Polynomial(O, rng.normal(size=(4, 8)), side="right")
            c = random_element(O, rng)
            g, r = f.divide_linear(c)
            rebuilt = Polynomial.linear_factor(c, side="right") * g + r
            assert rebuilt.isclose(f, 1e-10 * (1 + f.coeff_scale()))
            assert (r - f(c)).norm() <= 1e-10 * (1 + f(c).norm())

    def test_divide_characteristic_examples(self):
        f = Polynomial.from_real_coeffs(H, [1, 0, 1])
        h, r1, r0 = f.divide_characteristic(0.0, 1.0)
        assert h == Polynomial.from_real_coeffs(H, [1])
        assert r1.norm() == 0.0 and r0.norm() == 0.0
        cubed = Polynomial.monomial(H, 3)
        h, r1, r0 = cubed.divide_characteristic(0.0, 1.0)
        assert h == Polynomial.variable(H)
        assert r1 == Element.real(H, -1.0) and r0.norm() == 0.0
        q = Polynomial.from_real_coeffs(H, [5.0, -4.0, 1.0])  # (alpha,beta)=(2,1)
        h, r1, r0 = q.divide_characteristic(2.0, 1.0)
        assert h == Polynomial.from_real_coeffs(H, [1])
        assert r1.norm() == 0.0 and r0.norm() == 0.0

    def test_divide_characteristic_reconvolution(self, algebra, rng):
        for _ in range(300):
            deg = int(rng.integers(2, 7))
            f = Polynomial(algebra, rng.normal(size=(deg + 1, algebra.dim)))
            alpha, beta = rng.normal(), abs(rng.normal())
            h, r1, r0 = f.divide_characteristic(alpha, beta)
            q = Polynomial.from_real_coeffs(
                algebra, [alpha**2 + beta**2, -2 * alpha, 1.0]
            )
            rebuilt = h * q + Polynomial(algebra, [r0.coords, r1.coords])
            assert rebuilt.isclose(f, 1e-9 * (1 + f.coeff_scale()))


class TestPrimitivity:
    def test_examples(self):
        assert not Polynomial.from_real_coeffs(H, [1, 0, 1]).is_primitive()
        assert Polynomial.linear_factor(I).is_primitive()
        spherical_times_linear = Polynomial.from_real_coeffs(H, [1, 0, 1]) * Polynomial.linear_factor(J)
        assert not spherical_times_linear.is_primitive()

    def test_generic_is_primitive(self, algebra, rng):
        for _ in range(50):
            f = Polynomial(algebra, rng.normal(size=(4, algebra.dim)))
            assert f.is_primitive()

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            Polynomial(H, [np.zeros(4)]).is_primitive()


class TestStructure:
    def test_degree_sentinel(self):
        assert Polynomial(H, [np.zeros(4)]).degree == -1
        assert Polynomial.from_real_coeffs(H, [3]).degree == 0
        assert Polynomial.from_real_coeffs(H, [3, 0, 0]).degree == 0  # trimmed

    def test_shift_identity(self, algebra, rng):
        f = Polynomial(algebra, rng.normal(size=(5, algebra.dim)))
        t0 = float(rng.normal())
        g = f.shifted(t0)
        for _ in range(10):
            t = random_element(algebra, rng)
            lhs = g(t)
            rhs = f(t + t0)
            assert lhs.isclose(rhs, 1e-9 * (1 + rhs.norm()))

    def test_json_round_trip(self, algebra, rng):
        f = Polynomial(algebra, rng.normal(size=(3, algebra.dim)), side="right")
        assert Polynomial.from_json(f.to_json()) == f
