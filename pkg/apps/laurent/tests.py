"""
Unit tests for the Laurent polynomial app.
Tests cover:
- Canonical form and support bookkeeping
- Ring arithmetic (add, mul) and its algebraic laws
- The substitutions z -> -z, z -> 1/z and the even/odd split
- Evaluation on the unit circle
"""
import numpy as np
from django.test import SimpleTestCase

from apps.laurent.polynomial import (
    LaurentPoly,
    add,
    mul,
    subst_neg,
    subst_recip,
    even_odd_split,
    eval_unit_circle,
    max_coefficient_distance,
)


def random_poly(rng, max_len=7):
    length = int(rng.integers(1, max_len + 1))
    offset = int(rng.integers(-4, 5))
    values = rng.uniform(-1.0, 1.0, size=length)
    values[0] = values[0] or 0.5
    values[-1] = values[-1] or 0.5
    return LaurentPoly(offset, values)


class CanonicalFormTests(SimpleTestCase):
    """Test canonical trimming and support."""

    def test_zero_is_empty_at_offset_zero(self):
        """Test the canonical zero."""
        p = LaurentPoly(5, [0.0, 0.0])
        self.assertTrue(p.is_zero)
        self.assertEqual(p.offset, 0)
        self.assertIsNone(p.support)

    def test_trims_ends_only(self):
        """Test that interior zeros survive canonicalization."""
        p = LaurentPoly(-2, [0.0, 1.0, 0.0, 2.0, 0.0])
        self.assertEqual(p.support, (-1, 1))
        self.assertEqual(p.values.tolist(), [1.0, 0.0, 2.0])

    def test_relative_threshold(self):
        """Test that entries below 1e-14 of the largest are trimmed."""
        p = LaurentPoly(0, [1e-16, 1.0, 1e-15])
        self.assertEqual(p.support, (1, 1))

    def test_values_are_read_only(self):
        """Test immutability of stored coefficients."""
        p = LaurentPoly(0, [1.0, 2.0])
        with self.assertRaises(ValueError):
            p.values[0] = 3.0

    def test_value_at_one_is_sum(self):
        """Test that evaluation at z=1 equals the plain sum."""
        p = LaurentPoly(-3, [0.25, -1.0, 2.0])
        self.assertAlmostEqual(p.at(1.0).real, p.total(), places=14)


class ArithmeticTests(SimpleTestCase):
    """Test add and mul."""

    def test_cancellation(self):
        """Test (z) + (-z) = 0."""
        z = LaurentPoly.monomial(1)
        self.assertTrue(add(z, -z).is_zero)

    def test_hand_sum(self):
        """Test (1+z) + (z+z^2) = 1 + 2z + z^2."""
        p = add(LaurentPoly(0, [1, 1]), LaurentPoly(1, [1, 1]))
        self.assertEqual(p, LaurentPoly(0, [1, 2, 1]))

    def test_additive_identity(self):
        """Test p + 0 = p."""
        p = LaurentPoly(-1, [3.0, 0.5])
        self.assertEqual(add(p, LaurentPoly.zero()), p)

    def test_binomial_square(self):
        """Test ((1+z)/2)^2 = (1 + 2z + z^2)/4."""
        half = LaurentPoly(0, [0.5, 0.5])
        self.assertEqual(mul(half, half), LaurentPoly(0, [0.25, 0.5, 0.25]))

    def test_multiplicative_identity(self):
        """Test p * 1 = p."""
        p = LaurentPoly(2, [1.0, -2.0, 4.0])
        self.assertEqual(mul(p, LaurentPoly.monomial(0)), p)

    def test_support_is_minkowski_sum(self):
        """Test that the product support adds the factor supports."""
        p = LaurentPoly(-2, [1.0, 1.0])
        q = LaurentPoly(3, [1.0, 0.0, 1.0])
        self.assertEqual(mul(p, q).support, (1, 4))

    def test_commutative_and_associative(self):
        """Test ring laws on random triples."""
        rng = np.random.default_rng(7)
        for _ in range(20):
            p, q, r = random_poly(rng), random_poly(rng), random_poly(rng)
            pq, qp = mul(p, q), mul(q, p)
            self.assertLess(max_coefficient_distance(pq, qp), 1e-13 * max(pq.max_abs(), 1.0))
            left, right = mul(mul(p, q), r), mul(p, mul(q, r))
            self.assertLess(max_coefficient_distance(left, right), 1e-13 * max(left.max_abs(), 1.0))

    def test_evaluation_is_multiplicative(self):
        """Test eval(p*q) = eval(p) * eval(q) on random frequencies."""
        rng = np.random.default_rng(11)
        omegas = rng.uniform(-np.pi, np.pi, size=16)
        for _ in range(10):
            p, q = random_poly(rng), random_poly(rng)
            lhs = eval_unit_circle(mul(p, q), omegas)
            rhs = eval_unit_circle(p, omegas) * eval_unit_circle(q, omegas)
            self.assertLess(np.max(np.abs(lhs - rhs)), 1e-12)


class SubstitutionTests(SimpleTestCase):
    """Test z -> -z, z -> 1/z and the even/odd split."""

    def test_subst_neg(self):
        """Test 1+z -> 1-z."""
        self.assertEqual(subst_neg(LaurentPoly(0, [1, 1])), LaurentPoly(0, [1, -1]))

    def test_subst_neg_keeps_even_polynomial(self):
        """Test that even polynomials are fixed by z -> -z."""
        p = LaurentPoly(-2, [1.0, 0.0, 3.0, 0.0, 1.0])
        self.assertEqual(subst_neg(p), p)

    def test_subst_neg_on_odd_terms(self):
        """Test z^-1 + z -> -z^-1 - z."""
        p = LaurentPoly(-1, [1.0, 0.0, 1.0])
        self.assertEqual(subst_neg(p), LaurentPoly(-1, [-1.0, 0.0, -1.0]))

    def test_subst_recip(self):
        """Test z^2 -> z^-2."""
        self.assertEqual(subst_recip(LaurentPoly.monomial(2)), LaurentPoly.monomial(-2))

    def test_subst_recip_keeps_symmetric(self):
        """Test that a polynomial symmetric about 0 is fixed by z -> 1/z."""
        p = LaurentPoly(-1, [0.25, 0.5, 0.25])
        self.assertEqual(subst_recip(p), p)

    def test_involutions(self):
        """Test that both substitutions are involutions."""
        rng = np.random.default_rng(3)
        for _ in range(10):
            p = random_poly(rng)
            self.assertEqual(subst_neg(subst_neg(p)), p)
            self.assertEqual(subst_recip(subst_recip(p)), p)

    def test_even_odd_of_one_plus_z(self):
        """Test 1+z -> (1, 1)."""
        pe, po = even_odd_split(LaurentPoly(0, [1, 1]))
        self.assertEqual(pe, LaurentPoly.monomial(0))
        self.assertEqual(po, LaurentPoly.monomial(0))

    def test_even_odd_of_z_squared(self):
        """Test z^2 -> (z, 0)."""
        pe, po = even_odd_split(LaurentPoly.monomial(2))
        self.assertEqual(pe, LaurentPoly.monomial(1))
        self.assertTrue(po.is_zero)

    def test_even_odd_recomposition(self):
        """Test p(z) = p_e(z^2) + z p_o(z^2) for random p."""
        rng = np.random.default_rng(5)
        for _ in range(20):
            p = random_poly(rng)
            pe, po = even_odd_split(p)
            recomposed = pe.upsample(2) + po.upsample(2).shift(1)
            self.assertEqual(recomposed, p)


class UnitCircleTests(SimpleTestCase):
    """Test evaluation at e^{-i omega}."""

    def test_haar_symbol_at_zero_and_pi(self):
        """Test A(0) = 1 and A(pi) = 0 for the Haar mask."""
        haar = LaurentPoly(0, [0.5, 0.5])
        self.assertAlmostEqual(abs(eval_unit_circle(haar, 0.0) - 1), 0.0, places=15)
        self.assertAlmostEqual(abs(eval_unit_circle(haar, np.pi)), 0.0, places=15)

    def test_array_input_keeps_shape(self):
        """Test vectorized evaluation."""
        p = LaurentPoly(-1, [1.0, 2.0, 1.0])
        out = eval_unit_circle(p, np.zeros((2, 3)))
        self.assertEqual(out.shape, (2, 3))
        self.assertTrue(np.allclose(out, 4.0))
