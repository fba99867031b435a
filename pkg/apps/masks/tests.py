"""
Unit tests for the masks app.
Tests cover:
- Mask coefficients against the printed reference table
- Symmetry, sum, monotone interior and the Haar level
- Symbol factorization and negative symbol zeros
- Summable deviation from the fundamental mask
- Transition matrices and their spectrum
"""
import numpy as np
from django.test import SimpleTestCase

from apps.laurent.polynomial import LaurentPoly
from apps.masks.constants import PRINTED_MASKS, PRINTED_MASKS_MU, PRINTED_MASKS_ORDER
from apps.masks.services import (
    HAAR_MASK,
    MaskFamily,
    MaskParams,
    autocorrelation,
    fundamental_deviation,
    fundamental_mask,
    mask_symbol,
    matches_printed,
    nonstationary_mask,
    pascal_row,
    quadratic_factor,
    ripplet_mask,
    symbol_zeros_negative,
    transition_matrix,
    transition_spectrum,
)
from ripplets.exceptions import DimensionError, ParameterDomainError


class MaskParamsTests(SimpleTestCase):
    """Test parameter validation."""

    def test_rejects_low_order(self):
        """Test n < 2 is rejected."""
        with self.assertRaises(ParameterDomainError):
            MaskParams(1, 1, 1.1)

    def test_rejects_tension_at_most_one(self):
        """Test mu <= 1 is rejected."""
        with self.assertRaises(ParameterDomainError):
            MaskParams(3, 1, 1.0)

    def test_rejects_negative_level(self):
        """Test m < 0 is rejected."""
        with self.assertRaises(ParameterDomainError):
            MaskParams(3, -1, 1.1)


class MaskCoefficientTests(SimpleTestCase):
    """Test the nonstationary mask formula."""

    def test_pascal_row(self):
        """Test binomial rows."""
        self.assertEqual(pascal_row(4), [1, 4, 6, 4, 1])
        self.assertEqual(pascal_row(0), [1])

    def test_reference_table(self):
        """Test a_0, a_1, a_2 of a^(3,m) against the printed table."""
        for m, expected in PRINTED_MASKS.items():
            mask = nonstationary_mask(MaskParams(PRINTED_MASKS_ORDER, m, PRINTED_MASKS_MU))
            for alpha, value in enumerate(expected):
                self.assertTrue(matches_printed(mask[alpha], value), msg=f'm={m} alpha={alpha}: {mask[alpha]}')

    def test_printed_rounding_boundary(self):
        """Test half a unit in the fourth digit matches and anything wider does not."""
        self.assertTrue(matches_printed(1 / 32, 0.0313))
        self.assertTrue(matches_printed(0.03125, 0.0312))
        self.assertFalse(matches_printed(0.03124, 0.0313))
        self.assertFalse(matches_printed(0.25006, 0.2500))

    def test_level_one_exact(self):
        """Test a^(3,1) = {1, 8, 14, 8, 1} / 32."""
        mask = nonstationary_mask(MaskParams(3, 1, 1.1))
        np.testing.assert_allclose(mask.values, np.array([1, 8, 14, 8, 1]) / 32, atol=1e-15)

    def test_level_zero_is_haar(self):
        """Test level 0 returns the Haar mask."""
        self.assertEqual(nonstationary_mask(MaskParams(5, 0, 2.0)), HAAR_MASK)

    def test_sum_and_symmetry(self):
        """Test sum 1, support [0, n+1] and symmetry."""
        for n in (2, 3, 4, 6):
            for m in (1, 2, 5, 17):
                mask = nonstationary_mask(MaskParams(n, m, 1.3))
                self.assertAlmostEqual(mask.total(), 1.0, places=13)
                self.assertEqual(mask.support, (0, n + 1))
                np.testing.assert_array_equal(mask.values, mask.values[::-1])

    def test_even_and_odd_sums_are_half(self):
        """Test the sum rule on both cosets."""
        mask = nonstationary_mask(MaskParams(4, 3, 1.1))
        even, odd = mask.even_odd_split()
        self.assertAlmostEqual(even.total(), 0.5, places=13)
        self.assertAlmostEqual(odd.total(), 0.5, places=13)

    def test_strictly_increasing_to_center(self):
        """Test the entries increase up to the middle for m > 0."""
        for n in (2, 3, 5):
            mask = nonstationary_mask(MaskParams(n, 2, 1.1))
            head = [mask[alpha] for alpha in range((n + 1) // 2 + 1)]
            self.assertTrue(all(b > a for a, b in zip(head, head[1:])), head)

    def test_fundamental_mask(self):
        """Test the binomial mask."""
        np.testing.assert_allclose(fundamental_mask(3).values, np.array([1, 4, 6, 4, 1]) / 16)


class SymbolTests(SimpleTestCase):
    """Test the symbol factorization."""

    def test_haar_factor_raises_order(self):
        """Test A^(0) A^(2,1) = A^(3,1)."""
        product = HAAR_MASK * nonstationary_mask(MaskParams(2, 1, 1.1))
        self.assertLess((product - nonstationary_mask(MaskParams(3, 1, 1.1))).max_abs(), 1e-14)

    def test_quadratic_factorization(self):
        """Test A = 2^-(n+1+t) (1+z)^(n-1) Q(z)."""
        n, m, mu = 4, 3, 1.1
        t = m ** -mu
        binomial = LaurentPoly(0, [1.0, 1.0])
        product = LaurentPoly(0, [1.0])
        for _ in range(n - 1):
            product = product * binomial
        product = product * quadratic_factor(n, m, mu) * 2.0 ** -(n + 1 + t)
        self.assertLess((product - nonstationary_mask(MaskParams(n, m, mu))).max_abs(), 1e-14)

    def test_quadratic_factor_needs_positive_level(self):
        """Test m = 0 has no quadratic factor."""
        with self.assertRaises(ParameterDomainError):
            quadratic_factor(3, 0, 1.1)

    def test_zeros_are_negative(self):
        """Test the quadratic factor has two negative real zeros."""
        for m in (1, 2, 10, 100):
            self.assertTrue(symbol_zeros_negative(3, m, 1.1))

    def test_mask_symbol(self):
        """Test symbols of the Haar, fundamental and zero masks."""
        self.assertEqual(mask_symbol(HAAR_MASK), LaurentPoly(0, [0.5, 0.5]))
        quartic = LaurentPoly(0, [1.0, 1.0]) * LaurentPoly(0, [1.0, 1.0])
        expected = quartic * quartic / 16.0
        self.assertLess((mask_symbol(fundamental_mask(3)) - expected).max_abs(), 1e-15)
        self.assertTrue(mask_symbol(LaurentPoly.zero()).is_zero)

    def test_symbol_vanishes_at_minus_one(self):
        """Test A(-1) = 0."""
        mask = nonstationary_mask(MaskParams(3, 4, 1.1))
        self.assertAlmostEqual(abs(mask.at(-1.0)), 0.0, places=14)


class DeviationTests(SimpleTestCase):
    """Test convergence of the masks to the fundamental mask."""

    def test_deviation_strictly_decreasing(self):
        """Test the distance to a^(n) decreases with m."""
        deviations = [fundamental_deviation(3, m, 1.1) for m in range(1, 41)]
        self.assertTrue(all(b < a for a, b in zip(deviations, deviations[1:])))

    def test_partial_sums_grow_sublinearly(self):
        """Test doubling the number of levels far less than doubles the sum."""
        partial = np.cumsum([fundamental_deviation(3, m, 1.1) for m in range(1, 65)])
        self.assertLess(partial[63] / partial[31], 1.5)


class TransitionTests(SimpleTestCase):
    """Test autocorrelation and transition matrices."""

    def test_autocorrelation_of_haar(self):
        """Test ǎ for Haar."""
        acorr = autocorrelation(HAAR_MASK)
        self.assertEqual(acorr.support, (-1, 1))
        np.testing.assert_allclose(acorr.values, [0.25, 0.5, 0.25])

    def test_matrix_shape(self):
        """Test the default index range is the autocorrelation support."""
        matrix = transition_matrix(fundamental_mask(3))
        self.assertEqual(matrix.shape, (9, 9))

    def test_short_range_rejected(self):
        """Test an index range not covering the support."""
        with self.assertRaises(DimensionError):
            transition_matrix(fundamental_mask(3), (-2, 2))

    def test_fundamental_spectrum(self):
        """Test eigenvalue 1 dominates and its eigenvector is positive."""
        spectrum = transition_spectrum(fundamental_mask(3))
        self.assertAlmostEqual(spectrum.spectral_radius, 1.0, places=10)
        self.assertAlmostEqual(abs(spectrum.eigenvalues[0]), 1.0, places=10)
        fixed = spectrum.fixed_vector
        self.assertTrue(np.all(fixed[1:-1] > 0))
        self.assertLess(max(abs(fixed[0]), abs(fixed[-1])), 1e-12)
        self.assertAlmostEqual(float(np.sum(fixed)), 1.0, places=12)

    def test_fixed_vector_symmetric(self):
        """Test the fixed vector is symmetric."""
        fixed = transition_spectrum(fundamental_mask(2)).fixed_vector
        np.testing.assert_allclose(fixed, fixed[::-1], atol=1e-12)


class MaskFamilyTests(SimpleTestCase):
    """Test the level -> mask provider."""

    def test_nonstationary_family(self):
        """Test the family delegates to the level formula."""
        family = MaskFamily(3, 1.1)
        self.assertEqual(family(4), ripplet_mask(3, 4, 1.1))
        self.assertEqual(family(0), HAAR_MASK)

    def test_stationary_family(self):
        """Test the stationary family ignores the level."""
        family = MaskFamily(3, stationary=True)
        self.assertEqual(family(0), fundamental_mask(3))
        self.assertEqual(family(7), fundamental_mask(3))

    def test_lower_order(self):
        """Test lowering the order keeps the tension."""
        self.assertEqual(MaskFamily(3, 1.2).lower(), MaskFamily(2, 1.2))

    def test_negative_level_rejected(self):
        """Test negative levels."""
        with self.assertRaises(ParameterDomainError):
            MaskFamily(3)(-1)
