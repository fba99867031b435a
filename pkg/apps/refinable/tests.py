"""
Unit tests for the refinable app.
Tests cover:
- Exact B-spline evaluation and sampled B-splines
- Cascade support, positivity, normalization and convergence
- Partition of unity, convolution and derivative rules
- Bell shape, polynomial reproduction and the stability symbol
"""
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from apps.masks.services import MaskFamily, MaskParams
from apps.refinable.constants import InitialFunction
from apps.refinable.services import (
    CascadeConfig,
    SampledFunction,
    bell_shape_check,
    box_samples,
    bspline_evaluate,
    bspline_samples,
    cascade,
    cascade_evaluate,
    cascade_increments,
    convolution_check,
    convolve,
    derivative_rule_residual,
    partition_of_unity_residual,
    polynomial_reproduction_residual,
    stability_spectrum,
)
from ripplets.exceptions import ParameterDomainError, ResolutionError, StabilityError

MU = 1.1


class BSplineTests(SimpleTestCase):
    """Test the exact B-spline oracle."""

    def test_box_value(self):
        """Test B^(0,0)(1/2) = 1."""
        self.assertAlmostEqual(bspline_evaluate(0, 0, 0.5), 1.0)

    def test_hat_peak(self):
        """Test B^(1,0)(1) = 1."""
        self.assertAlmostEqual(bspline_evaluate(1, 0, 1.0), 1.0)

    def test_cubic_centre(self):
        """Test B^(3,0)(2) = 2/3."""
        self.assertAlmostEqual(bspline_evaluate(3, 0, 2.0), 2.0 / 3.0, places=12)

    def test_dilation(self):
        """Test B^(n,m)(x) = 2^m B^(n,0)(2^m x)."""
        x = np.linspace(0.05, 0.95, 7)
        np.testing.assert_allclose(bspline_evaluate(3, 2, x), 4.0 * bspline_evaluate(3, 0, 4.0 * x), atol=1e-12)

    def test_outside_support_is_zero(self):
        """Test values outside [0, n+1] vanish."""
        self.assertEqual(bspline_evaluate(2, 0, -0.5), 0.0)
        self.assertEqual(bspline_evaluate(2, 0, 3.5), 0.0)

    def test_unit_integral(self):
        """Test sampled B-splines integrate to 1."""
        for n, m in ((1, 0), (3, 0), (3, 2)):
            self.assertAlmostEqual(bspline_samples(n, m, 10).integral(), 1.0, places=6)

    def test_rejects_negative_degree(self):
        """Test n < 0."""
        with self.assertRaises(ParameterDomainError):
            bspline_evaluate(-1, 0, 0.5)


class CascadeTests(SimpleTestCase):
    """Test the nonstationary cascade."""

    def test_support_level_zero(self):
        """Test supp phi^(3,0) lies in [0, 5/2]."""
        phi = cascade_evaluate(MaskParams(3, 0, MU))
        lo, hi = phi.support_interval(1e-10)
        self.assertGreaterEqual(lo, 0.0)
        self.assertLessEqual(hi, 2.5)

    def test_support_level_one(self):
        """Test supp phi^(3,1) lies in [0, 2]."""
        phi = cascade_evaluate(MaskParams(3, 1, MU))
        lo, hi = phi.support_interval(1e-10)
        self.assertGreaterEqual(lo, 0.0)
        self.assertLessEqual(hi, 2.0)

    def test_narrower_than_cubic_bspline(self):
        """Test phi^(3,0) is visibly more localized than B^(3,0)."""
        phi = cascade_evaluate(MaskParams(3, 0, MU))
        self.assertLess(phi.support_interval(1e-10)[1], 3.0)
        self.assertAlmostEqual(bspline_samples(3, 0, 10).support_interval()[1], 4.0, delta=1e-2)

    def test_nonnegative_with_unit_integral(self):
        """Test positivity and normalization."""
        for m in (0, 1, 2):
            phi = cascade_evaluate(MaskParams(3, m, MU))
            self.assertGreaterEqual(float(np.min(phi.values)), -1e-9)
            self.assertAlmostEqual(phi.integral(), 1.0, delta=1e-6)

    def test_stationary_cascade_matches_bspline(self):
        """Test the fundamental-mask cascade reproduces B^(3,m)."""
        family = MaskFamily(3, stationary=True)
        for m in (0, 1):
            phi = cascade(family, m, 8, m + 10)
            self.assertLess(phi.distance(bspline_samples(3, m, m + 10)), 1e-3)

    def test_iterates_converge_geometrically(self):
        """Test successive cascade increments shrink by a fixed ratio."""
        family = MaskFamily(3, MU)
        for m in (0, 1, 2):
            increments = cascade_increments(family, m, range(4, 9), m + 10)
            ratios = [b / a for a, b in zip(increments, increments[1:])]
            self.assertTrue(all(r < 0.6 for r in ratios), ratios)

    def test_box_start(self):
        """Test the box start keeps the unit integral."""
        phi = cascade_evaluate(MaskParams(3, 1, MU), CascadeConfig(k=6, initial=InitialFunction.BOX))
        self.assertAlmostEqual(phi.integral(), 1.0, places=12)

    def test_resolution_too_small(self):
        """Test K < m + k raises."""
        with self.assertRaises(ResolutionError):
            cascade_evaluate(MaskParams(3, 1, MU), CascadeConfig(k=8), K=8)

    def test_config_validation(self):
        """Test k >= 1 and a known start."""
        with self.assertRaises(ParameterDomainError):
            CascadeConfig(k=0)
        with self.assertRaises(ParameterDomainError):
            CascadeConfig(initial='gauss')


class PartitionOfUnityTests(SimpleTestCase):
    """Test the partition of unity residual."""

    def test_exact_box(self):
        """Test the box has zero residual."""
        self.assertAlmostEqual(partition_of_unity_residual(box_samples(0, 6), 0), 0.0, places=14)

    def test_exact_hat(self):
        """Test the hat has zero residual."""
        self.assertAlmostEqual(partition_of_unity_residual(bspline_samples(1, 0, 6), 0), 0.0, places=14)

    def test_ripplet(self):
        """Test phi^(3,m) at k = 8 on the first three levels."""
        for m in (0, 1, 2):
            with self.subTest(m=m):
                phi = cascade_evaluate(MaskParams(3, m, MU))
                self.assertLess(partition_of_unity_residual(phi, m), 1e-6)

    def test_wrong_level_detected(self):
        """Test translates at the wrong spacing do not sum to one."""
        phi = cascade_evaluate(MaskParams(3, 1, MU))
        self.assertGreater(partition_of_unity_residual(phi, 0), 0.1)


class ConvolutionTests(SimpleTestCase):
    """Test the convolution property."""

    def test_levels(self):
        """Test n=3 at k=8, K=12 for m = 0, 1, 2; m = 0 uses B^(0,1)."""
        for m in (0, 1, 2):
            with self.subTest(m=m):
                self.assertLess(convolution_check(3, m, MU, CascadeConfig(k=8), K=12), 1e-4)

    def test_stationary_box_squared(self):
        """Test B^(0,0) * B^(0,0) = B^(1,0) away from the knots."""
        K = 8
        product = convolve(box_samples(0, K), box_samples(0, K))
        hat = bspline_samples(1, 0, K)
        knots = np.isin(hat.grid(), [0.0, 1.0, 2.0])
        difference = product.dense(hat.start, hat.end) - hat.values
        self.assertLess(float(np.max(np.abs(difference[~knots]))), 1e-10)

    def test_low_order_rejected(self):
        """Test n < 3."""
        with self.assertRaises(ParameterDomainError):
            convolution_check(2, 1, MU)


class DerivativeRuleTests(SimpleTestCase):
    """Test the differentiation rule."""

    def test_first_derivative(self):
        """Test n=3, r=1 for m = 0, 1, 2; m = 0 steps by h = 1/2."""
        for m in (0, 1, 2):
            with self.subTest(m=m):
                self.assertLess(derivative_rule_residual(3, m, MU, 1, K=12), 1e-2)

    def test_second_derivative(self):
        """Test n=3, m=1, r=2."""
        self.assertLess(derivative_rule_residual(3, 1, MU, 2), 1e-2)

    def test_identity_case(self):
        """Test r = 0."""
        self.assertEqual(derivative_rule_residual(3, 1, MU, 0), 0.0)

    def test_order_too_high(self):
        """Test r > n - 1."""
        with self.assertRaises(ParameterDomainError):
            derivative_rule_residual(3, 1, MU, 3)


class BellShapeTests(SimpleTestCase):
    """Test the bell-shape check."""

    def test_ripplet(self):
        """Test phi^(3,m) is bell shaped for m = 0, 1, 2."""
        for m in (0, 1, 2):
            with self.subTest(m=m):
                self.assertTrue(bell_shape_check(cascade_evaluate(MaskParams(3, m, MU))))

    def test_hat(self):
        """Test the hat counts as bell shaped."""
        self.assertTrue(bell_shape_check(bspline_samples(1, 0, 6)))

    def test_sawtooth(self):
        """Test an asymmetric ramp is rejected."""
        ramp = SampledFunction(6, 0, np.concatenate([np.linspace(0.0, 1.0, 60), [0.0]]))
        self.assertFalse(bell_shape_check(ramp))

    def test_two_bumps(self):
        """Test a symmetric double bump is rejected."""
        x = np.linspace(0.0, 1.0, 65)
        bumps = SampledFunction(6, 0, np.sin(2 * np.pi * x) ** 2)
        self.assertFalse(bell_shape_check(bumps))


class PolynomialReproductionTests(SimpleTestCase):
    """Test polynomial reproduction by translates."""

    def test_constants(self):
        """Test d = 0 matches the partition of unity level."""
        self.assertLess(polynomial_reproduction_residual(3, 1, MU, 0), 1e-6)

    def test_linears(self):
        """Test n=3, m=1, d=1."""
        self.assertLess(polynomial_reproduction_residual(3, 1, MU, 1), 1e-4)

    def test_quadratics_negative_control(self):
        """Test d = n - 1 is not reproduced."""
        self.assertGreater(polynomial_reproduction_residual(3, 1, MU, 2), 1e-4)

    def test_level_zero_rejected(self):
        """Test m = 0."""
        with self.assertRaises(ParameterDomainError):
            polynomial_reproduction_residual(3, 0, MU, 1)

    @mock.patch('apps.refinable.services.np.linalg.matrix_rank', return_value=0)
    def test_singular_collocation(self, mock_rank):
        """Test a rank-deficient collocation raises."""
        with self.assertRaises(StabilityError):
            polynomial_reproduction_residual(3, 1, MU, 1, CascadeConfig(k=4))


class StabilitySpectrumTests(SimpleTestCase):
    """Test the autocorrelation symbol."""

    def test_box(self):
        """Test the orthonormal box gives rho close to 1."""
        spectrum = stability_spectrum(box_samples(0, 8), 0)
        self.assertGreater(spectrum.minimum, 0.0)
        self.assertAlmostEqual(spectrum.maximum, 1.0, delta=1e-2)
        self.assertAlmostEqual(spectrum.minimum, 1.0, delta=1e-2)

    def test_ripplet(self):
        """Test phi^(3,1) has a positive symbol with rho(0) = 2."""
        spectrum = stability_spectrum(cascade_evaluate(MaskParams(3, 1, MU)), 1)
        self.assertGreater(spectrum.minimum, 0.0)
        self.assertAlmostEqual(spectrum.at_zero, 2.0, delta=0.04)
        self.assertAlmostEqual(spectrum.maximum, spectrum.at_zero, places=10)

    def test_grid_size(self):
        """Test the default grid covers one period with 256 points."""
        spectrum = stability_spectrum(box_samples(0, 4), 0)
        self.assertEqual(spectrum.omega.size, 256)
        self.assertLess(spectrum.omega[-1], 2 * np.pi)
