"""
Unit tests for the prewavelet app.
Tests cover:
- The stationary B-spline Gramian and its quadrature oracle
- Transfer matrices and the level order of the iteration
- Convergence, symmetry and sign pattern of g^(3,m)
- Prewavelet masks, orthogonality and vanishing moments
- The Celery column task
"""
import pickle

import numpy as np
from django.test import SimpleTestCase

from apps.laurent.polynomial import LaurentPoly
from apps.masks.services import MaskFamily
from apps.prewavelet.constants import PRINTED_GRAMIAN, PRINTED_GRAMIAN_MU
from apps.prewavelet.services import (
    _transfer,
    correlation,
    cross_mask,
    gramian_in_pou_units,
    gramian_quadrature,
    gramian_support,
    haar_wavelet,
    orthogonality_residual,
    prewavelet_gramian,
    prewavelet_mask,
    sample_prewavelet,
    stationary_cross_gramian,
    transfer_matrix,
    vanishing_moments_residual,
)
from apps.prewavelet.tasks import gramian_column
from apps.refinable.services import CascadeConfig, bspline_samples
from ripplets.exceptions import DimensionError, IterationLimitError

MU = 1.1


class StationaryGramianTests(SimpleTestCase):
    """Test M^(n) from the spline identity."""

    def test_support_and_sum(self):
        """Test M^(3) lives on [-7, 3] and sums to 2."""
        M = stationary_cross_gramian(3)
        self.assertEqual(M.support, (-7, 3))
        self.assertAlmostEqual(M.total(), 2.0, places=12)

    def test_symmetry(self):
        """Test g_alpha = g_(-n-1-alpha)."""
        for n in (2, 3, 4):
            M = stationary_cross_gramian(n)
            for alpha in range(-2 * n - 1, n + 1):
                self.assertAlmostEqual(M[alpha], M[-n - 1 - alpha], places=14)

    def test_central_value(self):
        """Test M^(3)_-2 = 2 * 24264 / 80640."""
        self.assertAlmostEqual(stationary_cross_gramian(3)[-2], 48528 / 80640, places=12)

    def test_disjoint_supports(self):
        """Test entries far outside the support vanish."""
        M = stationary_cross_gramian(2)
        self.assertEqual(M[10], 0.0)
        self.assertEqual(M[-12], 0.0)

    def test_level_scaling(self):
        """Test the level-l vector is 2^l M^(n)."""
        np.testing.assert_allclose(stationary_cross_gramian(3, 2).values, 4.0 * stationary_cross_gramian(3).values)

    def test_matches_quadrature(self):
        """Test M^(3) against trapezoid quadrature of sampled B-splines."""
        quadrature = correlation(bspline_samples(3, 0, 12), bspline_samples(3, 1, 12), 1, (-7, 3))
        M = stationary_cross_gramian(3)
        self.assertLess((quadrature - M).max_abs(), 1e-8)


class TransferMatrixTests(SimpleTestCase):
    """Test the transfer matrices C^(n,m)."""

    def test_cross_mask_supports(self):
        """Test c lives on [-2(n+1), n+1], or [-2, n+1] at level 0."""
        family = MaskFamily(3, MU)
        self.assertEqual(cross_mask(family, 1).support, (-8, 4))
        self.assertEqual(cross_mask(family, 0).support, (-2, 4))

    def test_shapes(self):
        """Test the matrix dimensions follow the Gramian supports."""
        self.assertEqual(transfer_matrix(3, 0, MU).shape, (8, 11))
        self.assertEqual(transfer_matrix(3, 1, MU).shape, (11, 11))

    def test_row_sums(self):
        """Test rows covering the whole of c sum to one."""
        matrix = transfer_matrix(3, 1, MU, col_support=(-20, 20))
        np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-14)

    def test_support_mismatch(self):
        """Test a row support not covering sigma_g."""
        with self.assertRaises(DimensionError):
            transfer_matrix(3, 1, MU, row_support=(-3, 3))


class GramianIterationTests(SimpleTestCase):
    """Test the iterative Gramian algorithm."""

    def test_level_zero(self):
        """Test g^(3,0): support, positivity, symmetry and sum."""
        g = prewavelet_gramian(3, 0, MU).gramian
        self.assertEqual(g.support, gramian_support(3, 0))
        self.assertTrue(np.all(g.values > 0))
        np.testing.assert_allclose(g.values, g.values[::-1], atol=1e-10)
        self.assertAlmostEqual(g.total(), 2.0, places=9)

    def test_printed_sign_pattern(self):
        """Test the printed g^(3,0) list has the signs of d_(alpha+1)."""
        g = prewavelet_gramian(3, 0, PRINTED_GRAMIAN_MU).gramian
        d = prewavelet_mask(g)
        for alpha, printed in PRINTED_GRAMIAN.items():
            self.assertEqual(np.sign(d[alpha + 1]), np.sign(printed), msg=f'alpha={alpha}')

    def test_level_one(self):
        """Test g^(3,1) symmetry and sum rule 2^(m+1)."""
        g = prewavelet_gramian(3, 1, MU).gramian
        self.assertEqual(g.support, (-7, 3))
        for alpha in range(-7, 4):
            self.assertAlmostEqual(g[alpha], g[-4 - alpha], places=9)
        self.assertAlmostEqual(g.total(), 4.0, places=9)

    def test_pou_units(self):
        """Test the rescaled vector sums to one."""
        for m in (0, 2):
            g = prewavelet_gramian(3, m, MU).gramian
            self.assertAlmostEqual(gramian_in_pou_units(g, m).total() * 2 ** m, 1.0, places=9)

    def test_refinement_consistency(self):
        """Test g^(m) = C^(m) g^(m+1) for independently computed levels."""
        for m in (0, 1, 2):
            coarse = prewavelet_gramian(3, m, MU).gramian
            fine = prewavelet_gramian(3, m + 1, MU).gramian
            refined = transfer_matrix(3, m, MU) @ fine.coefficients(*gramian_support(3, m + 1))
            np.testing.assert_allclose(refined, coarse.coefficients(*gramian_support(3, m)), atol=1e-9)

    def test_reversed_level_order_is_inconsistent(self):
        """Test multiplying by decreasing levels misses g^(3,1)."""
        family = MaskFamily(3, MU)
        support = gramian_support(3, 1)
        depth = 40
        reversed_product = stationary_cross_gramian(3, 1 + depth).values
        for level in range(1, 1 + depth):
            reversed_product = _transfer(cross_mask(family, level), support, support) @ reversed_product
        g = prewavelet_gramian(3, 1, MU).gramian
        self.assertGreater(float(np.max(np.abs(reversed_product - g.values))), 1e-6)

    def test_stationary_family_is_fixed_point(self):
        """Test the fundamental masks reproduce 2^m M^(n) at once."""
        result = prewavelet_gramian(3, 2, MU, stationary=True)
        self.assertEqual(result.iterations, 1)
        self.assertLess((result.gramian - stationary_cross_gramian(3, 2)).max_abs(), 1e-12)

    def test_large_tension_is_nearly_stationary(self):
        """Test mu = 8 at level 2 is close to the stationary vector."""
        g = prewavelet_gramian(3, 2, 8.0).gramian
        self.assertLess((g / 4.0 - stationary_cross_gramian(3)).max_abs(), 1e-2)

    def test_increments_decrease(self):
        """Test the iteration increments are nonincreasing after a few steps."""
        trace = prewavelet_gramian(3, 0, MU).trace
        tail = [r for r in trace[3:] if r > 1e-13]
        self.assertTrue(all(b <= a for a, b in zip(tail, tail[1:])), tail)

    def test_iteration_limit(self):
        """Test a tolerance out of reach raises with the last residual."""
        with self.assertRaises(IterationLimitError) as ctx:
            prewavelet_gramian(3, 0, MU, max_iter=2, tol=1e-16)
        self.assertEqual(ctx.exception.iterations, 2)
        self.assertGreater(ctx.exception.residual, 0.0)

    def test_matches_quadrature(self):
        """Test g^(3,m) against quadrature of cascade samples."""
        for m in (0, 1):
            g = prewavelet_gramian(3, m, MU).gramian
            quadrature = gramian_quadrature(3, m, MU, CascadeConfig(k=10))
            self.assertLess((g - quadrature).max_abs(), 1e-5)


class PrewaveletMaskTests(SimpleTestCase):
    """Test d_alpha = (-1)^alpha g_(alpha-1)."""

    def test_single_entry(self):
        """Test g = delta_0 gives d = -z."""
        d = prewavelet_mask(LaurentPoly.monomial(0, 1.0))
        self.assertEqual(d, LaurentPoly.monomial(1, -1.0))

    def test_supports(self):
        """Test d lives on [-3, 4] at level 0 and [-6, 4] above."""
        self.assertEqual(prewavelet_mask(prewavelet_gramian(3, 0, MU).gramian).support, (-3, 4))
        self.assertEqual(prewavelet_mask(prewavelet_gramian(3, 1, MU).gramian).support, (-6, 4))

    def test_orthogonality(self):
        """Test sum_alpha d_alpha g_(2 beta - alpha) vanishes."""
        for n in (2, 3, 4):
            for m in (0, 1, 2):
                with self.subTest(n=n, m=m):
                    g = prewavelet_gramian(n, m, MU).gramian
                    self.assertLess(orthogonality_residual(prewavelet_mask(g), g), 1e-9)

    def test_stationary_orthogonality(self):
        """Test the spline prewavelet."""
        g = prewavelet_gramian(3, 0, MU, stationary=True).gramian
        self.assertLess(orthogonality_residual(prewavelet_mask(g), g), 1e-12)


class SampledPrewaveletTests(SimpleTestCase):
    """Test sampled prewavelets."""

    def test_level_zero_support(self):
        """Test supp psi^(3,0) lies in [-3/2, 4]."""
        lo, hi = sample_prewavelet(3, 0, MU).support_interval(1e-10)
        self.assertGreaterEqual(lo, -1.5)
        self.assertLessEqual(hi, 4.0)

    def test_level_one_support(self):
        """Test supp psi^(3,1) lies in [-3/2, 2]."""
        lo, hi = sample_prewavelet(3, 1, MU).support_interval(1e-10)
        self.assertGreaterEqual(lo, -1.5)
        self.assertLessEqual(hi, 2.0)

    def test_vanishing_moments(self):
        """Test two vanishing moments for n = 3 once the mask leaves Haar."""
        cfg = CascadeConfig(k=8)
        for m in (1, 2):
            with self.subTest(m=m):
                moments = vanishing_moments_residual(sample_prewavelet(3, m, MU, cfg, 12), 2)
                self.assertEqual(len(moments), 3)
                self.assertLess(moments[0], 1e-6)
                self.assertLess(moments[1], 1e-6)
                if m == 1:
                    self.assertGreater(moments[2], 1e-3)

    def test_level_zero_single_vanishing_moment(self):
        """Test psi^(3,0) over the Haar mask keeps only the zeroth moment."""
        moments = vanishing_moments_residual(sample_prewavelet(3, 0, MU, CascadeConfig(k=8), 12), 1)
        self.assertLess(moments[0], 1e-6)
        self.assertGreater(moments[1], 1e-2)

    def test_orthogonal_to_coarse_translates(self):
        """Test psi^(3,0) is orthogonal to phi^(3,0)(x - j) by quadrature."""
        from apps.refinable.services import cascade
        cfg = CascadeConfig(k=10)
        psi = sample_prewavelet(3, 0, MU, cfg)
        phi = cascade(MaskFamily(3, MU), 0, cfg.k, psi.K)
        products = correlation(psi, phi, 0, (-4, 4))
        self.assertLess(products.max_abs(), 1e-5)

    def test_haar(self):
        """Test the Haar wavelet has a zero mean."""
        self.assertAlmostEqual(vanishing_moments_residual(haar_wavelet(8), 0)[0], 0.0, places=12)


class GramianTaskTests(SimpleTestCase):
    """Test the Celery column task."""

    def test_eager_column(self):
        """Test the task returns serializable Gramian data."""
        payload = gramian_column.apply(args=(3, 0, MU, 64, 1e-12)).get()
        self.assertEqual(payload['offset'], -4)
        self.assertEqual(len(payload['values']), 8)
        self.assertAlmostEqual(sum(payload['pou_values']), 1.0, places=9)

    def test_failed_column_keeps_error_type(self):
        """Test an iteration-limit failure reaches the caller as IterationLimitError."""
        with self.assertRaises(IterationLimitError) as ctx:
            gramian_column.delay(3, 0, MU, 1, 1e-16).get()
        self.assertEqual(ctx.exception.iterations, 1)

    def test_error_pickles(self):
        """Test residual and iteration count survive pickling for worker results."""
        error = pickle.loads(pickle.dumps(IterationLimitError('stopped', 0.5, 3)))
        self.assertEqual((str(error), error.residual, error.iterations), ('stopped', 0.5, 3))
