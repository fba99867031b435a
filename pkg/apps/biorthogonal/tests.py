"""
Unit tests for the biorthogonal app.
Tests cover:
- Bezout solving, alignment and failure modes
- The closed-form duals for n = 3 and the printed dual table
- Highpass filters, the filter convention and the PR identities
- Dual cascades, sampled wavelets and the Celery column task
"""
import numpy as np
from django.test import SimpleTestCase

from apps.biorthogonal.constants import PRINTED_DUALS
from apps.biorthogonal.services import (
    DualMaskFamily,
    FilterConvention,
    FilterQuartet,
    bezout_delay,
    bezout_residual,
    bezout_solve,
    closed_form_dual_n3,
    default_dual_support,
    filter_quartet,
    pr_identity_residual,
    sample_biorthogonal_wavelet,
    sample_dual_refinable,
    sample_dual_wavelet,
    printed_dual_comparison,
    wavelet_filters,
)
from apps.biorthogonal.tasks import dual_mask_column
from apps.laurent.polynomial import LaurentPoly
from apps.masks.services import HAAR_MASK, fundamental_mask, ripplet_mask
from apps.refinable.services import CascadeConfig
from ripplets.exceptions import BezoutError, ParameterDomainError

MU = 1.1


class BezoutSolveTests(SimpleTestCase):
    """Test the linear Bezout solver."""

    def test_haar(self):
        """Test a = {1/2, 1/2}, L = 1 gives {1/2, 1/2}."""
        self.assertLess((bezout_solve(HAAR_MASK, 1) - LaurentPoly(0, [0.5, 0.5])).max_abs(), 1e-15)

    def test_haar_without_symmetry(self):
        """Test the unreduced system has the same Haar solution."""
        dual = bezout_solve(HAAR_MASK, 1, symmetric=False)
        np.testing.assert_allclose(dual.coefficients(0, 1), [0.5, 0.5], atol=1e-14)

    def test_level_one_entries(self):
        """Test ã^(3,1) on [0, 14]."""
        dual = bezout_solve(ripplet_mask(3, 1, MU), 14)
        self.assertEqual(dual.support, (0, 14))
        self.assertAlmostEqual(dual[0], 0.0011, places=4)
        self.assertAlmostEqual(dual[7], 0.8019, places=4)

    def test_symmetry_and_sum(self):
        """Test ã_alpha = ã_(14-alpha) and sum ã = 1."""
        for m in (1, 3, 6):
            dual = bezout_solve(ripplet_mask(3, m, MU), 14)
            for alpha in range(15):
                self.assertEqual(dual[alpha], dual[14 - alpha])
            self.assertAlmostEqual(dual.total(), 1.0, places=12)

    def test_aligned_identity(self):
        """Test the delayed dual solves the identity exactly."""
        a = ripplet_mask(3, 2, MU)
        dual = bezout_solve(a, 14)
        self.assertLess(bezout_residual(a, dual.shift(-5)), 1e-10)
        self.assertGreater(bezout_residual(a, dual), 1e-2)

    def test_other_orders(self):
        """Test n = 2 and n = 4 at the default support."""
        for n in (2, 4):
            a = ripplet_mask(n, 1, MU)
            L = default_dual_support(n, 1)
            dual = bezout_solve(a, L)
            self.assertAlmostEqual(dual.total(), 1.0, places=10)

    def test_odd_offset_rejected(self):
        """Test L - N odd cannot be aligned."""
        with self.assertRaises(BezoutError):
            bezout_solve(ripplet_mask(3, 1, MU), 13)

    def test_short_support_solvable(self):
        """Test L = 2 for a^(3,1) gives {-1/6, 4/3, -1/6}."""
        a = ripplet_mask(3, 1, MU)
        dual = bezout_solve(a, 2)
        np.testing.assert_allclose(dual.coefficients(0, 2), [-1 / 6, 4 / 3, -1 / 6], atol=1e-12)
        self.assertEqual(bezout_delay(a, 2), -1)
        self.assertLess(bezout_residual(a, dual.shift(1)), 1e-10)

    def test_inconsistent_system(self):
        """Test a mask sharing a root with its modulation has no dual."""
        with self.assertRaises(BezoutError) as ctx:
            bezout_solve(LaurentPoly(0, [0.5, 0.0, 0.5]), 2)
        self.assertGreater(ctx.exception.residual, 1e-10)
        self.assertTrue(np.isfinite(ctx.exception.residual))

    def test_bad_support(self):
        """Test L < 1."""
        with self.assertRaises(ParameterDomainError):
            bezout_solve(HAAR_MASK, 0)


class ClosedFormTests(SimpleTestCase):
    """Test the explicit n = 3 duals."""

    def test_level_one_exact(self):
        """Test m = 1 against the exact rational values."""
        numerators = [26752, -214016, 167296, 1443840, -2038656, -5028864, 8136064, 20180992]
        dual = closed_form_dual_n3(1, MU)
        for alpha, numerator in enumerate(numerators):
            self.assertAlmostEqual(dual[alpha], numerator / 25165824, places=14)

    def test_level_two(self):
        """Test ã^(3,2)_1."""
        self.assertAlmostEqual(closed_form_dual_n3(2, MU)[1], -0.0114, places=4)

    def test_matches_solver(self):
        """Test the solver reproduces the closed form for m = 1..8."""
        for m in range(1, 9):
            difference = bezout_solve(ripplet_mask(3, m, MU), 14) - closed_form_dual_n3(m, MU)
            self.assertLess(difference.max_abs(), 1e-9, msg=f'm={m}')

    def test_level_zero_rejected(self):
        """Test m = 0."""
        with self.assertRaises(ParameterDomainError):
            closed_form_dual_n3(0, MU)


class DualTableTests(SimpleTestCase):
    """Test the printed dual-mask table."""

    def test_asserted_entries_match(self):
        """Test every non-excluded entry to four digits."""
        entries = printed_dual_comparison()
        mismatches = [e for e in entries if e.status == 'mismatch']
        self.assertEqual(mismatches, [])
        self.assertEqual(len(entries), 8 * len(PRINTED_DUALS))

    def test_excluded_entries(self):
        """Test column 5 and (2, 5) are reported as excluded and really differ."""
        entries = {(e.m, e.alpha): e for e in printed_dual_comparison()}
        self.assertEqual(entries[(2, 5)].status, 'excluded')
        self.assertAlmostEqual(entries[(2, 5)].printed, 2 * entries[(2, 5)].computed, delta=1e-3)
        self.assertEqual(entries[(5, 7)].status, 'excluded')
        self.assertGreater(entries[(5, 7)].difference, 0.5)

    def test_level_zero_column(self):
        """Test the Haar dual column is {1/2, 1/2, 0, ...}."""
        entries = [e for e in printed_dual_comparison(levels=[0])]
        self.assertTrue(all(e.status == 'match' for e in entries))

    def test_converges_to_stationary_dual(self):
        """Test duals approach the dual of the fundamental mask."""
        stationary = bezout_solve(fundamental_mask(3), 14)
        distances = [(bezout_solve(ripplet_mask(3, m, MU), 14) - stationary).max_abs() for m in (1, 2, 4, 8)]
        self.assertTrue(all(b < a for a, b in zip(distances, distances[1:])), distances)


class WaveletFilterTests(SimpleTestCase):
    """Test the highpass pair and the PR identities."""

    def test_haar_quartet(self):
        """Test q = q~ = {1/2, -1/2}."""
        quartet = filter_quartet(3, 0, MU)
        haar = LaurentPoly(0, [0.5, -0.5])
        self.assertLess((quartet.q - haar).max_abs(), 1e-15)
        self.assertLess((quartet.q_dual - haar).max_abs(), 1e-15)
        self.assertLess(pr_identity_residual(quartet), 1e-15)

    def test_level_one_quartet(self):
        """Test n = 3, m = 1."""
        quartet = filter_quartet(3, 1, MU)
        self.assertEqual(quartet.delay, 5)
        self.assertEqual(quartet.a_dual.support, (-5, 9))
        self.assertLess(pr_identity_residual(quartet), 1e-10)

    def test_highpass_sums_vanish(self):
        """Test sum q = sum q~ = 0."""
        quartet = filter_quartet(3, 2, MU)
        self.assertAlmostEqual(quartet.q.total(), 0.0, places=12)
        self.assertAlmostEqual(quartet.q_dual.total(), 0.0, places=12)

    def test_stationary_quartet(self):
        """Test the fundamental-mask quartet."""
        self.assertLess(pr_identity_residual(filter_quartet(3, 2, MU, stationary=True)), 1e-10)

    def test_corrupted_dual(self):
        """Test a perturbed dual entry is detected."""
        quartet = filter_quartet(3, 1, MU)
        values = quartet.a_dual.values.copy()
        values[3] += 1e-3
        corrupted_dual = LaurentPoly(quartet.a_dual.offset, values)
        q, q_dual = wavelet_filters(quartet.a, corrupted_dual)
        corrupted = FilterQuartet(quartet.a, corrupted_dual, q, q_dual, 1)
        self.assertGreater(pr_identity_residual(corrupted), 1e-4)

    def test_single_sign_flip_breaks_pr(self):
        """Test flipping only q~ violates the highpass identity."""
        a = ripplet_mask(3, 1, MU)
        quartet = filter_quartet(3, 1, MU)
        q, q_dual = wavelet_filters(a, quartet.a_dual, FilterConvention(dual_highpass_sign=-1))
        self.assertGreater(pr_identity_residual(FilterQuartet(a, quartet.a_dual, q, q_dual, 1)), 0.5)

    def test_odd_shift_breaks_pr(self):
        """Test an odd highpass shift leaves aliasing terms."""
        a = ripplet_mask(3, 1, MU)
        quartet = filter_quartet(3, 1, MU)
        q, q_dual = wavelet_filters(a, quartet.a_dual, FilterConvention(highpass_shift=1))
        self.assertGreater(pr_identity_residual(FilterQuartet(a, quartet.a_dual, q, q_dual, 1)), 1e-2)

    def test_convention_validation(self):
        """Test signs other than +-1."""
        with self.assertRaises(ParameterDomainError):
            FilterConvention(highpass_sign=0)


class SampledDualTests(SimpleTestCase):
    """Test cascade samples of the dual functions and wavelets."""

    def test_dual_family_is_aligned(self):
        """Test the provider returns the delayed dual."""
        self.assertEqual(DualMaskFamily(3, MU)(1).support, (-5, 9))
        self.assertEqual(DualMaskFamily(3, MU)(0).support, (0, 1))

    def test_dual_refinable_integral(self):
        """Test the dual cascade keeps a unit integral."""
        phi_dual = sample_dual_refinable(3, 1, MU, CascadeConfig(k=6))
        self.assertTrue(np.all(np.isfinite(phi_dual.values)))
        self.assertAlmostEqual(phi_dual.integral(), 1.0, places=9)

    def test_wavelets_have_zero_mean(self):
        """Test psi and psi~ integrate to zero."""
        cfg = CascadeConfig(k=6)
        for sample in (sample_biorthogonal_wavelet, sample_dual_wavelet):
            psi = sample(3, 1, MU, cfg)
            self.assertAlmostEqual(psi.integral(), 0.0, places=9)


class DualMaskTaskTests(SimpleTestCase):
    """Test the Celery column task."""

    def test_eager_column(self):
        """Test the task returns the unaligned dual on [0, 14]."""
        payload = dual_mask_column.apply(args=(3, 1, MU)).get()
        self.assertEqual(payload['delay'], 5)
        self.assertEqual(payload['offset'], 0)
        self.assertEqual(len(payload['values']), 15)
        self.assertLess(payload['residual'], 1e-10)
