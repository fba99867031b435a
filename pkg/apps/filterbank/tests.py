"""
Unit tests for the filterbank app.
Tests cover:
- Signal construction and index bookkeeping
- Single-level Haar steps and the output index ranges
- Multilevel perfect reconstruction, linearity and vanishing moments
- Threshold counts and the spike experiment
"""
import numpy as np
from django.test import SimpleTestCase

from apps.biorthogonal.services import filter_quartet
from apps.filterbank.constants import CoefficientKind
from apps.filterbank.services import (
    Decomposition,
    FilterFamily,
    Signal,
    analyze,
    analyze_level,
    bundled_spike,
    nonzero_counts,
    round_trip_error,
    spike_experiment,
    synthesize,
    synthesize_level,
)
from ripplets.exceptions import DimensionError, ParameterDomainError, SignalFormatError

MU = 1.1


def random_signal(length, seed, start=0):
    return Signal(start, np.random.default_rng(seed).standard_normal(length))


class SignalTests(SimpleTestCase):
    """Test the Signal type."""

    def test_from_pairs_fills_gaps(self):
        """Test missing indices become zeros."""
        signal = Signal.from_pairs([(3, 1.0), (1, 2.0)])
        self.assertEqual(signal.start, 1)
        np.testing.assert_array_equal(signal.samples, [2.0, 0.0, 1.0])

    def test_duplicate_index(self):
        """Test repeated indices are rejected."""
        with self.assertRaises(SignalFormatError):
            Signal.from_pairs([(0, 1.0), (0, 2.0)])

    def test_non_finite(self):
        """Test NaN samples are rejected."""
        with self.assertRaises(SignalFormatError):
            Signal(0, [1.0, float('nan')])

    def test_addition_aligns_indices(self):
        """Test sums over differing ranges."""
        total = Signal(0, [1.0, 1.0]) + Signal(3, [2.0])
        self.assertEqual(total.to_pairs(), [(0, 1.0), (1, 1.0), (2, 0.0), (3, 2.0)])


class SingleLevelTests(SimpleTestCase):
    """Test one analysis and synthesis step."""

    def setUp(self):
        self.haar = filter_quartet(3, 0, MU)

    def test_haar_constant(self):
        """Test {1, 1} gives lambda = {1}, zeta = {0}."""
        approx, detail = analyze_level(Signal(0, [1.0, 1.0]), self.haar)
        self.assertEqual((approx.start, detail.start), (0, 0))
        np.testing.assert_allclose(approx.samples, [1.0], atol=1e-15)
        np.testing.assert_allclose(detail.samples, [0.0], atol=1e-15)

    def test_haar_detail(self):
        """Test {1, -1} is a pure detail."""
        approx, detail = analyze_level(Signal(0, [1.0, -1.0]), self.haar)
        np.testing.assert_allclose(approx.samples, [0.0], atol=1e-15)
        np.testing.assert_allclose(detail.samples, [1.0], atol=1e-15)

    def test_haar_round_trip(self):
        """Test {1, 2, 3, 4} is reproduced exactly."""
        x = Signal(0, [1.0, 2.0, 3.0, 4.0])
        y = synthesize_level(*analyze_level(x, self.haar), self.haar)
        self.assertEqual((y.start, len(y)), (0, 4))
        np.testing.assert_allclose(y.samples, x.samples, atol=1e-14)

    def test_zero_inputs(self):
        """Test zero coefficients synthesize to zero."""
        y = synthesize_level(Signal(0, [0.0, 0.0]), Signal(0, [0.0]), filter_quartet(3, 1, MU))
        self.assertEqual(y.max_abs(), 0.0)

    def test_output_ranges(self):
        """Test supports follow the convolution index arithmetic."""
        quartet = filter_quartet(3, 2, MU)
        x = random_signal(32, 0)
        approx, detail = analyze_level(x, quartet)
        lo, hi = quartet.a_dual.support
        self.assertEqual(approx.start, -(hi // 2))
        self.assertEqual(approx.end, (31 - lo) // 2)
        lo, hi = quartet.q_dual.support
        self.assertEqual(detail.start, -(hi // 2))
        self.assertEqual(detail.end, (31 - lo) // 2)

    def test_level_one_round_trip(self):
        """Test n = 3, m = 1 on random length-64 signals."""
        quartet = filter_quartet(3, 1, MU)
        for seed in range(3):
            x = random_signal(64, seed)
            y = synthesize_level(*analyze_level(x, quartet), quartet)
            self.assertLess((y - x).max_abs(), 1e-10)


class MultilevelTests(SimpleTestCase):
    """Test multilevel analysis and synthesis."""

    def test_structure(self):
        """Test three levels give one approximation and three details."""
        d = analyze(random_signal(256, 1), 0, 3, FilterFamily(3, MU))
        self.assertEqual(len(d.details), 3)
        self.assertEqual([level for level, _, _ in d.channels()], [0, 0, 1, 2])
        self.assertEqual(next(d.channels())[1], CoefficientKind.APPROX)

    def test_perfect_reconstruction(self):
        """Test round trips for several families, lengths and depths."""
        families = (FilterFamily(3, 1.1), FilterFamily(3, 2.0), FilterFamily(3, stationary=True))
        for family in families:
            for length, levels in ((16, 1), (100, 2), (256, 3), (512, 4)):
                x = random_signal(length, length, start=5)
                error = round_trip_error(x, analyze(x, 0, levels, family))
                self.assertLess(error, 1e-10 * x.max_abs(), msg=f'{family.describe()} length={length}')

    def test_twenty_signals(self):
        """Test 20 random length-256 signals at three levels."""
        for family in (FilterFamily(3, MU), FilterFamily(3, stationary=True)):
            for seed in range(20):
                x = random_signal(256, 100 + seed)
                self.assertLess(round_trip_error(x, analyze(x, 0, 3, family)), 1e-10 * x.max_abs())

    def test_impulse_and_energy(self):
        """Test a delta round trip and energy preservation."""
        x = Signal(10, [1.0])
        y = synthesize(analyze(x, 0, 3, FilterFamily(3, MU)))
        self.assertLess((y - x).max_abs(), 1e-10)
        self.assertAlmostEqual(y.energy(), x.energy(), delta=1e-10)

    def test_linearity(self):
        """Test analyze(x + y) = analyze(x) + analyze(y)."""
        family = FilterFamily(3, MU)
        x, y = random_signal(128, 7), random_signal(128, 8)
        combined = analyze(x + y, 0, 3, family).coefficients()
        separate = analyze(x, 0, 3, family).coefficients() + analyze(y, 0, 3, family).coefficients()
        np.testing.assert_allclose(combined, separate, atol=1e-12)

    def test_constant_details_vanish_inside(self):
        """Test details of a constant are zero away from the ends."""
        quartet = filter_quartet(3, 2, MU)
        x = Signal(0, np.ones(256))
        _, detail = analyze_level(x, quartet)
        lo, hi = quartet.q_dual.support
        interior = [v for a, v in detail.to_pairs() if 2 * a + lo >= 0 and 2 * a + hi <= 255]
        self.assertGreater(len(interior), 100)
        self.assertLess(max(abs(v) for v in interior), 1e-12)

    def test_ramp_details_vanish_inside(self):
        """Test two vanishing moments for n = 3 away from the ends."""
        quartet = filter_quartet(3, 1, MU)
        x = Signal(0, np.arange(256, dtype=float))
        _, detail = analyze_level(x, quartet)
        lo, hi = quartet.q_dual.support
        interior = [v for a, v in detail.to_pairs() if 2 * a + lo >= 0 and 2 * a + hi <= 255]
        self.assertLess(max(abs(v) for v in interior), 1e-10)

    def test_empty_signal(self):
        """Test the empty signal gives an empty decomposition."""
        d = analyze(Signal.empty(), 0, 3, FilterFamily(3, MU))
        self.assertEqual(d.coefficients().size, 0)
        self.assertEqual(len(synthesize(d)), 0)

    def test_level_validation(self):
        """Test M <= m0."""
        with self.assertRaises(ParameterDomainError):
            analyze(random_signal(8, 0), 2, 2, FilterFamily(3, MU))

    def test_detail_count_mismatch(self):
        """Test a decomposition with missing details."""
        with self.assertRaises(DimensionError):
            Decomposition(0, 3, Signal.empty(), [Signal.empty()], FilterFamily(3, MU))

    def test_recorded_gains(self):
        """Test analysis with gain 1/2 halves the coefficients and still round trips."""
        family = FilterFamily(3, MU)
        x = random_signal(128, 11)
        default, halved = analyze(x, 0, 3, family), analyze(x, 0, 3, family, gain=0.5)
        self.assertEqual((halved.analysis_gain, halved.synthesis_gain), (0.5, 4.0))
        self.assertEqual((default.analysis_gain, default.synthesis_gain), (1.0, 2.0))
        np.testing.assert_allclose(halved.approx.samples, 0.125 * default.approx.samples, atol=1e-12)
        self.assertLess(round_trip_error(x, halved), 1e-10 * x.max_abs())

    def test_synthesis_uses_recorded_gain(self):
        """Test doubling the recorded synthesis gain doubles the top-level signal."""
        family = FilterFamily(3, MU)
        x = random_signal(64, 12)
        d = analyze(x, 0, 1, family)
        doubled = Decomposition(0, 1, d.approx, d.details, family, synthesis_gain=4.0)
        self.assertLess((synthesize(doubled) - x.scaled(2.0)).max_abs(), 1e-10)

    def test_gain_validation(self):
        """Test a non-positive analysis gain."""
        with self.assertRaises(ParameterDomainError):
            analyze(random_signal(8, 0), 0, 1, FilterFamily(3, MU), gain=0.0)


class SpikeExperimentTests(SimpleTestCase):
    """Test coefficient counts."""

    def test_bundled_spike(self):
        """Test the spike layout."""
        spike = bundled_spike()
        self.assertEqual(len(spike), 64)
        self.assertEqual(spike.to_pairs()[31:34], [(31, 0.3), (32, 1.0), (33, 0.3)])

    def test_nonstationary_is_sparser(self):
        """Test the tension family needs fewer coefficients."""
        report = spike_experiment()
        self.assertLessEqual(report.nonzero_nonstationary, report.nonzero_stationary)
        self.assertGreater(report.nonzero_nonstationary, 0)

    def test_large_threshold(self):
        """Test tau above every coefficient gives (0, 0)."""
        report = spike_experiment(tau=1e3)
        self.assertEqual((report.nonzero_nonstationary, report.nonzero_stationary), (0, 0))

    def test_counts_nonincreasing(self):
        """Test counts never grow with tau."""
        d = spike_experiment().nonstationary
        counts = nonzero_counts(d, [1e-12, 1e-8, 1e-4, 1e-2, 1e-1, 1.0])
        self.assertTrue(all(b <= a for a, b in zip(counts, counts[1:])), counts)
