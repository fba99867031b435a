"""
Multilevel analysis and synthesis with level-dependent filter quartets.

Signals are finitely supported on the integers and zero-extended, so every
step keeps the full index range where a nonzero coefficient can occur. One
step from level m + 1 to level m uses the quartet of level m:

    lambda_alpha = sum_beta ã'_(beta - 2 alpha) x_beta
    zeta_alpha   = sum_beta q~_(beta - 2 alpha) x_beta
    x_alpha      = 2 (sum_beta a_(alpha - 2 beta) lambda_beta + sum_beta q_(alpha - 2 beta) zeta_beta)
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from apps.biorthogonal.services import DEFAULT_CONVENTION, filter_quartet
from ripplets.exceptions import DimensionError, ParameterDomainError, SignalFormatError

from .constants import (
    ANALYSIS_GAIN,
    SPIKE_LENGTH,
    SPIKE_LEVELS,
    SPIKE_MU,
    SPIKE_ORDER,
    SPIKE_SAMPLES,
    SPIKE_START,
    SPIKE_TAU,
    CoefficientKind,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Signal:
    """Samples x_start, ..., x_(start+len-1), zero elsewhere."""
    start: int
    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float).ravel()
        if not np.all(np.isfinite(samples)):
            raise SignalFormatError('Signal samples must be finite')
        samples.setflags(write=False)
        object.__setattr__(self, 'start', int(self.start))
        object.__setattr__(self, 'samples', samples)

    @classmethod
    def empty(cls):
        return cls(0, ())

    @classmethod
    def from_pairs(cls, pairs):
        """Build from (index, value) pairs; gaps between indices are zero."""
        pairs = sorted((int(i), float(v)) for i, v in pairs)
        if not pairs:
            return cls.empty()
        indices = [i for i, _ in pairs]
        if len(set(indices)) != len(indices):
            raise SignalFormatError('Duplicate signal index')
        lo = indices[0]
        samples = np.zeros(indices[-1] - lo + 1)
        for i, v in pairs:
            samples[i - lo] = v
        return cls(lo, samples)

    def __len__(self):
        return self.samples.size

    @property
    def end(self):
        return self.start + self.samples.size - 1

    @property
    def indices(self):
        return self.start + np.arange(self.samples.size)

    def dense(self, lo, hi):
        out = np.zeros(hi - lo + 1)
        a, b = max(lo, self.start), min(hi, self.end)
        if a <= b:
            out[a - lo:b - lo + 1] = self.samples[a - self.start:b - self.start + 1]
        return out

    def __add__(self, other):
        if not len(self):
            return other
        if not len(other):
            return self
        lo, hi = min(self.start, other.start), max(self.end, other.end)
        return Signal(lo, self.dense(lo, hi) + other.dense(lo, hi))

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def scaled(self, factor):
        return Signal(self.start, self.samples * factor)

    def max_abs(self):
        return float(np.max(np.abs(self.samples))) if len(self) else 0.0

    def energy(self):
        return float(np.dot(self.samples, self.samples))

    def to_pairs(self):
        return [(int(i), float(v)) for i, v in zip(self.indices, self.samples)]


def _analysis_filter(x, h):
    """sum_beta h_(beta - 2 alpha) x_beta over every alpha it can reach."""
    if not len(x) or h.is_zero:
        return Signal.empty()
    full = np.convolve(x.samples, h.values[::-1])
    lo = x.start - h.support[1]
    first = lo + (lo % 2)
    return Signal(first // 2, full[first - lo::2])


def _synthesis_filter(c, h):
    """sum_beta h_(alpha - 2 beta) c_beta."""
    if not len(c) or h.is_zero:
        return Signal.empty()
    upsampled = np.zeros(2 * len(c) - 1)
    upsampled[::2] = c.samples
    return Signal(2 * c.start + h.offset, np.convolve(upsampled, h.values))


def analyze_level(x, quartet, gain=ANALYSIS_GAIN):
    """One analysis step with the quartet of the coarse level."""
    approx = _analysis_filter(x, quartet.a_dual).scaled(gain)
    detail = _analysis_filter(x, quartet.q_dual).scaled(gain)
    return approx, detail


def synthesize_level(approx, detail, quartet, gain=None):
    """One synthesis step; gain defaults to the quartet convention."""
    gain = quartet.convention.synthesis_gain if gain is None else gain
    return (_synthesis_filter(approx, quartet.a) + _synthesis_filter(detail, quartet.q)).scaled(gain)


@dataclass(frozen=True)
class FilterFamily:
    """Level -> filter quartet for one (n, mu) family."""
    n: int
    mu: float = SPIKE_MU
    stationary: bool = False

    def quartet(self, level):
        return filter_quartet(self.n, level, self.mu, self.stationary, convention=DEFAULT_CONVENTION)

    def describe(self):
        kind = 'stationary' if self.stationary else 'nonstationary'
        return f'{kind} n={self.n} mu={self.mu}'


@dataclass
class Decomposition:
    """lambda^(m0) plus zeta^(m0), ..., zeta^(M-1) in increasing level order."""
    base_level: int
    top_level: int
    approx: Signal
    details: list
    family: FilterFamily
    analysis_gain: float = ANALYSIS_GAIN
    synthesis_gain: float = field(default=DEFAULT_CONVENTION.synthesis_gain)

    def __post_init__(self):
        if len(self.details) != self.top_level - self.base_level:
            raise DimensionError(
                f'{len(self.details)} detail levels do not span [{self.base_level}, {self.top_level})'
            )

    def detail(self, level):
        return self.details[level - self.base_level]

    def channels(self):
        """(level, kind, signal) for the approximation and every detail."""
        yield self.base_level, CoefficientKind.APPROX, self.approx
        for offset, detail in enumerate(self.details):
            yield self.base_level + offset, CoefficientKind.DETAIL, detail

    def coefficients(self):
        return np.concatenate([signal.samples for _, _, signal in self.channels()])

    def to_rows(self):
        return [
            (level, str(kind), index, value)
            for level, kind, signal in self.channels()
            for index, value in signal.to_pairs()
        ]


def analyze(x, base_level, top_level, family, gain=ANALYSIS_GAIN):
    """
    Analyze from top_level down to base_level with quartets top_level-1, ..., base_level.

    The decomposition records gain and the synthesis gain that inverts it.
    """
    if top_level <= base_level:
        raise ParameterDomainError(f'Top level {top_level} must exceed base level {base_level}')
    if base_level < 0:
        raise ParameterDomainError(f'Base level must be >= 0, got {base_level}')
    if gain <= 0:
        raise ParameterDomainError(f'Analysis gain must be positive, got {gain}')
    details = []
    current = x
    for level in range(top_level - 1, base_level - 1, -1):
        current, detail = analyze_level(current, family.quartet(level), gain)
        details.append(detail)
    logger.debug(f'Analyzed {len(x)} samples over levels {base_level}..{top_level} ({family.describe()})')
    synthesis_gain = DEFAULT_CONVENTION.synthesis_gain * ANALYSIS_GAIN / gain
    return Decomposition(base_level, top_level, current, details[::-1], family, gain, synthesis_gain)


def synthesize(decomposition):
    current = decomposition.approx
    for level in range(decomposition.base_level, decomposition.top_level):
        quartet = decomposition.family.quartet(level)
        current = synthesize_level(current, decomposition.detail(level), quartet, decomposition.synthesis_gain)
    return current


def round_trip_error(x, decomposition):
    """max |synthesize(decomposition) - x| over the union of both index ranges."""
    return (synthesize(decomposition) - x).max_abs()


def nonzero_count(decomposition, tau):
    return int(np.count_nonzero(np.abs(decomposition.coefficients()) > tau))


def nonzero_counts(decomposition, taus):
    """Nonzero coefficient counts for each threshold."""
    coefficients = np.abs(decomposition.coefficients())
    return [int(np.count_nonzero(coefficients > tau)) for tau in taus]


def bundled_spike():
    samples = np.zeros(SPIKE_LENGTH)
    samples[SPIKE_START:SPIKE_START + len(SPIKE_SAMPLES)] = SPIKE_SAMPLES
    return Signal(0, samples)


@dataclass
class SpikeReport:
    nonzero_nonstationary: int
    nonzero_stationary: int
    tau: float
    nonstationary: Decomposition
    stationary: Decomposition


def spike_experiment(spike=None, levels=SPIKE_LEVELS, tau=SPIKE_TAU, n=SPIKE_ORDER, mu=SPIKE_MU):
    """Count coefficients above tau for the tension family and the fundamental-mask family."""
    spike = bundled_spike() if spike is None else spike
    nonstationary = analyze(spike, 0, levels, FilterFamily(n, mu))
    stationary = analyze(spike, 0, levels, FilterFamily(n, mu, stationary=True))
    report = SpikeReport(
        nonzero_count(nonstationary, tau),
        nonzero_count(stationary, tau),
        tau,
        nonstationary,
        stationary,
    )
    logger.info(
        f'Spike experiment: {report.nonzero_nonstationary} nonstationary vs '
        f'{report.nonzero_stationary} stationary coefficients above {tau:.0e}'
    )
    return report
