"""
Cascade evaluation of refinable functions on dyadic grids and numerical
checks of their analytic properties.

A level-m refinable function satisfies

    phi_m(x) = sum_alpha a^(m)_alpha phi_{m+1}(x - 2^-(m+1) alpha),

with no factor 2 (every mask sums to 1). The cascade starts from a box or
hat at the deepest level L = m + k, centred on the support midpoint of the
level-L mask, and refines upwards through the masks of levels L-1, ..., m.
All shifts land on the step-2^-K grid when K >= m + k, so each refinement is
an exact operation on the piecewise-linear (hat) or piecewise-constant (box)
representation.

Usage:
    family = MaskFamily(3, 1.1)
    phi = cascade(family, m=1, k=8, K=11)
    partition_of_unity_residual(phi, 1)
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import BSpline

from apps.laurent.polynomial import LaurentPoly
from apps.masks.services import MaskFamily, binomial
from ripplets.exceptions import ParameterDomainError, ResolutionError, StabilityError

from .constants import (
    BELL_CURVATURE_NOISE,
    BELL_MONOTONE_TOL,
    BELL_SYMMETRY_TOL,
    DEFAULT_CASCADE_DEPTH,
    EXTRA_RESOLUTION,
    OMEGA_POINTS,
    InitialFunction,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples f(i 2^-K) for i = start, ..., start + len(values) - 1; zero elsewhere."""
    K: int
    start: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def grid_step(self):
        return 2.0 ** -self.K

    @property
    def end(self):
        return self.start + self.values.size - 1

    def __len__(self):
        return self.values.size

    def grid(self):
        return (self.start + np.arange(self.values.size)) * self.grid_step

    def at_indices(self, indices):
        """Samples at absolute grid indices, zero off the stored range."""
        indices = np.asarray(indices)
        out = np.zeros(indices.shape)
        inside = (indices >= self.start) & (indices <= self.end)
        out[inside] = self.values[indices[inside] - self.start]
        return out

    def dense(self, lo, hi):
        return self.at_indices(np.arange(lo, hi + 1))

    def __call__(self, x):
        """Piecewise-linear interpolation of the samples."""
        return np.interp(x, self.grid(), self.values, left=0.0, right=0.0)

    def integral(self):
        """Trapezoid quadrature; the stored ends are treated as zero boundaries."""
        return float(self.grid_step * np.sum(self.values))

    def support_interval(self, threshold=0.0):
        """[x_lo, x_hi] of the samples with |f| > threshold, or None."""
        above = np.flatnonzero(np.abs(self.values) > threshold)
        if above.size == 0:
            return None
        return (self.start + above[0]) * self.grid_step, (self.start + above[-1]) * self.grid_step

    def distance(self, other):
        """Sup-norm distance on the union of both grids."""
        _require_same_grid(self, other)
        lo, hi = min(self.start, other.start), max(self.end, other.end)
        return float(np.max(np.abs(self.dense(lo, hi) - other.dense(lo, hi))))

    def scaled(self, factor):
        return SampledFunction(self.K, self.start, self.values * factor)

    def to_rows(self):
        return list(zip(self.grid().tolist(), self.values.tolist()))


@dataclass(frozen=True)
class CascadeConfig:
    k: int = DEFAULT_CASCADE_DEPTH
    initial: str = InitialFunction.HAT

    def __post_init__(self):
        if self.k < 1:
            raise ParameterDomainError(f'Cascade depth k must be >= 1, got {self.k}')
        if self.initial not in InitialFunction.values:
            raise ParameterDomainError(f'Unknown initial function {self.initial!r}')


def default_resolution(m, k):
    return m + k + EXTRA_RESOLUTION


def _require_same_grid(f, g):
    if f.K != g.K:
        raise ResolutionError(f'Grids differ: 2^-{f.K} vs 2^-{g.K}')


def bspline_evaluate(n, m, x):
    """B^(n,m)(x) = 2^m N_n(2^m x), N_n the unit-integral cardinal B-spline on [0, n+1]."""
    if n < 0 or m < 0:
        raise ParameterDomainError(f'B-spline needs n >= 0 and m >= 0, got n={n}, m={m}')
    basis = BSpline.basis_element(np.arange(n + 2, dtype=float), extrapolate=False)
    scale = 2.0 ** m
    values = np.nan_to_num(basis(scale * np.asarray(x, dtype=float)), nan=0.0) * scale
    return float(values) if np.ndim(x) == 0 else values


def bspline_samples(n, m, K):
    """B^(n,m) sampled on its support [0, (n+1) 2^-m] with step 2^-K."""
    if K < m:
        raise ResolutionError(f'K={K} does not resolve level {m}')
    count = (n + 1) * 2 ** (K - m) + 1
    return SampledFunction(K, 0, bspline_evaluate(n, m, np.arange(count) * 2.0 ** -K))


def box_samples(m, K):
    """B^(0,m) on [0, 2^-m] with half weights at both ends."""
    if K < m:
        raise ResolutionError(f'K={K} does not resolve level {m}')
    values = np.full(2 ** (K - m) + 1, 2.0 ** m)
    values[0] = values[-1] = 2.0 ** (m - 1)
    return SampledFunction(K, 0, values)


def _start_function(provider, level, K, initial):
    lo, hi = provider(level).support
    cells = 2 ** (K - level)
    if initial == InitialFunction.HAT:
        twice_start = (lo + hi) * cells - 2 * cells
        ramp = np.arange(cells + 1) / cells
        values = 2.0 ** level * np.concatenate([ramp, ramp[-2::-1]])
    else:
        twice_start = (lo + hi) * cells - cells
        values = np.full(cells + 1, 2.0 ** level)
        values[0] = values[-1] = 2.0 ** (level - 1)
    if twice_start % 2:
        raise ResolutionError(f'K={K} cannot centre the {initial} start at level {level}')
    return SampledFunction(K, twice_start // 2, values)


def combine_translates(coefficients, f, level):
    """sum_alpha c_alpha f(x - 2^-level alpha) on the grid of f."""
    if f.K < level:
        raise ResolutionError(f'K={f.K} does not resolve shifts of level {level}')
    if coefficients.is_zero:
        return SampledFunction(f.K, f.start, np.zeros(len(f)))
    s = 2 ** (f.K - level)
    out = np.zeros(len(f) + s * (len(coefficients) - 1))
    for j, coefficient in enumerate(coefficients.values):
        out[j * s:j * s + len(f)] += coefficient * f.values
    return SampledFunction(f.K, f.start + coefficients.offset * s, out)


@lru_cache(maxsize=256)
def cascade(provider, m, k, K, initial=InitialFunction.HAT):
    """
    k refinement steps from the deepest level m + k up to level m.

    provider maps a level to its mask; it must be hashable.
    """
    if k < 1:
        raise ParameterDomainError(f'Cascade depth k must be >= 1, got {k}')
    if m < 0:
        raise ParameterDomainError(f'Level m must be >= 0, got {m}')
    if K < m + k:
        raise ResolutionError(f'K={K} is below m + k = {m + k}')
    deepest = m + k
    h = _start_function(provider, deepest, K, initial)
    for level in range(deepest - 1, m - 1, -1):
        h = combine_translates(provider(level), h, level + 1)
    logger.debug(f'Cascade for level {m} finished: k={k}, K={K}, {len(h)} samples')
    return h


def cascade_evaluate(params, cfg=None, K=None):
    """Cascade approximation h_k of phi^(n,m) for MaskParams params."""
    cfg = cfg or CascadeConfig()
    K = default_resolution(params.m, cfg.k) if K is None else K
    return cascade(MaskFamily(params.n, params.mu), params.m, cfg.k, K, cfg.initial)


def cascade_increments(provider, m, depths, K, initial=InitialFunction.HAT):
    """Sup-norm distances between cascade iterates of consecutive depths."""
    runs = [cascade(provider, m, k, K, initial) for k in depths]
    return [a.distance(b) for a, b in zip(runs, runs[1:])]


def convolve(f, g):
    """Grid-weighted discrete convolution, a quadrature of (f * g) on the same grid."""
    _require_same_grid(f, g)
    return SampledFunction(f.K, f.start + g.start, np.convolve(f.values, g.values) * f.grid_step)


def partition_of_unity_residual(f, m):
    """max |2^-m sum_alpha f(x - 2^-m alpha) - 1| over one period of translates."""
    if f.K < m:
        raise ResolutionError(f'K={f.K} does not resolve level {m}')
    period = 2 ** (f.K - m)
    residues = (f.start + np.arange(len(f))) % period
    folded = np.bincount(residues, weights=f.values, minlength=period)
    return float(np.max(np.abs(folded * 2.0 ** -m - 1.0)))


def convolution_check(n, m, mu, cfg=None, K=None):
    """
    Residual of phi^(n,m) = B^(0,m) * phi^(n-1,m), with B^(0,1) at m = 0.

    phi^(n,m) is cascaded from the hat and phi^(n-1,m) from the box, which makes
    the identity exact for the cascade iterates; only the quadrature error is left.
    """
    if n < 3:
        raise ParameterDomainError(f'Convolution check needs n >= 3, got {n}')
    cfg = cfg or CascadeConfig()
    K = default_resolution(m, cfg.k) if K is None else K
    family = MaskFamily(n, mu)
    phi = cascade(family, m, cfg.k, K, InitialFunction.HAT)
    lower = cascade(family.lower(), m, cfg.k, K, InitialFunction.BOX)
    product = convolve(box_samples(max(m, 1), K), lower)
    residual = phi.distance(product)
    logger.info(f'Convolution check n={n} m={m}: residual {residual:.3e}')
    return residual


def _difference_weights(r):
    return np.array([(-1) ** j * binomial(r, j) for j in range(r + 1)], dtype=float)


def derivative_rule_residual(n, m, mu, r, cfg=None, K=None):
    """
    max |D^r phi^(n,m) - nabla_h^r phi^(n-r,m) / h^r|, h = 2^-m (m > 0) or 1/2 (m = 0).

    D^r is the centred r-th difference with the stride of the deepest cascade
    level; both functions are cascaded from the hat.
    """
    if r < 0 or r > n - 1:
        raise ParameterDomainError(f'Derivative order must lie in [0, {n - 1}], got {r}')
    if r == 0:
        return 0.0
    cfg = cfg or CascadeConfig()
    K = default_resolution(m, cfg.k) if K is None else K
    family = MaskFamily(n, mu)
    phi = cascade(family, m, cfg.k, K, InitialFunction.HAT)
    lower = cascade(family.lower(r), m, cfg.k, K, InitialFunction.HAT)

    stride = 2 ** (K - m - cfg.k)
    if (r * stride) % 2:
        raise ResolutionError(f'K={K} cannot centre an order-{r} difference')
    h_steps = 2 ** (K - max(m, 1))
    h = 2.0 ** -max(m, 1)
    weights = _difference_weights(r)

    reach = r * max(stride, h_steps)
    indices = np.arange(min(phi.start, lower.start) - reach, max(phi.end, lower.end) + reach + 1)
    centred = sum(
        w * phi.at_indices(indices + r * stride // 2 - j * stride) for j, w in enumerate(weights)
    ) / (stride * phi.grid_step) ** r
    backward = sum(w * lower.at_indices(indices - j * h_steps) for j, w in enumerate(weights)) / h ** r
    residual = float(np.max(np.abs(centred - backward)))
    logger.info(f'Derivative rule n={n} m={m} r={r}: residual {residual:.3e}')
    return residual


def bell_shape_check(f):
    """
    Symmetric, nondecreasing up to the midpoint, second difference with two sign changes.

    The window is the nonzero range padded with two zero samples on each side so
    that the kinks at the ends of a compactly supported function are seen.
    """
    nonzero = np.flatnonzero(f.values != 0.0)
    if nonzero.size == 0:
        return False
    core = f.values[nonzero[0]:nonzero[-1] + 1]
    scale = max(1.0, float(np.max(np.abs(core))))
    if np.max(np.abs(core - core[::-1])) > BELL_SYMMETRY_TOL * scale:
        return False
    half = core[:(core.size + 1) // 2]
    if half.size > 1 and np.min(np.diff(half)) < BELL_MONOTONE_TOL * scale:
        return False
    padded = np.concatenate([np.zeros(2), core, np.zeros(2)])
    second = padded[2:] - 2.0 * padded[1:-1] + padded[:-2]
    signs = np.sign(second[np.abs(second) >= BELL_CURVATURE_NOISE])
    return int(np.count_nonzero(signs[1:] != signs[:-1])) == 2


def polynomial_reproduction_residual(n, m, mu, degree, cfg=None, K=None, window=None):
    """
    Least-squares residual of x^degree by the translates phi^(n,m)(x - 2^-m alpha).

    window is given in units of 2^-m (default [n+1, 3(n+1)]); the monomial is
    taken in the variable centred and scaled to [-1, 1] on the window.
    """
    if m < 1:
        raise ParameterDomainError(f'Polynomial reproduction needs m >= 1, got {m}')
    if degree < 0:
        raise ParameterDomainError(f'Degree must be >= 0, got {degree}')
    cfg = cfg or CascadeConfig()
    K = default_resolution(m, cfg.k) if K is None else K
    phi = cascade(MaskFamily(n, mu), m, cfg.k, K, cfg.initial)

    w_lo, w_hi = window or (n + 1, 3 * (n + 1))
    period = 2 ** (K - m)
    rows = np.arange(w_lo * period, w_hi * period + 1)
    first = -((phi.end - rows[0]) // period)
    last = (rows[-1] - phi.start) // period
    columns = [phi.at_indices(rows - alpha * period) for alpha in range(first, last + 1)]
    matrix = np.column_stack([c for c in columns if np.any(c)])

    if np.linalg.matrix_rank(matrix) < matrix.shape[1]:
        raise StabilityError(f'Collocation matrix for n={n}, m={m} is rank deficient')
    u = (rows * phi.grid_step * 2.0 ** m - 0.5 * (w_lo + w_hi)) / (0.5 * (w_hi - w_lo))
    target = u ** degree
    gamma, *_ = np.linalg.lstsq(matrix, target, rcond=None)
    return float(np.max(np.abs(matrix @ gamma - target)))


@dataclass
class StabilitySpectrum:
    omega: np.ndarray
    rho: np.ndarray
    eta: LaurentPoly

    @property
    def minimum(self):
        return float(np.min(self.rho))

    @property
    def maximum(self):
        return float(np.max(self.rho))

    @property
    def at_zero(self):
        return float(self.rho[0])


def stability_spectrum(f, m, points=OMEGA_POINTS):
    """
    Symbol rho(omega) = sum_alpha eta_alpha exp(-i omega 2^-m alpha) of the
    autocorrelation eta_alpha = int f f(. + 2^-m alpha), on [0, 2^(m+1) pi).

    With unit integral and exact partition of unity rho(0) = 2^m.
    """
    if f.K < m:
        raise ResolutionError(f'K={f.K} does not resolve level {m}')
    period = 2 ** (f.K - m)
    count = len(f)
    lags = (count - 1) // period
    half = np.array([
        f.grid_step * np.dot(f.values[:count - alpha * period], f.values[alpha * period:])
        for alpha in range(lags + 1)
    ])
    eta = LaurentPoly(-lags, np.concatenate([half[:0:-1], half]))
    omega = np.linspace(0.0, 2.0 ** (m + 1) * np.pi, points, endpoint=False)
    rho = half[0] + 2.0 * np.cos(np.multiply.outer(omega * 2.0 ** -m, np.arange(1, lags + 1))) @ half[1:]
    return StabilitySpectrum(omega, rho, eta)
