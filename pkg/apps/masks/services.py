"""
Nonstationary scaling masks a^(n,m), the fundamental B-spline mask a^(n),
their symbols, autocorrelations and transition matrices.

For m >= 1 the level-m mask is

    a_alpha = 2^-(n+1+t) [ C(n+1, alpha) + 4 (2^t - 1) C(n-1, alpha-1) ],
    t = m^-mu,

supported on [0, n+1]; level 0 is the Haar mask {1/2, 1/2}. Its symbol
factors as 2^-(n+1+t) (1+z)^(n-1) (z^2 + 2(2^(1+t) - 1) z + 1).
"""
import logging
from dataclasses import dataclass

import numpy as np

from apps.laurent.polynomial import LaurentPoly
from apps.masks.constants import PRINTED_DIGIT_TOLERANCE, PRINTED_FLOAT_SLACK
from ripplets.exceptions import ParameterDomainError, DimensionError

logger = logging.getLogger(__name__)

HAAR_MASK = LaurentPoly(0, [0.5, 0.5])


@dataclass(frozen=True)
class MaskParams:
    """Parameters (n, m, mu) of one nonstationary mask."""
    n: int
    m: int
    mu: float

    def __post_init__(self):
        if self.n < 2:
            raise ParameterDomainError(f'n must be >= 2, got {self.n}')
        if self.m < 0:
            raise ParameterDomainError(f'm must be >= 0, got {self.m}')
        if not self.mu > 1:
            raise ParameterDomainError(f'mu must be > 1, got {self.mu}')


def pascal_row(n):
    """Binomial coefficients C(n, 0..n) by the integer Pascal recurrence."""
    row = [1]
    for _ in range(n):
        row = [left + right for left, right in zip([0] + row, row + [0])]
    return row


def binomial(n, k):
    if n < 0 or k < 0 or k > n:
        return 0
    return pascal_row(n)[k]


def tension_exponent(m, mu):
    """t = m^-mu, computed as exp(-mu ln m)."""
    return float(np.exp(-mu * np.log(m)))


def matches_printed(computed, printed):
    """True when computed rounds to the four-digit printed value."""
    return abs(computed - printed) <= PRINTED_DIGIT_TOLERANCE + PRINTED_FLOAT_SLACK


def ripplet_mask(n, m, mu):
    """
    Level-m mask of order n without the n >= 2 restriction.

    Order 1 masks appear as convolution factors in the derivative rule.
    """
    if m == 0:
        return HAAR_MASK
    t = tension_exponent(m, mu)
    scale = np.exp2(-(n + 1 + t))
    tension = 4.0 * (np.exp2(t) - 1.0)
    outer = np.array(pascal_row(n + 1), dtype=float)
    inner = np.zeros(n + 2)
    inner[1:n + 1] = pascal_row(n - 1)
    return LaurentPoly(0, scale * (outer + tension * inner))


def nonstationary_mask(params):
    return ripplet_mask(params.n, params.m, params.mu)


def fundamental_mask(n):
    """Binomial mask C(n+1, alpha) / 2^(n+1) on [0, n+1]."""
    if n < 1:
        raise ParameterDomainError(f'n must be >= 1, got {n}')
    return LaurentPoly(0, np.array(pascal_row(n + 1), dtype=float) / 2 ** (n + 1))


def mask_symbol(mask):
    return LaurentPoly(mask.offset, mask.values)


def autocorrelation(mask):
    """ǎ_alpha = sum_beta a_beta a_{beta-alpha}, i.e. A(z) A(1/z)."""
    return mask * mask.subst_recip()


def transition_matrix(mask, index_range=None):
    """
    Transition operator (T lambda)_alpha = 2 sum_beta ǎ_{2 alpha - beta} lambda_beta
    on the index interval index_range (default: the support of ǎ).
    """
    acorr = autocorrelation(mask)
    lo, hi = acorr.support
    if index_range is None:
        index_range = (lo, hi)
    r_lo, r_hi = index_range
    if r_lo > lo or r_hi < hi:
        raise DimensionError(
            f'Index range [{r_lo}, {r_hi}] does not cover the autocorrelation support [{lo}, {hi}]'
        )
    idx = np.arange(r_lo, r_hi + 1)
    matrix = np.zeros((idx.size, idx.size))
    for i, alpha in enumerate(idx):
        for j, beta in enumerate(idx):
            matrix[i, j] = 2.0 * acorr[2 * alpha - beta]
    return matrix


@dataclass
class TransitionSpectrum:
    index_range: tuple
    eigenvalues: np.ndarray
    fixed_vector: np.ndarray

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(self.eigenvalues)))


def transition_spectrum(mask, index_range=None):
    """Eigenvalues by decreasing modulus and the eigenvector for eigenvalue 1 (sum 1)."""
    matrix = transition_matrix(mask, index_range)
    if index_range is None:
        index_range = autocorrelation(mask).support
    eigenvalues, vectors = np.linalg.eig(matrix)
    order = np.argsort(-np.abs(eigenvalues))
    eigenvalues, vectors = eigenvalues[order], vectors[:, order]
    closest = int(np.argmin(np.abs(eigenvalues - 1.0)))
    fixed = np.real(vectors[:, closest])
    fixed = fixed / np.sum(fixed)
    return TransitionSpectrum(tuple(index_range), eigenvalues, fixed)


def quadratic_factor(n, m, mu):
    """Cofactor z^2 + 2(2^(1+t) - 1) z + 1 of (1+z)^(n-1) in A^(n,m), m >= 1."""
    if m < 1:
        raise ParameterDomainError('The quadratic factor exists only for m >= 1')
    MaskParams(n, m, mu)
    t = tension_exponent(m, mu)
    return LaurentPoly(0, [1.0, 2.0 * (np.exp2(1.0 + t) - 1.0), 1.0])


def symbol_zeros_negative(n, m, mu):
    """True when both zeros of the quadratic factor are real and negative."""
    _, b, _ = quadratic_factor(n, m, mu).values
    discriminant = b * b - 4.0
    if discriminant < 0:
        return False
    return bool(-b + np.sqrt(discriminant) < 0)


def fundamental_deviation(n, m, mu):
    """Sup-norm distance between a^(n,m) and the fundamental mask a^(n)."""
    mask = nonstationary_mask(MaskParams(n, m, mu))
    return (mask - fundamental_mask(n)).max_abs()


@dataclass(frozen=True)
class MaskFamily:
    """
    Level -> mask provider for one ripplet family.

    The stationary family returns the fundamental mask at every level.
    """
    n: int
    mu: float = 1.1
    stationary: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ParameterDomainError(f'n must be >= 1, got {self.n}')
        if not self.stationary and not self.mu > 1:
            raise ParameterDomainError(f'mu must be > 1, got {self.mu}')

    def __call__(self, level):
        if level < 0:
            raise ParameterDomainError(f'Level must be >= 0, got {level}')
        if self.stationary:
            return fundamental_mask(self.n)
        return ripplet_mask(self.n, level, self.mu)

    def lower(self, r=1):
        """The same family with order n - r."""
        return MaskFamily(self.n - r, self.mu, self.stationary)

    def describe(self):
        kind = 'stationary' if self.stationary else 'nonstationary'
        return f'{kind} n={self.n} mu={self.mu}'


def mask_table(n, levels, mu):
    """{level: mask} for a sweep of levels, logged once per table."""
    table = {m: nonstationary_mask(MaskParams(n, m, mu)) for m in levels}
    logger.info(f'Computed {len(table)} masks for n={n}, mu={mu}')
    return table
