"""
Cross-scale Gramians and minimally supported prewavelets.

The Gramian vector of level m is

    g^(m)_alpha = int phi^(m)(x) phi^(m+1)(x + 2^-(m+1) alpha) dx,

and satisfies g^(m) = C^(m) g^(m+1) with (C^(m))_(alpha, beta) = c_(2 alpha - beta),
c_nu = sum_beta a^(m)_beta a^(m+1)_(nu + 2 beta). The iteration

    P_k = C^(m) C^(m+1) ... C^(m+k-1) 2^(m+k) M^(n)

seeds with the stationary B-spline Gramian of level m + k and converges to
g^(m). The prewavelet mask is d_alpha = (-1)^alpha g_(alpha-1).
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from apps.laurent.polynomial import LaurentPoly
from apps.masks.services import MaskFamily, pascal_row
from apps.refinable.services import (
    CascadeConfig,
    SampledFunction,
    bspline_evaluate,
    cascade,
    combine_translates,
    default_resolution,
)
from ripplets.exceptions import DimensionError, IterationLimitError, ParameterDomainError

from .constants import DEFAULT_MAX_ITER, DEFAULT_TOL

logger = logging.getLogger(__name__)


def gramian_support(n, m, stationary=False):
    """Index range of g^(n,m): [-n-1, n] at the Haar level 0, [-2n-1, n] otherwise."""
    if m == 0 and not stationary:
        return -n - 1, n
    return -2 * n - 1, n


def stationary_cross_gramian(n, level=0):
    """
    M^(n)_alpha = int B^(n,0)(x) B^(n,1)(x + alpha/2) dx, scaled by 2^level.

    Expands B^(n,0) into level-1 translates and uses
    int N_n(u) N_n(u + j) du = N_(2n+1)(n + 1 + j).
    """
    if n < 1:
        raise ParameterDomainError(f'n must be >= 1, got {n}')
    lo, hi = gramian_support(n, 1)
    weights = np.array(pascal_row(n + 1), dtype=float) / 2 ** (n + 1)
    alphas = np.arange(lo, hi + 1)
    betas = np.arange(n + 2)
    knots = n + 1 + np.add.outer(alphas, betas)
    values = 2.0 * bspline_evaluate(2 * n + 1, 0, knots.astype(float)) @ weights
    return LaurentPoly(lo, values * 2.0 ** level)


def cross_mask(family, m):
    """c_nu = sum_beta a^(m)_beta a^(m+1)_(nu + 2 beta), i.e. A^(m)(z^-2) A^(m+1)(z)."""
    return family(m).upsample(2).subst_recip() * family(m + 1)


def _transfer(c, rows, cols):
    r_idx = np.arange(rows[0], rows[1] + 1)
    c_idx = np.arange(cols[0], cols[1] + 1)
    nu = 2 * r_idx[:, None] - c_idx[None, :]
    lo, hi = c.support
    inside = (nu >= lo) & (nu <= hi)
    matrix = np.zeros(nu.shape)
    matrix[inside] = c.values[nu[inside] - lo]
    return matrix


def transfer_matrix(n, m, mu, row_support=None, col_support=None, stationary=False):
    """Matrix with entries c_(2 alpha - beta), alpha over row_support, beta over col_support."""
    family = MaskFamily(n, mu, stationary)
    rows_needed = gramian_support(n, m, stationary)
    cols_needed = gramian_support(n, m + 1, stationary)
    rows = row_support or rows_needed
    cols = col_support or cols_needed
    if rows[0] > rows_needed[0] or rows[1] < rows_needed[1]:
        raise DimensionError(f'Row support {rows} does not cover {rows_needed}')
    if cols[0] > cols_needed[0] or cols[1] < cols_needed[1]:
        raise DimensionError(f'Column support {cols} does not cover {cols_needed}')
    return _transfer(cross_mask(family, m), rows, cols)


@dataclass
class GramianResult:
    gramian: LaurentPoly
    iterations: int
    residual: float
    trace: list = field(default_factory=list)


def prewavelet_gramian(n, m, mu, max_iter=DEFAULT_MAX_ITER, tol=DEFAULT_TOL, stationary=False):
    """
    Iterate P_k until ||P_(k+1) - P_k||_inf < tol * max(1, ||P_k||_inf).

    Returns a GramianResult whose trace lists the increment of every iterate.
    """
    if max_iter < 1:
        raise ParameterDomainError(f'max_iter must be >= 1, got {max_iter}')
    if n < 2:
        raise ParameterDomainError(f'n must be >= 2, got {n}')
    family = MaskFamily(n, mu, stationary)
    seed = stationary_cross_gramian(n)
    rows = gramian_support(n, m, stationary)
    cols = gramian_support(n, m + 1, stationary)

    product = _transfer(cross_mask(family, m), rows, cols)
    previous = product @ seed.values * 2.0 ** (m + 1)
    trace = []
    for k in range(1, max_iter + 1):
        level = m + k
        product = product @ _transfer(cross_mask(family, level), cols, cols)
        current = product @ seed.values * 2.0 ** (level + 1)
        residual = float(np.max(np.abs(current - previous)))
        trace.append(residual)
        previous = current
        if residual < tol * max(1.0, float(np.max(np.abs(current)))):
            logger.info(f'Gramian n={n} m={m} converged after {k} iterations (residual {residual:.2e})')
            return GramianResult(LaurentPoly(rows[0], current), k, residual, trace)

    logger.warning(f'Gramian n={n} m={m} did not converge: residual {trace[-1]:.2e}')
    raise IterationLimitError(
        f'Gramian iteration for n={n}, m={m} stopped at {max_iter} iterations',
        residual=trace[-1],
        iterations=max_iter,
    )


def gramian_in_pou_units(g, m):
    """Rescale to functions whose translates sum to one: g / 2^(2m+1)."""
    return g / 2.0 ** (2 * m + 1)


def prewavelet_mask(g):
    """d_alpha = (-1)^alpha g_(alpha-1)."""
    if g.is_zero:
        return g
    shifted = g.shift(1)
    signs = np.where(shifted.exponents % 2 == 0, 1.0, -1.0)
    return LaurentPoly(shifted.offset, shifted.values * signs)


def orthogonality_residual(d, g):
    """max_beta |sum_alpha d_alpha g_(2 beta - alpha)|."""
    even, _ = (d * g).even_odd_split()
    return even.max_abs()


def gramian_quadrature(n, m, mu, cfg=None, K=None, stationary=False):
    """Trapezoid quadrature of g^(m)_alpha from cascade samples of phi^(m) and phi^(m+1)."""
    cfg = cfg or CascadeConfig()
    K = default_resolution(m + 1, cfg.k) if K is None else K
    family = MaskFamily(n, mu, stationary)
    coarse = cascade(family, m, cfg.k, K, cfg.initial)
    fine = cascade(family, m + 1, cfg.k, K, cfg.initial)
    return correlation(coarse, fine, m + 1, gramian_support(n, m, stationary))


def correlation(f, g, level, support):
    """int f(x) g(x + 2^-level alpha) dx for alpha in support, by grid quadrature."""
    s = 2 ** (f.K - level)
    indices = np.arange(f.start, f.end + 1)
    values = [
        f.grid_step * float(np.dot(f.values, g.at_indices(indices + alpha * s)))
        for alpha in range(support[0], support[1] + 1)
    ]
    return LaurentPoly(support[0], values)


def sample_prewavelet(n, m, mu, cfg=None, K=None, gramian=None, stationary=False):
    """psi^(n,m) = sum_alpha d_alpha phi^(n,m+1)(x - 2^-(m+1) alpha) from cascade samples."""
    cfg = cfg or CascadeConfig()
    K = default_resolution(m + 1, cfg.k) if K is None else K
    g = gramian if gramian is not None else prewavelet_gramian(n, m, mu, stationary=stationary).gramian
    fine = cascade(MaskFamily(n, mu, stationary), m + 1, cfg.k, K, cfg.initial)
    return combine_translates(prewavelet_mask(g), fine, m + 1)


def vanishing_moments_residual(psi, max_degree):
    """|int x^d psi(x) dx| for d = 0, ..., max_degree."""
    x = psi.grid()
    return [abs(psi.grid_step * float(np.dot(x ** d, psi.values))) for d in range(max_degree + 1)]


def haar_wavelet(K):
    """psi = 1 on [0, 1/2), -1 on [1/2, 1), sampled with averaged jumps."""
    half = 2 ** (K - 1)
    values = np.concatenate([[0.5], np.ones(half - 1), [0.0], -np.ones(half - 1), [-0.5]])
    return SampledFunction(K, 0, values)
