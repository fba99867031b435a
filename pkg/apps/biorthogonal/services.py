"""
Dual masks and wavelet filters of the biorthogonal ripplet filter bank.

For a primal mask a on [0, N] the dual ã on [0, L] solves the Bezout
identity after the alignment delay delta = (L - N) / 2:

    A(z) Ã'(1/z) + A(-z) Ã'(-1/z) = 1,   ã'_alpha = ã_(alpha + delta).

The highpass pair follows q_alpha = (-1)^alpha ã'_(1-alpha) and
q~_alpha = (-1)^alpha a_(1-alpha).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from django.conf import settings

from apps.laurent.polynomial import LaurentPoly
from apps.masks.services import MaskFamily, ripplet_mask
from apps.refinable.services import (
    CascadeConfig,
    cascade,
    combine_translates,
    default_resolution,
)
from ripplets.exceptions import BezoutError, DimensionError, ParameterDomainError

from .constants import (
    DEFAULT_BEZOUT_TOL,
    PRINTED_DIGIT_TOLERANCE,
    PRINTED_DUALS,
    PRINTED_DUALS_EXCLUDED_COLUMNS,
    PRINTED_DUALS_EXCLUDED_ENTRIES,
    PRINTED_DUALS_MU,
    PRINTED_DUALS_ORDER,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilterConvention:
    """
    Gains, signs and shift linking the four filters.

    q_alpha = s (-1)^alpha ã'_(1-alpha+shift) and q~_alpha = s~ (-1)^alpha a_(1-alpha+shift);
    synthesis multiplies both branches by synthesis_gain.
    """
    synthesis_gain: float = 2.0
    highpass_shift: int = 0
    highpass_sign: int = 1
    dual_highpass_sign: int = 1

    def __post_init__(self):
        if self.highpass_sign not in (1, -1) or self.dual_highpass_sign not in (1, -1):
            raise ParameterDomainError('Highpass signs must be +1 or -1')

    def to_dict(self):
        return {
            'synthesis_gain': self.synthesis_gain,
            'highpass_shift': self.highpass_shift,
            'highpass_sign': self.highpass_sign,
            'dual_highpass_sign': self.dual_highpass_sign,
        }


DEFAULT_CONVENTION = FilterConvention()


@dataclass(frozen=True)
class FilterQuartet:
    a: LaurentPoly
    a_dual: LaurentPoly
    q: LaurentPoly
    q_dual: LaurentPoly
    m: int
    delay: int = 0
    convention: FilterConvention = DEFAULT_CONVENTION


def default_dual_support(n, m, stationary=False):
    """L = 1 for the Haar level, 3n + 5 otherwise."""
    if m == 0 and not stationary:
        return 1
    return 3 * n + 5


def bezout_delay(a, L):
    N = a.support[1]
    if (L - N) % 2:
        raise BezoutError(f'Dual support [0, {L}] cannot be aligned with a mask on [0, {N}]', residual=float('inf'))
    return (L - N) // 2


def _symmetry_basis(L, symmetric):
    if not symmetric:
        return np.eye(L + 1)
    basis = np.zeros((L + 1, L // 2 + 1))
    for gamma in range(L + 1):
        basis[gamma, min(gamma, L - gamma)] = 1.0
    return basis


def bezout_solve(a, L, symmetric=True, tol=DEFAULT_BEZOUT_TOL):
    """
    Dual mask ã on [0, L] from coefficient matching.

    Rows are P_k = sum_beta a_beta ã_(beta-k) for k = delta (mod 2), with
    P_(-delta) = 1/2 and zero otherwise. Alternating moment rows
    sum (-1)^alpha (alpha - L/2)^j ã_alpha = 0, j = 0, 1, ..., fill any remaining
    freedom; rows that vanish under the symmetry are skipped.
    """
    if a.is_zero or a.offset != 0:
        raise DimensionError(f'Mask must start at index 0, got {a!r}')
    if L < 1:
        raise ParameterDomainError(f'Dual support length must be >= 1, got {L}')
    delay = bezout_delay(a, L)
    N = a.support[1]
    basis = _symmetry_basis(L, symmetric)
    unknowns = basis.shape[1]

    gammas = np.arange(L + 1)
    shifts = [k for k in range(-L, N + 1) if (k - delay) % 2 == 0]
    rows = np.array([[a[gamma + k] for gamma in gammas] for k in shifts]) @ basis
    rhs = np.array([0.5 if k == -delay else 0.0 for k in shifts])

    rank = np.linalg.matrix_rank(rows)
    signs = np.where(gammas % 2 == 0, 1.0, -1.0)
    j = 0
    while rank < unknowns and j <= 2 * L:
        moment = (signs * (gammas - L / 2.0) ** j) @ basis
        candidate = np.vstack([rows, moment])
        candidate_rank = np.linalg.matrix_rank(candidate)
        if candidate_rank > rank:
            rows, rhs, rank = candidate, np.append(rhs, 0.0), candidate_rank
        j += 1
    if rank < unknowns:
        raise BezoutError(f'Bezout system for L={L} is rank deficient ({rank} < {unknowns})', residual=float('inf'))

    reduced, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    dual = LaurentPoly(0, basis @ reduced)
    residual = bezout_residual(a, dual.shift(-delay))
    if residual > tol:
        logger.warning(f'Bezout residual {residual:.2e} for L={L} exceeds {tol:.0e}')
        raise BezoutError(f'No dual mask on [0, {L}] solves the Bezout identity', residual=residual)
    logger.debug(f'Bezout solve L={L}: {rows.shape[0]} rows, residual {residual:.2e}')
    return dual


def _modulated_sum(p, q):
    """p(z) q(1/z) + p(-z) q(-1/z)."""
    return p * q.subst_recip() + p.subst_neg() * q.subst_recip().subst_neg()


def bezout_residual(a, a_dual):
    """max coefficient of A(z)Ã(1/z) + A(-z)Ã(-1/z) - 1 for an aligned dual."""
    return (_modulated_sum(a, a_dual) - 1.0).max_abs()


def closed_form_dual_n3(m, mu):
    """Explicit ã^(3,m) on [0, 14] with h = 3 + m^-mu."""
    if m < 1:
        raise ParameterDomainError(f'The closed form needs m >= 1, got {m}')
    x = 2.0 ** (3.0 + m ** (-mu))
    D = x - 4.0
    half = [
        (128 + 64 * x + 20 * x ** 2 + 5 * x ** 3) / (512 * x ** 3 * D),
        -(128 + 64 * x + 20 * x ** 2 + 5 * x ** 3) / (1024 * x ** 2 * D),
        -(640 + 448 * x + 132 * x ** 2 + 29 * x ** 3 - 5 * x ** 4) / (512 * x ** 3 * D),
        (128 + 192 * x + 68 * x ** 2 + 17 * x ** 3) / (512 * x ** 2 * D),
        (1152 + 960 * x + 532 * x ** 2 + 89 * x ** 3 - 39 * x ** 4) / (512 * x ** 3 * D),
        (128 + 64 * x - 492 * x ** 2 - 123 * x ** 3) / (1024 * x ** 2 * D),
        -(640 + 576 * x + 420 * x ** 2 + 577 * x ** 3 - 162 * x ** 4) / (512 * x ** 3 * D),
        -(128 + 192 * x + 324 * x ** 2 - 175 * x ** 3) / (256 * x ** 2 * D),
    ]
    return LaurentPoly(0, half + half[-2::-1])


def _alternate(p):
    return p.subst_neg()


def wavelet_filters(a, a_dual, convention=DEFAULT_CONVENTION):
    """(q, q~) from the aligned dual and the primal mask."""
    shift = 1 + convention.highpass_shift
    q = _alternate(a_dual.subst_recip().shift(shift)) * convention.highpass_sign
    q_dual = _alternate(a.subst_recip().shift(shift)) * convention.dual_highpass_sign
    return q, q_dual


def pr_identity_residual(quartet):
    """Largest residual of the two Bezout identities and the two cross identities."""
    a, a_dual, q, q_dual = quartet.a, quartet.a_dual, quartet.q, quartet.q_dual
    return max(
        (_modulated_sum(a, a_dual) - 1.0).max_abs(),
        (_modulated_sum(q, q_dual) - 1.0).max_abs(),
        _modulated_sum(a, q_dual).max_abs(),
        _modulated_sum(q, a_dual).max_abs(),
    )


@lru_cache(maxsize=128)
def _dual_mask(n, level, mu, stationary, L):
    a = MaskFamily(n, mu, stationary)(level)
    L = default_dual_support(n, level, stationary) if L is None else L
    dual = bezout_solve(a, L, tol=getattr(settings, 'RIPPLET_BEZOUT_TOL', DEFAULT_BEZOUT_TOL))
    return a, dual, bezout_delay(a, L)


def filter_quartet(n, m, mu, stationary=False, L=None, convention=DEFAULT_CONVENTION):
    a, dual, delay = _dual_mask(n, m, mu, stationary, L)
    aligned = dual.shift(-delay)
    q, q_dual = wavelet_filters(a, aligned, convention)
    return FilterQuartet(a, aligned, q, q_dual, m, delay, convention)


@dataclass(frozen=True)
class DualMaskFamily:
    """Level -> aligned dual mask, usable as a cascade provider."""
    n: int
    mu: float = 1.1
    stationary: bool = False

    def __call__(self, level):
        a, dual, delay = _dual_mask(self.n, level, self.mu, self.stationary, None)
        return dual.shift(-delay)

    def describe(self):
        kind = 'stationary' if self.stationary else 'nonstationary'
        return f'{kind} dual n={self.n} mu={self.mu}'


def sample_dual_refinable(n, m, mu, cfg=None, K=None, stationary=False):
    cfg = cfg or CascadeConfig()
    K = default_resolution(m, cfg.k) if K is None else K
    return cascade(DualMaskFamily(n, mu, stationary), m, cfg.k, K, cfg.initial)


def sample_biorthogonal_wavelet(n, m, mu, cfg=None, K=None, stationary=False):
    """psi^(m) = sum_alpha q_alpha phi^(m+1)(x - 2^-(m+1) alpha)."""
    cfg = cfg or CascadeConfig()
    K = default_resolution(m + 1, cfg.k) if K is None else K
    quartet = filter_quartet(n, m, mu, stationary)
    fine = cascade(MaskFamily(n, mu, stationary), m + 1, cfg.k, K, cfg.initial)
    return combine_translates(quartet.q, fine, m + 1)


def sample_dual_wavelet(n, m, mu, cfg=None, K=None, stationary=False):
    """psi~^(m) = sum_alpha q~_alpha phi~^(m+1)(x - 2^-(m+1) alpha)."""
    cfg = cfg or CascadeConfig()
    K = default_resolution(m + 1, cfg.k) if K is None else K
    quartet = filter_quartet(n, m, mu, stationary)
    fine = cascade(DualMaskFamily(n, mu, stationary), m + 1, cfg.k, K, cfg.initial)
    return combine_translates(quartet.q_dual, fine, m + 1)


@dataclass(frozen=True)
class TableEntry:
    m: int
    alpha: int
    printed: float
    computed: float
    status: str

    @property
    def difference(self):
        return abs(self.computed - self.printed)


def printed_status(m, alpha, printed, computed):
    """'excluded' for the known misprints, else 'match' or 'mismatch' to four digits."""
    if m in PRINTED_DUALS_EXCLUDED_COLUMNS or (m, alpha) in PRINTED_DUALS_EXCLUDED_ENTRIES:
        return 'excluded'
    if abs(computed - printed) <= PRINTED_DIGIT_TOLERANCE:
        return 'match'
    return 'mismatch'


def printed_dual_comparison(mu=PRINTED_DUALS_MU, levels=None):
    """Solver output against the printed dual-mask table, one entry per (m, alpha)."""
    entries = []
    for m in levels if levels is not None else sorted(PRINTED_DUALS):
        a = ripplet_mask(PRINTED_DUALS_ORDER, m, mu)
        dual = bezout_solve(a, default_dual_support(PRINTED_DUALS_ORDER, m))
        for alpha, printed in enumerate(PRINTED_DUALS[m]):
            computed = dual[alpha]
            entries.append(TableEntry(m, alpha, printed, computed, printed_status(m, alpha, printed, computed)))
    return entries
