"""
Celery tasks for dual-mask sweeps.
"""
from celery import shared_task
import logging

from .services import filter_quartet, pr_identity_residual

logger = logging.getLogger(__name__)


@shared_task(name='biorthogonal.dual_mask_column')
def dual_mask_column(n, m, mu, stationary=False):
    """
    Dual mask and highpass filters for one level, JSON-serializable.

    Returns:
        dict with the dual on [0, L], its alignment delay, both highpass filters and the PR residual
    """
    quartet = filter_quartet(n, m, mu, stationary)
    residual = pr_identity_residual(quartet)
    logger.info(f'Dual mask column n={n} m={m}: PR residual {residual:.2e}')
    unaligned = quartet.a_dual.shift(quartet.delay)
    return {
        'n': n,
        'm': m,
        'delay': quartet.delay,
        'offset': unaligned.offset,
        'values': unaligned.values.tolist(),
        'q': quartet.q.to_pairs(),
        'q_dual': quartet.q_dual.to_pairs(),
        'residual': residual,
    }
