"""
Celery tasks for Gramian sweeps.
"""
from celery import shared_task
import logging

from .services import gramian_in_pou_units, prewavelet_gramian

logger = logging.getLogger(__name__)


@shared_task(name='prewavelet.gramian_column')
def gramian_column(n, m, mu, max_iter, tol, stationary=False):
    """
    Gramian and prewavelet data for one level, JSON-serializable.

    Returns:
        dict with offset, raw and partition-of-unity values, iterations, residual
    """
    result = prewavelet_gramian(n, m, mu, max_iter=max_iter, tol=tol, stationary=stationary)
    logger.info(f'Gramian column n={n} m={m} done in {result.iterations} iterations')
    return {
        'n': n,
        'm': m,
        'offset': result.gramian.offset,
        'values': result.gramian.values.tolist(),
        'pou_values': gramian_in_pou_units(result.gramian, m).values.tolist(),
        'iterations': result.iterations,
        'residual': result.residual,
    }
