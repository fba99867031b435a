"""
Artifact builders behind the management commands and the HTTP views.

Each builder takes validated serializer data and returns an Artifact; the
callers decide where it is written.
"""
import logging
from dataclasses import dataclass

from apps.biorthogonal.constants import PRINTED_DUALS, PRINTED_DUALS_MU
from apps.biorthogonal.services import (
    DEFAULT_CONVENTION,
    closed_form_dual_n3,
    printed_status,
    sample_biorthogonal_wavelet,
    sample_dual_refinable,
    sample_dual_wavelet,
)
from apps.biorthogonal.tasks import dual_mask_column
from apps.filterbank.constants import REFERENCE_NONZERO_COUNTS, CoefficientKind
from apps.filterbank.services import (
    Decomposition,
    FilterFamily,
    Signal,
    analyze,
    nonzero_count,
    round_trip_error,
    synthesize,
)
from apps.laurent.polynomial import LaurentPoly
from apps.masks.constants import PRINTED_MASKS, PRINTED_MASKS_MU, PRINTED_MASKS_ORDER
from apps.masks.services import MaskFamily, matches_printed
from apps.prewavelet.constants import PRINTED_GRAMIAN, PRINTED_GRAMIAN_MU
from apps.prewavelet.services import prewavelet_mask, sample_prewavelet
from apps.prewavelet.tasks import gramian_column
from apps.refinable.services import CascadeConfig, bspline_evaluate, cascade, default_resolution
from ripplets.exceptions import CheckFailure, DimensionError, ParameterDomainError, SignalFormatError

from .artifacts import Artifact
from .constants import (
    CLOSED_FORM_TOLERANCE,
    DECOMPOSITION_COLUMNS,
    DUAL_TABLE_COLUMNS,
    GRAMIAN_COLUMNS,
    OVERLAY_COLUMNS,
    SAMPLE_COLUMNS,
    SEQUENCE_COLUMNS,
    TABLE_COLUMNS,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one artifact."""
    command: str
    n: int
    m: object
    mu: float
    stationary: bool = False
    k: int = None
    K: int = None
    levels: int = None
    tau: float = None

    @classmethod
    def from_params(cls, command, params, **extra):
        return cls(
            command=command,
            n=params['n'],
            m=params['m'],
            mu=params['mu'],
            stationary=params.get('stationary', False),
            k=params.get('depth'),
            levels=params.get('levels'),
            tau=params.get('tau'),
            **extra,
        )

    def metadata(self):
        data = {
            'command': self.command,
            'n': self.n,
            'm': self.m,
            'mu': self.mu,
            'stationary': self.stationary,
            'convention': DEFAULT_CONVENTION.to_dict(),
        }
        for key in ('k', 'K', 'levels', 'tau'):
            if getattr(self, key) is not None:
                data[key] = getattr(self, key)
        return data


def mask_artifact(params):
    family = MaskFamily(params['n'], params['mu'], params['stationary'])
    rows = [(m, alpha, value) for m in params['m'] for alpha, value in family(m).to_pairs()]
    return Artifact(TABLE_COLUMNS, rows, RunConfig.from_params('mask', params).metadata())


def check_mask_table(params, artifact):
    """Compare against the printed mask table; CheckFailure lists the mismatches."""
    if params['n'] != PRINTED_MASKS_ORDER or params['mu'] != PRINTED_MASKS_MU or params['stationary']:
        raise ParameterDomainError(f'No printed masks for n={params["n"]}, mu={params["mu"]}')
    values = {(m, alpha): value for m, alpha, value in artifact.rows}
    mismatches = [
        (m, alpha)
        for m in params['m'] if m in PRINTED_MASKS
        for alpha, printed in enumerate(PRINTED_MASKS[m])
        if not matches_printed(values.get((m, alpha), 0.0), printed)
    ]
    if mismatches:
        raise CheckFailure(f'Masks differ from the printed table at (m, alpha) = {mismatches}')
    artifact.notes.append(f'All {len(params["m"])} levels match the printed masks to four digits')


def _cascade_config(params):
    return CascadeConfig(k=params['depth'])


def _resolution(params, level):
    resolution = params.get('resolution')
    return default_resolution(level, params['depth']) if resolution is None else resolution


def _sample_artifact(command, sampled, params, K):
    metadata = RunConfig.from_params(command, params, K=K).metadata()
    return Artifact(SAMPLE_COLUMNS, sampled.to_rows(), metadata)


def phi_artifact(params):
    n, m, mu = params['n'], params['m'], params['mu']
    K = _resolution(params, m)
    phi = cascade(MaskFamily(n, mu, params['stationary']), m, params['depth'], K)
    if not params.get('compare_bspline'):
        return _sample_artifact('phi', phi, params, K)
    x = phi.grid()
    rows = list(zip(x.tolist(), phi.values.tolist(), bspline_evaluate(n, m, x).tolist()))
    return Artifact(OVERLAY_COLUMNS, rows, RunConfig.from_params('phi', params, K=K).metadata())


def psi_artifact(params):
    """Prewavelet samples, or the biorthogonal wavelet with the biorthogonal flag."""
    n, m, mu = params['n'], params['m'], params['mu']
    K = _resolution(params, m + 1)
    cfg = _cascade_config(params)
    if params.get('biorthogonal'):
        psi = sample_biorthogonal_wavelet(n, m, mu, cfg, K, params['stationary'])
    else:
        psi = sample_prewavelet(n, m, mu, cfg, K, stationary=params['stationary'])
    return _sample_artifact('psi', psi, params, K)


def phidual_artifact(params):
    n, m, mu = params['n'], params['m'], params['mu']
    K = _resolution(params, m)
    phi = sample_dual_refinable(n, m, mu, _cascade_config(params), K, params['stationary'])
    return _sample_artifact('phidual', phi, params, K)


def psidual_artifact(params):
    n, m, mu = params['n'], params['m'], params['mu']
    K = _resolution(params, m + 1)
    psi = sample_dual_wavelet(n, m, mu, _cascade_config(params), K, params['stationary'])
    return _sample_artifact('psidual', psi, params, K)


def _printed_dual(n, m, mu, stationary, alpha):
    if n != 3 or mu != PRINTED_DUALS_MU or stationary or m not in PRINTED_DUALS or alpha >= len(PRINTED_DUALS[m]):
        return None
    return PRINTED_DUALS[m][alpha]


def biorth_artifact(params):
    """Solver duals next to the closed form and the printed table, one Celery column per level."""
    n, mu, stationary = params['n'], params['mu'], params['stationary']
    columns = [dual_mask_column.delay(n, m, mu, stationary).get() for m in params['m']]
    rows = []
    for column in columns:
        m = column['m']
        solver = LaurentPoly(column['offset'], column['values'])
        L = len(column['values']) - 1
        closed = closed_form_dual_n3(m, mu) if n == 3 and m >= 1 and not stationary else None
        for alpha in range(column['offset'], column['offset'] + len(column['values'])):
            value = solver[alpha]
            closed_value = closed[alpha] if closed is not None else None
            deviation = abs(value - closed_value) if closed is not None else None
            # printed half mirrored through ã_(L-alpha) = ã_alpha
            mirrored = min(alpha, L - alpha)
            printed = _printed_dual(n, m, mu, stationary, mirrored)
            notes = printed_status(m, mirrored, printed, value) if printed is not None else ''
            rows.append((m, alpha, value, closed_value, deviation, printed, notes))
    artifact = Artifact(DUAL_TABLE_COLUMNS, rows, RunConfig.from_params('biorth', params).metadata())
    excluded = sorted({(row[0], row[1]) for row in rows if row[6] == 'excluded'})
    if excluded:
        artifact.notes.append(f'Printed entries reported but not asserted: {excluded}')
    return artifact


def check_dual_table(params, artifact):
    failures = [
        (row[0], row[1]) for row in artifact.rows
        if row[6] == 'mismatch' or (row[4] is not None and row[4] > CLOSED_FORM_TOLERANCE)
    ]
    if failures:
        raise CheckFailure(f'Dual masks fail the printed or closed-form comparison at {failures}')
    artifact.notes.append('Dual masks match the closed form and every asserted printed entry')


def gramian_artifact(params):
    n, mu, stationary = params['n'], params['mu'], params['stationary']
    rows, notes = [], []
    for m in params['m']:
        column = gramian_column.delay(n, m, mu, params['max_iter'], params['tol'], stationary).get()
        for j, (value, pou) in enumerate(zip(column['values'], column['pou_values'])):
            rows.append((m, column['offset'] + j, value, pou))
        if n == 3 and m == 0 and mu == PRINTED_GRAMIAN_MU and not stationary:
            d = prewavelet_mask(LaurentPoly(column['offset'], column['values']))
            pairs = ', '.join(f'{alpha}: {d[alpha + 1]:+.4f} vs {printed:+.4f}' for alpha, printed in sorted(PRINTED_GRAMIAN.items()))
            notes.append(f'd_(alpha+1) against the printed list (signs asserted, magnitudes reported): {pairs}')
    return Artifact(GRAMIAN_COLUMNS, rows, RunConfig.from_params('gramian', params).metadata(), notes)


def analyze_artifact(params, signal):
    n, mu, stationary = params['n'], params['mu'], params['stationary']
    base, top = params['m'], params['m'] + params['levels']
    decomposition = analyze(signal, base, top, FilterFamily(n, mu, stationary))
    artifact = Artifact(
        DECOMPOSITION_COLUMNS,
        decomposition.to_rows(),
        RunConfig.from_params('analyze', params).metadata(),
    )
    artifact.notes.append(f'{nonzero_count(decomposition, params["tau"])} coefficients above {params["tau"]:g}')
    if params.get('verify_pr'):
        artifact.notes.append(f'max round-trip error {round_trip_error(signal, decomposition):.3e}')
    if params.get('compare_stationary'):
        counts = [
            nonzero_count(analyze(signal, base, top, FilterFamily(n, mu, flag)), params['tau'])
            for flag in (False, True)
        ]
        artifact.notes.append(
            f'nonzero coefficients above {params["tau"]:g}: nonstationary {counts[0]}, stationary {counts[1]} '
            f'(reference {REFERENCE_NONZERO_COUNTS[0]} vs {REFERENCE_NONZERO_COUNTS[1]})'
        )
    return artifact


def decomposition_from_rows(rows, family):
    """Rebuild a Decomposition from (level, kind, index, value) rows."""
    approx_levels = {level for level, kind, _, _ in rows if kind == CoefficientKind.APPROX}
    unknown = {kind for _, kind, _, _ in rows} - set(CoefficientKind.values)
    if unknown:
        raise SignalFormatError(f'Unknown coefficient kinds {sorted(unknown)}')
    if len(approx_levels) != 1:
        raise DimensionError(f'Expected one approximation level, found {sorted(approx_levels)}')
    base = approx_levels.pop()
    detail_levels = sorted({level for level, kind, _, _ in rows if kind == CoefficientKind.DETAIL})
    top = base + len(detail_levels)
    if detail_levels != list(range(base, top)):
        raise DimensionError(f'Detail levels {detail_levels} do not run consecutively from {base}')

    def channel(level, kind):
        return Signal.from_pairs([(i, v) for lv, k, i, v in rows if lv == level and k == kind])

    details = [channel(level, CoefficientKind.DETAIL) for level in detail_levels]
    return Decomposition(base, top, channel(base, CoefficientKind.APPROX), details, family)


def synthesize_artifact(params, rows):
    if rows:
        family = FilterFamily(params['n'], params['mu'], params['stationary'])
        signal = synthesize(decomposition_from_rows(rows, family))
    else:
        signal = Signal.empty()
    return Artifact(SEQUENCE_COLUMNS, signal.to_pairs(), RunConfig.from_params('synthesize', params).metadata())
