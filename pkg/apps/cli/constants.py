from django.db import models


class OutputFormat(models.TextChoices):
    CSV = 'csv', 'CSV'
    JSON = 'json', 'JSON'


SEQUENCE_COLUMNS = ('index', 'value')
TABLE_COLUMNS = ('level', 'index', 'value')
SAMPLE_COLUMNS = ('x', 'value')
OVERLAY_COLUMNS = ('x', 'value', 'bspline')
DECOMPOSITION_COLUMNS = ('level', 'kind', 'index', 'value')
GRAMIAN_COLUMNS = ('level', 'index', 'gramian', 'pou_gramian')
DUAL_TABLE_COLUMNS = ('m', 'alpha', 'solver', 'closed_form', 'deviation', 'printed', 'notes')

# Solver and closed-form duals must agree to this accuracy.
CLOSED_FORM_TOLERANCE = 1e-9
DEFAULT_LEVEL_RANGE = '0..8'
DEFAULT_TRANSFORM_LEVELS = 3
