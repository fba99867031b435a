"""
Filter-bank defaults and the bundled spike signal.
"""
from django.db import models


class CoefficientKind(models.TextChoices):
    APPROX = 'approx', 'Approximation'
    DETAIL = 'detail', 'Detail'


ANALYSIS_GAIN = 1.0

SPIKE_LENGTH = 64
SPIKE_START = 31
SPIKE_SAMPLES = (0.3, 1.0, 0.3)
SPIKE_LEVELS = 3
SPIKE_ORDER = 3
SPIKE_MU = 1.1
SPIKE_TAU = 1e-8

# Counts reported for the tension family and the B-spline family on the
# original spike; the bundled spike is not that signal.
REFERENCE_NONZERO_COUNTS = (26, 39)
