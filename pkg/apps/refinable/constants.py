from django.db import models


class InitialFunction(models.TextChoices):
    BOX = 'box', 'Box B^(0)'
    HAT = 'hat', 'Hat B^(1)'


DEFAULT_CASCADE_DEPTH = 8
# Output grid is 2^-(m + k + EXTRA_RESOLUTION) unless given explicitly.
EXTRA_RESOLUTION = 2

OMEGA_POINTS = 256
BELL_SYMMETRY_TOL = 1e-6
BELL_MONOTONE_TOL = -1e-12
BELL_CURVATURE_NOISE = 1e-8
