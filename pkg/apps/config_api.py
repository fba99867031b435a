"""
System configuration API endpoints.
"""
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from django.conf import settings

from apps.biorthogonal.services import DEFAULT_CONVENTION
from apps.cli.constants import OutputFormat
from apps.filterbank.constants import ANALYSIS_GAIN
from ripplets.validators import MAX_LEVEL, MAX_ORDER, MAX_RESOLUTION, MIN_ORDER


@api_view(['GET'])
@permission_classes([AllowAny])
def get_public_config(request):
    """
    Return the toolkit defaults and the filter convention.
    Artifacts produced under other settings record theirs in their metadata.
    """
    return Response({
        'defaults': {
            'mu': getattr(settings, 'RIPPLET_DEFAULT_MU', 1.1),
            'cascade_depth': getattr(settings, 'RIPPLET_CASCADE_DEPTH', 8),
            'gramian_tol': getattr(settings, 'RIPPLET_GRAMIAN_TOL', 1e-12),
            'gramian_max_iter': getattr(settings, 'RIPPLET_GRAMIAN_MAX_ITER', 64),
            'bezout_tol': getattr(settings, 'RIPPLET_BEZOUT_TOL', 1e-10),
            'spike_tau': getattr(settings, 'RIPPLET_SPIKE_TAU', 1e-8),
        },
        'limits': {
            'order': [MIN_ORDER, MAX_ORDER],
            'max_level': MAX_LEVEL,
            'max_resolution': MAX_RESOLUTION,
        },
        'filterbank': {
            'analysis_gain': ANALYSIS_GAIN,
            'convention': DEFAULT_CONVENTION.to_dict(),
        },
        'formats': OutputFormat.values,
    })
