"""
Read-only JSON views over the same artifacts the management commands emit.
"""
from rest_framework import status
from rest_framework.decorators import api_view, permission_classes as perm
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
import logging

from apps.filterbank.services import bundled_spike
from ripplets.exceptions import RippletError

from .serializers import DualTableSerializer, GramianSerializer, MaskTableSerializer, TransformSerializer
from .services import analyze_artifact, biorth_artifact, gramian_artifact, mask_artifact

logger = logging.getLogger(__name__)


def _artifact_response(request, serializer_class, builder):
    serializer = serializer_class(data=request.query_params.dict())
    if not serializer.is_valid():
        return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
    try:
        artifact = builder(serializer.validated_data)
    except RippletError as e:
        logger.warning(f'{request.path}: {type(e).__name__}: {e}')
        return Response({'error': str(e)}, status=status.HTTP_400_BAD_REQUEST)
    return Response(artifact.to_dict())


@api_view(['GET'])
@perm([AllowAny])
def get_masks(request):
    """
    Mask coefficients per level.
    Query parameters: n, mu, m (a level range such as 0..8), stationary.
    """
    return _artifact_response(request, MaskTableSerializer, mask_artifact)


@api_view(['GET'])
@perm([AllowAny])
def get_duals(request):
    """Dual masks with the closed-form deviation and the printed values."""
    return _artifact_response(request, DualTableSerializer, biorth_artifact)


@api_view(['GET'])
@perm([AllowAny])
def get_gramian(request):
    """Gramian vectors per level."""
    return _artifact_response(request, GramianSerializer, gramian_artifact)


@api_view(['GET'])
@perm([AllowAny])
def get_spike(request):
    """Decomposition of the bundled spike with nonzero counts in the notes."""
    return _artifact_response(
        request,
        TransformSerializer,
        lambda params: analyze_artifact(params, bundled_spike()),
    )
