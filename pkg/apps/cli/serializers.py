"""
Parameter serializers shared by the management commands and the HTTP views.
"""
from django.conf import settings
from rest_framework import serializers

from apps.masks.constants import DEFAULT_MU
from apps.prewavelet.constants import DEFAULT_MAX_ITER, DEFAULT_TOL
from apps.refinable.constants import DEFAULT_CASCADE_DEPTH
from apps.filterbank.constants import SPIKE_TAU
from ripplets.validators import (
    MAX_LEVEL,
    parse_level_range,
    validate_level,
    validate_order,
    validate_resolution,
    validate_tension,
    validate_threshold,
)

from .constants import DEFAULT_LEVEL_RANGE, DEFAULT_TRANSFORM_LEVELS, OutputFormat


def default_mu():
    return getattr(settings, 'RIPPLET_DEFAULT_MU', DEFAULT_MU)


def default_depth():
    return getattr(settings, 'RIPPLET_CASCADE_DEPTH', DEFAULT_CASCADE_DEPTH)


def default_format():
    return getattr(settings, 'RIPPLET_OUTPUT_FORMAT', OutputFormat.CSV)


def default_tau():
    return getattr(settings, 'RIPPLET_SPIKE_TAU', SPIKE_TAU)


def default_gramian_tol():
    return getattr(settings, 'RIPPLET_GRAMIAN_TOL', DEFAULT_TOL)


def default_gramian_max_iter():
    return getattr(settings, 'RIPPLET_GRAMIAN_MAX_ITER', DEFAULT_MAX_ITER)


def default_levels():
    return parse_level_range(DEFAULT_LEVEL_RANGE)


class LevelRangeField(serializers.Field):
    """Accepts '0..8', '3' or '1,2,5'."""

    def to_internal_value(self, data):
        if isinstance(data, int):
            validate_level(data)
            return [data]
        return parse_level_range(data)

    def to_representation(self, value):
        return ','.join(str(level) for level in value)


class FamilySerializer(serializers.Serializer):
    """Ripplet family (n, mu) and the artifact format."""
    n = serializers.IntegerField(default=3, validators=[validate_order])
    mu = serializers.FloatField(default=default_mu, validators=[validate_tension])
    stationary = serializers.BooleanField(default=False)
    format = serializers.ChoiceField(choices=OutputFormat.choices, default=default_format)


class MaskTableSerializer(FamilySerializer):
    m = LevelRangeField(default=default_levels)
    check = serializers.BooleanField(default=False)


class DualTableSerializer(MaskTableSerializer):
    pass


class SampleSerializer(FamilySerializer):
    """Cascade sampling of one function at level m."""
    m = serializers.IntegerField(default=0, validators=[validate_level])
    depth = serializers.IntegerField(default=default_depth, min_value=1)
    resolution = serializers.IntegerField(required=False, validators=[validate_resolution])
    compare_bspline = serializers.BooleanField(default=False)
    biorthogonal = serializers.BooleanField(default=False)

    def validate(self, attrs):
        resolution = attrs.get('resolution')
        if resolution is not None and resolution < attrs['m'] + attrs['depth']:
            raise serializers.ValidationError(
                {'resolution': f'K={resolution} is below m + depth = {attrs["m"] + attrs["depth"]}.'}
            )
        return attrs


class GramianSerializer(FamilySerializer):
    m = LevelRangeField(default=lambda: [0])
    max_iter = serializers.IntegerField(default=default_gramian_max_iter, min_value=1)
    tol = serializers.FloatField(default=default_gramian_tol, min_value=0.0)


class TransformSerializer(FamilySerializer):
    """Analysis or synthesis from level m + levels down to m."""
    m = serializers.IntegerField(default=0, validators=[validate_level])
    levels = serializers.IntegerField(default=DEFAULT_TRANSFORM_LEVELS, min_value=1, max_value=MAX_LEVEL)
    tau = serializers.FloatField(default=default_tau, validators=[validate_threshold])
    compare_stationary = serializers.BooleanField(default=False)
    verify_pr = serializers.BooleanField(default=False)
