"""
Parameter validators shared by the command and HTTP serializers.
"""
from rest_framework.exceptions import ValidationError

MIN_ORDER = 2
MAX_ORDER = 12
MAX_LEVEL = 30
MAX_RESOLUTION = 20


def validate_order(value):
    """Support/smoothness index n of the ripplet family."""
    if not MIN_ORDER <= value <= MAX_ORDER:
        raise ValidationError(f'n must lie in [{MIN_ORDER}, {MAX_ORDER}], got {value}.')


def validate_level(value):
    if not 0 <= value <= MAX_LEVEL:
        raise ValidationError(f'Level must lie in [0, {MAX_LEVEL}], got {value}.')


def validate_tension(value):
    """The tension parameter mu must be strictly greater than 1."""
    if not value > 1:
        raise ValidationError(f'mu must be > 1, got {value}.')


def validate_resolution(value):
    if not 1 <= value <= MAX_RESOLUTION:
        raise ValidationError(f'Resolution K must lie in [1, {MAX_RESOLUTION}], got {value}.')


def validate_threshold(value):
    if value < 0:
        raise ValidationError(f'Threshold must be nonnegative, got {value}.')


def parse_level_range(text):
    """
    Parse a level range such as '0..8', '3' or '1,2,5' into a sorted list.
    """
    text = str(text).strip()
    try:
        if '..' in text:
            lo, hi = (int(part) for part in text.split('..', 1))
            levels = list(range(lo, hi + 1))
        else:
            levels = sorted({int(part) for part in text.split(',') if part.strip()})
    except ValueError:
        raise ValidationError(f'Cannot parse level range "{text}".')
    if not levels:
        raise ValidationError(f'Level range "{text}" is empty.')
    for level in levels:
        validate_level(level)
    return levels
