"""
Reconstruct a signal from a decomposition artifact.

Usage:
    python manage.py synthesize decomposition.csv --n 3 --mu 1.1
"""
from apps.cli.artifacts import read_decomposition
from apps.cli.base import RippletCommand
from apps.cli.serializers import TransformSerializer
from apps.cli.services import synthesize_artifact


class Command(RippletCommand):
    help = 'Emit the signal reconstructed from a decomposition (index,value)'
    serializer_class = TransformSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('input', help='Decomposition artifact written by analyze')

    def build(self, params, options):
        return synthesize_artifact(params, read_decomposition(options['input']))
