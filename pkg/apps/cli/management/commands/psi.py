"""
Sample the prewavelet psi^(n,m), or the biorthogonal wavelet.

Usage:
    python manage.py psi --n 3 --m 0
    python manage.py psi --m 1 --biorthogonal
"""
from apps.cli.base import SampleCommand
from apps.cli.serializers import SampleSerializer
from apps.cli.services import psi_artifact


class Command(SampleCommand):
    help = 'Emit cascade samples of psi^(n,m) (x,value)'
    serializer_class = SampleSerializer
    builder = staticmethod(psi_artifact)

    def add_command_arguments(self, parser):
        super().add_command_arguments(parser)
        parser.add_argument(
            '--biorthogonal',
            action='store_true',
            help='Sample the biorthogonal wavelet instead of the prewavelet',
        )
