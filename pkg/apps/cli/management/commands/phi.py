"""
Sample the refinable function phi^(n,m) by the cascade algorithm.

Usage:
    python manage.py phi --n 3 --m 0 --depth 8
    python manage.py phi --m 0 --compare-bspline --out phi.csv
"""
from apps.cli.base import SampleCommand
from apps.cli.serializers import SampleSerializer
from apps.cli.services import phi_artifact


class Command(SampleCommand):
    help = 'Emit cascade samples of phi^(n,m) (x,value)'
    serializer_class = SampleSerializer
    builder = staticmethod(phi_artifact)

    def add_command_arguments(self, parser):
        super().add_command_arguments(parser)
        parser.add_argument(
            '--compare-bspline',
            action='store_true',
            help='Add a column with the B-spline B^(n,m) on the same grid',
        )
