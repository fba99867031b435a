"""
Iterate the cross-scale Gramian and emit it per level.

Usage:
    python manage.py gramian --n 3 --m 0..2
"""
from apps.cli.base import RippletCommand
from apps.cli.serializers import GramianSerializer
from apps.cli.services import gramian_artifact


class Command(RippletCommand):
    help = 'Emit Gramian vectors g^(n,m) (level,index,gramian,pou_gramian)'
    serializer_class = GramianSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--m', help="Level range such as '0..2'")
        parser.add_argument('--max-iter', type=int, help='Iteration limit (default: 64)')
        parser.add_argument('--tol', type=float, help='Relative stopping tolerance (default: 1e-12)')

    def build(self, params, options):
        return gramian_artifact(params)
