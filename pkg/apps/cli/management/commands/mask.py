"""
Emit the scaling masks a^(n,m) for a range of levels.

Usage:
    python manage.py mask --n 3 --m 0..8 --mu 1.1
    python manage.py mask --m 0..8 --check --format json --out masks.json
"""
from apps.cli.base import RippletCommand
from apps.cli.serializers import MaskTableSerializer
from apps.cli.services import check_mask_table, mask_artifact


class Command(RippletCommand):
    help = 'Emit mask coefficients per level (level,index,value)'
    serializer_class = MaskTableSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--m', help="Level range such as '0..8' or '1,3'")
        parser.add_argument('--check', action='store_true', help='Exit 5 unless the printed masks are matched')

    def build(self, params, options):
        return mask_artifact(params)

    def check(self, params, artifact):
        check_mask_table(params, artifact)
