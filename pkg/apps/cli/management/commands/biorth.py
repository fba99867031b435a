"""
Tabulate the dual masks next to the closed form and the printed values.

Usage:
    python manage.py biorth --m 0..8
    python manage.py biorth --m 1..8 --check --format json

Each level is one Celery task; with CELERY_TASK_ALWAYS_EAGER unset the
columns are computed by workers.
"""
from apps.cli.base import RippletCommand
from apps.cli.serializers import DualTableSerializer
from apps.cli.services import biorth_artifact, check_dual_table


class Command(RippletCommand):
    help = 'Emit dual masks with closed-form deviation and printed values'
    serializer_class = DualTableSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--m', help="Level range such as '0..8'")
        parser.add_argument(
            '--check',
            action='store_true',
            help='Exit 5 on a closed-form deviation above 1e-9 or an asserted printed mismatch',
        )

    def build(self, params, options):
        return biorth_artifact(params)

    def check(self, params, artifact):
        check_dual_table(params, artifact)
