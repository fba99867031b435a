"""
Multilevel analysis of a signal file, or of the bundled spike.

Usage:
    python manage.py analyze signal.csv --levels 3 --verify-pr
    python manage.py analyze --compare-stationary --tau 1e-8
"""
from apps.cli.artifacts import read_signal
from apps.cli.base import RippletCommand
from apps.cli.serializers import TransformSerializer
from apps.cli.services import analyze_artifact
from apps.filterbank.services import bundled_spike


class Command(RippletCommand):
    help = 'Emit the decomposition of a signal (level,kind,index,value)'
    serializer_class = TransformSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('input', nargs='?', help='CSV or JSON signal; the bundled spike when omitted')
        parser.add_argument('--m', type=int, help='Base level m0 (default: 0)')
        parser.add_argument('--levels', type=int, help='Number of levels (default: 3)')
        parser.add_argument('--tau', type=float, help='Threshold for nonzero counts (default: 1e-8)')
        parser.add_argument('--compare-stationary', action='store_true', help='Report counts for both families')
        parser.add_argument('--verify-pr', action='store_true', help='Report the round-trip error')

    def build(self, params, options):
        signal = read_signal(options['input']) if options.get('input') else bundled_spike()
        return analyze_artifact(params, signal)
