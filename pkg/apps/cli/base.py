"""
Shared plumbing for the toolkit management commands.

Every command validates its options with a serializer, builds an Artifact,
writes it to --out (or stdout) and prints notes to stderr. Domain errors
become CommandError with the exit code the error class declares.
"""
import logging

from django.core.management.base import BaseCommand, CommandError

from ripplets.exceptions import ParameterDomainError, RippletError

from .artifacts import write_artifact
from .constants import OutputFormat

logger = logging.getLogger(__name__)


class RippletCommand(BaseCommand):
    serializer_class = None

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, help='Order n of the ripplet family (default: 3)')
        parser.add_argument('--mu', type=float, help='Tension parameter mu > 1')
        parser.add_argument(
            '--stationary',
            action='store_true',
            help='Use the fundamental B-spline mask at every level',
        )
        parser.add_argument('--format', choices=OutputFormat.values, help='Artifact format (default: csv)')
        parser.add_argument('--out', help='Output path; stdout when omitted')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build(self, params, options):
        raise NotImplementedError

    def check(self, params, artifact):
        pass

    def validate(self, options):
        data = {key: value for key, value in options.items() if value is not None}
        serializer = self.serializer_class(data=data)
        if not serializer.is_valid():
            messages = '; '.join(
                f'{field}: {" ".join(str(e) for e in errors)}' for field, errors in serializer.errors.items()
            )
            raise CommandError(messages, returncode=ParameterDomainError.exit_code)
        return serializer.validated_data

    def handle(self, *args, **options):
        params = self.validate(options)
        try:
            artifact = self.build(params, options)
            write_artifact(artifact.render(params['format']), options.get('out'), self.stdout)
            if params.get('check'):
                self.check(params, artifact)
        except RippletError as e:
            logger.warning(f'{type(e).__name__}: {e}')
            raise CommandError(str(e), returncode=e.exit_code) from e
        for note in artifact.notes:
            self.stderr.write(note)


class SampleCommand(RippletCommand):
    """Cascade samples of one function at level m."""
    builder = None

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, help='Level m (default: 0)')
        parser.add_argument('--depth', type=int, help='Cascade depth k (default: 8)')
        parser.add_argument('--resolution', type=int, help='Grid resolution K (default: m + k + 2)')

    def build(self, params, options):
        return self.builder(params)
