from apps.cli.base import SampleCommand
from apps.cli.serializers import SampleSerializer
from apps.cli.services import phidual_artifact


class Command(SampleCommand):
    help = 'Emit cascade samples of the dual refinable function (x,value)'
    serializer_class = SampleSerializer
    builder = staticmethod(phidual_artifact)
