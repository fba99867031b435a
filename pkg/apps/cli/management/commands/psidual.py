from apps.cli.base import SampleCommand
from apps.cli.serializers import SampleSerializer
from apps.cli.services import psidual_artifact


class Command(SampleCommand):
    help = 'Emit cascade samples of the dual wavelet (x,value)'
    serializer_class = SampleSerializer
    builder = staticmethod(psidual_artifact)
