from django.apps import AppConfig


class PrewaveletConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.prewavelet'
    verbose_name = 'Prewavelets'
