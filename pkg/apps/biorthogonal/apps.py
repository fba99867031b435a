from django.apps import AppConfig


class BiorthogonalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.biorthogonal'
    verbose_name = 'Biorthogonal Filters'
