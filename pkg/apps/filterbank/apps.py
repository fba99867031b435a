from django.apps import AppConfig


class FilterbankConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.filterbank'
    verbose_name = 'Filter Bank'
