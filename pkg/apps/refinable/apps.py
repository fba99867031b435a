from django.apps import AppConfig


class RefinableConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.refinable'
    verbose_name = 'Refinable Functions'
