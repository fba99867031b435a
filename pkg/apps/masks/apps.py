from django.apps import AppConfig


class MasksConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.masks'
    verbose_name = 'Scaling Masks'
