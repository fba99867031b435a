"""
Celery application for the ripplet toolkit.

Tasks run in-process while CELERY_TASK_ALWAYS_EAGER is set (the default),
so table sweeps work without a broker. Point CELERY_BROKER_URL at Redis and
disable eager mode to fan columns out to workers.
"""
import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ripplets.settings')

app = Celery('ripplets')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()
