import os
from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'divload.settings')

app = Celery('divload')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()
