from django.apps import AppConfig


class LpConfig(AppConfig):
    name = 'lp'
    verbose_name = 'Linear programming'
