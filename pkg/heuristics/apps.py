from django.apps import AppConfig


class HeuristicsConfig(AppConfig):
    name = 'heuristics'
    verbose_name = 'Scheduling heuristics'
