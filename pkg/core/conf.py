from django.conf import settings

DEFAULTS = {
    'VALIDATION_TOL': 1e-9,
    'SOLVER': {},
    'LP_REDUCED_FORM': False,
    'LP_STRICT_FORWARDING': False,
    'MULTI_INST_UNCAPPED_LIMIT': 10000,
    'BENCH_USE_CELERY': False,
    'BENCH_REDUCED_FORM': True,
    'FORMAT_VERSION': 1,
}


def divload_setting(name):
    """Read one entry of settings.DIVLOAD, falling back to the built-in default."""
    return getattr(settings, 'DIVLOAD', {}).get(name, DEFAULTS[name])
