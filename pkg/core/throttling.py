# core/throttling.py
from rest_framework.throttling import SimpleRateThrottle


class ClientRateThrottle(SimpleRateThrottle):
    """
    Rate limit per client: staff users by account, everybody else by address.
    Rates come from REST_FRAMEWORK['DEFAULT_THROTTLE_RATES'][scope].
    """

    def get_cache_key(self, request, view):
        user = getattr(request, 'user', None)
        if user is not None and user.is_authenticated:
            ident = f'user-{user.pk}'
        else:
            ident = self.get_ident(request)
        return self.cache_format % {'scope': self.scope, 'ident': ident}


class BurstRateThrottle(ClientRateThrottle):
    """Plain reads such as run listings."""
    scope = 'burst'


class SolveRateThrottle(ClientRateThrottle):
    """
    Endpoints that run a solver or a simulation. A single LP solve can take
    seconds, so these get a tighter budget than plain reads.
    """
    scope = 'solve'
