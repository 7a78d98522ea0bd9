# core/middleware/request_logging.py
import logging
import time

logger = logging.getLogger(__name__)

API_PREFIXES = ('/core/', '/lp/', '/heuristics/', '/simulation/', '/bench/')
SLOW_REQUEST_MS = 5000.0


class RequestLoggingMiddleware:
    """
    Log toolkit API calls with their status and wall time.

    Rejected inputs (4xx) and requests slower than SLOW_REQUEST_MS go out at
    WARNING, server errors at ERROR, the rest at INFO.
    """

    def __init__(self, get_response):
        self.get_response = get_response

    def __call__(self, request):
        if not request.path.startswith(API_PREFIXES):
            return self.get_response(request)

        started = time.perf_counter()
        response = self.get_response(request)
        elapsed_ms = (time.perf_counter() - started) * 1000

        if response.status_code >= 500:
            level = logging.ERROR
        elif response.status_code >= 400 or elapsed_ms > SLOW_REQUEST_MS:
            level = logging.WARNING
        else:
            level = logging.INFO
        logger.log(
            level,
            f"{request.method} {request.path} -> {response.status_code} in {elapsed_ms:.1f} ms",
            extra={'path': request.path, 'status_code': response.status_code, 'elapsed_ms': elapsed_ms},
        )
        return response
