from django.conf import settings
from django.db import connection
from drf_spectacular.utils import extend_schema, OpenApiExample
from redis import Redis
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView
import logging

from .conf import divload_setting
from .io import parse_instance, parse_schedule
from .serializers import ValidateRequestSerializer, ValidationReportSerializer
from .throttling import SolveRateThrottle
from .validators import validate_schedule

logger = logging.getLogger(__name__)

SERVICES_SCHEMA = {
    'type': 'object',
    'properties': {
        'overall': {'type': 'string'},
        'services': {
            'type': 'object',
            'properties': {
                'db': {'type': 'string'},
                'redis': {'type': 'string'},
            }
        }
    }
}


@extend_schema(
    responses={200: SERVICES_SCHEMA, 503: SERVICES_SCHEMA},
    examples=[
        OpenApiExample(
            name="Healthy services",
            value={"overall": "healthy", "services": {"db": "healthy", "redis": "healthy"}},
            response_only=True
        ),
        OpenApiExample(
            name="Redis skipped",
            value={"overall": "healthy", "services": {"db": "healthy", "redis": "skipped"}},
            response_only=True
        )
    ]
)
class HealthCheckView(APIView):
    permission_classes = [AllowAny]

    def get(self, request):
        logger.debug("Health check initiated")
        services = {}

        try:
            with connection.cursor() as cursor:
                cursor.execute("SELECT 1")
            services['db'] = 'healthy'
        except Exception as e:
            logger.error(f"DB health check failed: {e}")
            services['db'] = 'unhealthy'

        # Redis only backs the cache when CACHE_URL is configured
        cache_url = getattr(settings, 'CACHE_URL', None)
        if cache_url:
            try:
                Redis.from_url(cache_url).ping()
                services['redis'] = 'healthy'
            except Exception as e:
                logger.error(f"Redis health check failed: {e}")
                services['redis'] = 'unhealthy'
        else:
            services['redis'] = 'skipped'

        overall = 'healthy' if all(v != 'unhealthy' for v in services.values()) else 'unhealthy'
        http_status = status.HTTP_200_OK if overall == 'healthy' else status.HTTP_503_SERVICE_UNAVAILABLE
        return Response({'overall': overall, 'services': services}, status=http_status)


class ValidateScheduleView(APIView):
    """Check a schedule against constraint families 1-13 of its instance."""
    permission_classes = [AllowAny]
    throttle_classes = [SolveRateThrottle]

    @extend_schema(
        request=ValidateRequestSerializer,
        responses={200: {'type': 'object'}, 422: {'type': 'object'}},
        examples=[
            OpenApiExample(
                name="Single processor",
                value={
                    "instance": {"m": 1, "w": [1.0], "z": [], "loads": [{"vcomm": 1.0, "vcomp": 2.0}]},
                    "schedule": {"q": [1], "fractions": [[[1.0]]]},
                },
                request_only=True,
            )
        ]
    )
    def post(self, request):
        serializer = ValidateRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data

        instance = parse_instance(data['instance'])
        schedule = parse_schedule(data['schedule'])
        tol = data.get('tol', divload_setting('VALIDATION_TOL'))
        report = validate_schedule(
            instance.platform, instance.workload, schedule.installments, schedule,
            tol=tol, strict_forwarding=data['strict_forwarding'],
        )
        logger.info(f"Validated schedule q={list(schedule.installments)}: {report.summary()}")
        return Response(ValidationReportSerializer(report).data)
