from drf_spectacular.utils import extend_schema
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView
import logging

from core.io import parse_instance, parse_schedule
from core.throttling import SolveRateThrottle

from .engine import SimConfig, replay
from .serializers import ReplayRequestSerializer, SimReportSerializer

logger = logging.getLogger(__name__)


class ReplayView(APIView):
    permission_classes = [AllowAny]
    throttle_classes = [SolveRateThrottle]

    @extend_schema(request=ReplayRequestSerializer, responses={200: {'type': 'object'}, 422: {'type': 'object'}})
    def post(self, request):
        serializer = ReplayRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        instance = parse_instance(data['instance'])
        schedule = parse_schedule(data['schedule'])

        cfg = SimConfig(
            link_latency=instance.latency if data['use_latency'] else None,
            startup=data['startup'],
            mode=data['mode'],
            skip_empty_messages=data['skip_empty_messages'],
            strict=data['strict'],
        )
        report = replay(instance.platform, instance.workload, schedule, cfg)
        logger.info(f"Replayed schedule q={list(schedule.installments)}: makespan {report.realized_makespan:.9g}")
        return Response(SimReportSerializer(report, context={'include_trace': data['include_trace']}).data)
