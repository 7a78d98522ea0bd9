from drf_spectacular.utils import extend_schema, OpenApiExample
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView
import logging

from core.io import parse_instance
from core.serializers import ScheduleSerializer
from core.throttling import SolveRateThrottle

from .formulation import build_lp
from .lpformat import export_lp_text
from .serializers import ExportRequestSerializer, SolveRequestSerializer
from .services import optimal_schedule, resolve_installments

logger = logging.getLogger(__name__)

EXAMPLE_INSTANCE = {
    "m": 2, "w": [0.5, 0.5], "z": [1.0],
    "loads": [{"vcomm": 1.0, "vcomp": 1.0}, {"vcomm": 1.0, "vcomp": 1.0}],
}


def _problem_inputs(data):
    instance = parse_instance(data['instance'])
    q = resolve_installments(instance.workload, installments=data.get('installments'), uniform_q=data.get('uniform_q'))
    return instance, q


class SolveView(APIView):
    """Optimal schedule for fixed installment counts."""
    permission_classes = [AllowAny]
    throttle_classes = [SolveRateThrottle]

    @extend_schema(
        request=SolveRequestSerializer,
        responses={200: {'type': 'object'}, 422: {'type': 'object'}},
        examples=[
            OpenApiExample(
                name="Two-processor example, one installment per load",
                value={"instance": EXAMPLE_INSTANCE, "uniform_q": 1},
                request_only=True,
            )
        ]
    )
    def post(self, request):
        serializer = SolveRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        instance, q = _problem_inputs(data)

        schedule, makespan = optimal_schedule(
            instance.platform, instance.workload, q,
            reduced=data['reduced'], strict_forwarding=data['strict_forwarding'],
        )
        return Response({'makespan': makespan, 'schedule': ScheduleSerializer(schedule).data})


class ExportView(APIView):
    """The scheduling LP in text format."""
    permission_classes = [AllowAny]
    throttle_classes = [SolveRateThrottle]

    @extend_schema(
        request=ExportRequestSerializer,
        responses={200: {'type': 'object', 'properties': {'lp': {'type': 'string'}}}},
    )
    def post(self, request):
        serializer = ExportRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        instance, q = _problem_inputs(data)

        problem = build_lp(
            instance.platform, instance.workload, q,
            reduced=bool(data['reduced']), strict_forwarding=bool(data['strict_forwarding']),
            time_scale=data['time_scale'],
        )
        logger.debug(f"Exporting LP with {problem.n_vars} columns and {problem.n_rows} rows")
        return Response({'lp': export_lp_text(problem)})
