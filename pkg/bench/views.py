from drf_spectacular.utils import extend_schema, OpenApiExample
from rest_framework import mixins, viewsets
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView
import logging

from core.io import parse_instance, parse_schedule
from core.throttling import BurstRateThrottle, SolveRateThrottle

from .gantt import render_gantt
from .models import BenchRun
from .serializers import BenchRunListSerializer, BenchRunSerializer, GanttRequestSerializer
from .tasks import execute_bench_run

logger = logging.getLogger(__name__)


class BenchRunViewSet(mixins.ListModelMixin,
                      mixins.RetrieveModelMixin,
                      mixins.CreateModelMixin,
                      viewsets.GenericViewSet):
    queryset = BenchRun.objects.all()
    serializer_class = BenchRunSerializer
    permission_classes = [AllowAny]
    filterset_fields = ['status', 'seed']

    def get_serializer_class(self):
        if self.action == 'list':
            return BenchRunListSerializer
        return BenchRunSerializer

    def get_throttles(self):
        # creating a run starts a whole benchmark
        if self.action == 'create':
            return [SolveRateThrottle()]
        return [BurstRateThrottle()]

    def perform_create(self, serializer):
        run = serializer.save()
        logger.info(f"Queued bench run {run.pk} ({len(run.strategies)} strategies, seed {run.seed})")
        execute_bench_run.delay(run.pk)

    def create(self, request, *args, **kwargs):
        response = super().create(request, *args, **kwargs)
        # eager mode finishes the run inside delay(); report the stored state
        run = BenchRun.objects.get(pk=response.data['id'])
        response.data = BenchRunSerializer(run).data
        return response


class GanttView(APIView):
    permission_classes = [AllowAny]
    throttle_classes = [SolveRateThrottle]

    @extend_schema(
        request=GanttRequestSerializer,
        responses={200: {'type': 'object', 'properties': {'svg': {'type': 'string'}}}},
        examples=[
            OpenApiExample(
                name="Two processors",
                value={
                    "instance": {"m": 2, "w": [0.5, 0.5], "z": [1.0], "loads": [{"vcomm": 1.0, "vcomp": 1.0}]},
                    "schedule": {"q": [1], "fractions": [[[0.6]], [[0.4]]]},
                },
                request_only=True,
            )
        ]
    )
    def post(self, request):
        serializer = GanttRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        instance = parse_instance(serializer.validated_data['instance'])
        schedule = parse_schedule(serializer.validated_data['schedule'])
        svg = render_gantt(instance.platform, schedule, workload=instance.workload)
        return Response({'svg': svg})
