from drf_spectacular.utils import extend_schema, OpenApiExample
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView
import logging

from core.io import parse_instance
from core.throttling import SolveRateThrottle

from .serializers import HeuristicOutcomeSerializer, HeuristicRequestSerializer
from .strategies import multi_inst, simple_schedule, single_inst

logger = logging.getLogger(__name__)


class HeuristicView(APIView):
    """
    Run a heuristic. A heuristic without a solution still answers 200 with
    status no_solution and its diagnostics.
    """
    permission_classes = [AllowAny]
    throttle_classes = [SolveRateThrottle]

    @extend_schema(
        request=HeuristicRequestSerializer,
        responses={200: {'type': 'object'}},
        examples=[
            OpenApiExample(
                name="Capped multi-installment",
                value={
                    "instance": {"m": 2, "w": [0.75, 0.75], "z": [1.0],
                                 "loads": [{"vcomm": 1.0, "vcomp": 1.0}, {"vcomm": 1.0, "vcomp": 1.0}]},
                    "name": "multi-inst",
                    "cap": 100,
                },
                request_only=True,
            )
        ]
    )
    def post(self, request):
        serializer = HeuristicRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        instance = parse_instance(data['instance'])
        p, wl = instance.platform, instance.workload

        if data['name'] == 'simple':
            outcome = simple_schedule(p, wl)
        elif data['name'] == 'single-inst':
            outcome = single_inst(p, wl)
        else:
            outcome = multi_inst(p, wl, cap=data['cap'])
        return Response(HeuristicOutcomeSerializer(outcome).data)
