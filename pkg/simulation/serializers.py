from rest_framework import serializers

from core.serializers import ScheduleSerializer

from .engine import SimMode


class ReplayRequestSerializer(serializers.Serializer):
    instance = serializers.DictField(help_text="instance document (format_version 1)")
    schedule = serializers.DictField(help_text="schedule document")
    use_latency = serializers.BooleanField(required=False, default=True,
                                           help_text="apply the instance's link latencies when present")
    startup = serializers.FloatField(required=False, default=0.0, min_value=0)
    mode = serializers.ChoiceField(choices=SimMode.choices, required=False, default=SimMode.REPLAY_EXACT)
    strict = serializers.BooleanField(required=False, default=True)
    skip_empty_messages = serializers.BooleanField(required=False, default=False)
    include_trace = serializers.BooleanField(required=False, default=False)


class SimReportSerializer(serializers.BaseSerializer):
    def to_representation(self, report):
        data = {
            'realized_makespan': report.realized_makespan,
            'per_processor_busy': list(report.per_processor_busy),
            'violations': [
                {'processor': proc, 'first': list(first), 'second': list(second)}
                for proc, first, second in report.violations
            ],
            'schedule': ScheduleSerializer(report.schedule).data,
        }
        if self.context.get('include_trace'):
            data['trace'] = [
                {
                    'time': e.time, 'entity': e.entity, 'kind': str(e.kind),
                    'load': e.load, 'installment': e.installment, 'detail': e.detail,
                }
                for e in report.event_trace
            ]
        return data
