from rest_framework import serializers

from core.serializers import ScheduleSerializer

from .strategies import OutcomeStatus


class HeuristicRequestSerializer(serializers.Serializer):
    NAMES = ['simple', 'single-inst', 'multi-inst']

    instance = serializers.DictField(help_text="instance document (format_version 1)")
    name = serializers.ChoiceField(choices=NAMES)
    cap = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None,
                                   help_text="multi-inst only; omitted means uncapped")

    def validate(self, attrs):
        if attrs['name'] != 'multi-inst' and attrs['cap'] is not None:
            raise serializers.ValidationError({'cap': "only multi-inst takes a cap"})
        return attrs


class HeuristicOutcomeSerializer(serializers.BaseSerializer):
    def to_representation(self, outcome):
        d = outcome.diagnostics
        data = {
            'strategy': outcome.strategy,
            'status': outcome.status.value if isinstance(outcome.status, OutcomeStatus) else outcome.status,
            'diagnostics': {
                'installments': list(d.installments),
                'reason': d.reason,
                'failed_load': d.failed_load,
                'coverage_bound': d.coverage_bound,
            },
            'makespan': outcome.makespan,
        }
        data['schedule'] = ScheduleSerializer(outcome.schedule).data if outcome.ok else None
        return data
