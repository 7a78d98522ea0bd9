from rest_framework import serializers

from core.exceptions import InputValidationError

from .generation import GenConfig
from .models import BenchRun
from .runner import parse_strategies


class BenchRunSerializer(serializers.ModelSerializer):
    strategies = serializers.ListField(child=serializers.CharField(), allow_empty=False,
                                       help_text="strategy names: simple, single-inst, multi-inst[:CAP], lp:Q")
    config = serializers.DictField(required=False, default=dict,
                                   help_text="generator settings; omitted keys take the default grid values")

    class Meta:
        model = BenchRun
        fields = ['id', 'config', 'strategies', 'seed', 'verify', 'status', 'report', 'error', 'created_at', 'finished_at']
        read_only_fields = ['seed', 'status', 'report', 'error', 'created_at', 'finished_at']

    def validate_strategies(self, value):
        try:
            return [s.name for s in parse_strategies(value)]
        except InputValidationError as exc:
            raise serializers.ValidationError(str(exc))

    def validate_config(self, value):
        try:
            return GenConfig.from_dict(value).to_dict()
        except (InputValidationError, TypeError) as exc:
            raise serializers.ValidationError(str(exc))

    def create(self, validated_data):
        validated_data['seed'] = validated_data['config']['seed']
        return super().create(validated_data)


class BenchRunListSerializer(serializers.ModelSerializer):
    """Runs without their (possibly large) report."""

    class Meta:
        model = BenchRun
        fields = ['id', 'strategies', 'seed', 'verify', 'status', 'created_at', 'finished_at']


class GanttRequestSerializer(serializers.Serializer):
    instance = serializers.DictField(help_text="instance document (format_version 1)")
    schedule = serializers.DictField(help_text="schedule document; a fractions-only schedule is timed as early as possible")
