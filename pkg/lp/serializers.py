from rest_framework import serializers


class SolveRequestSerializer(serializers.Serializer):
    instance = serializers.DictField(help_text="instance document (format_version 1)")
    installments = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False,
                                         help_text="installment count per load")
    uniform_q = serializers.IntegerField(min_value=1, required=False, help_text="same count for every load")
    reduced = serializers.BooleanField(required=False, allow_null=True, default=None)
    strict_forwarding = serializers.BooleanField(required=False, allow_null=True, default=None)

    def validate(self, attrs):
        if ('installments' in attrs) == ('uniform_q' in attrs):
            raise serializers.ValidationError("give exactly one of installments and uniform_q")
        return attrs


class ExportRequestSerializer(SolveRequestSerializer):
    time_scale = serializers.FloatField(required=False, default=1.0, min_value=0)

    def validate_time_scale(self, value):
        if value <= 0:
            raise serializers.ValidationError("time_scale must be positive")
        return value
