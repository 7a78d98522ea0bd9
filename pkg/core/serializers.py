from rest_framework import serializers
import numpy as np

from .exceptions import IndexMismatch, InputValidationError
from .types import Instance, Schedule
from .validators import validate_platform, validate_workload

FORMAT_VERSION = 1

TIME_FIELDS = ('comm_start', 'comm_end', 'comp_start', 'comp_end')


def _as_drf_error(exc):
    return serializers.ValidationError({exc.field: [str(exc)]}, code=exc.code)


class FormatVersionMixin:
    def validate_format_version(self, value):
        if value != FORMAT_VERSION:
            raise serializers.ValidationError(f"unsupported format_version {value} (expected {FORMAT_VERSION})")
        return value


class LoadSerializer(serializers.Serializer):
    vcomm = serializers.FloatField(help_text="data volume of the load")
    vcomp = serializers.FloatField(help_text="computation volume of the load")


class InstanceSerializer(FormatVersionMixin, serializers.Serializer):
    """Instance file: platform, workload and optional per-link latencies."""
    format_version = serializers.IntegerField(required=False, default=FORMAT_VERSION)
    m = serializers.IntegerField(min_value=1, help_text="number of processors in the chain")
    w = serializers.ListField(child=serializers.FloatField(), allow_empty=False,
                              help_text="seconds per unit load, one per processor")
    z = serializers.ListField(child=serializers.FloatField(), required=False, default=list,
                              help_text="seconds per unit load, one per link")
    tau = serializers.ListField(child=serializers.FloatField(), required=False,
                                help_text="availability dates, one per processor")
    loads = LoadSerializer(many=True, allow_empty=False)
    latency = serializers.ListField(child=serializers.FloatField(min_value=0), required=False, allow_null=True)
    meta = serializers.DictField(required=False, default=dict)

    def validate(self, attrs):
        try:
            platform = validate_platform(attrs)
            workload = validate_workload(attrs['loads'])
            attrs['instance'] = Instance(platform, workload, latency=attrs.get('latency'), meta=dict(attrs.get('meta') or {}))
        except InputValidationError as exc:
            raise _as_drf_error(exc)
        return attrs

    def create(self, validated_data):
        return validated_data['instance']

    def to_representation(self, instance):
        p, wl = instance.platform, instance.workload
        data = {
            'format_version': FORMAT_VERSION,
            'm': p.m,
            'w': list(p.w),
            'z': list(p.z),
            'tau': list(p.tau),
            'loads': [{'vcomm': ld.vcomm, 'vcomp': ld.vcomp} for ld in wl],
        }
        if instance.latency is not None:
            data['latency'] = list(instance.latency)
        if instance.meta:
            data['meta'] = dict(instance.meta)
        return data


def _nest(per_load):
    """Per-load (rows, Q_n) arrays -> nested [row][n][j] lists."""
    rows = per_load[0].shape[0]
    return [[a[r].tolist() for a in per_load] for r in range(rows)]


def _unnest(field, nested, q, rows):
    """Nested [row][n][j] lists -> per-load (rows, Q_n) arrays."""
    if len(nested) != rows:
        raise IndexMismatch(field, value=f'{len(nested)} rows, expected {rows}')
    arrays = []
    for n, qn in enumerate(q):
        block = np.zeros((rows, qn))
        for r in range(rows):
            if len(nested[r]) != len(q):
                raise IndexMismatch(field, index=r + 1, value=f'{len(nested[r])} loads, expected {len(q)}')
            entries = nested[r][n]
            if len(entries) != qn:
                raise IndexMismatch(field, index=(r + 1, n + 1), value=f'{len(entries)} installments, expected {qn}')
            block[r] = entries
        arrays.append(block)
    return tuple(arrays)


def schedule_from_nested(data):
    q = list(data['q'])
    fractions = data['fractions']
    m = len(fractions)
    if m < 1:
        raise IndexMismatch('fractions', value=0)
    per_load = {'fractions': _unnest('fractions', fractions, q, m)}
    given = [name for name in TIME_FIELDS if data.get(name) is not None]
    if given and len(given) != len(TIME_FIELDS):
        raise IndexMismatch('times', value=', '.join(given), message='time arrays must be given together (got %(value)s).')
    for name in given:
        rows = m - 1 if name.startswith('comm') else m
        per_load[name] = _unnest(name, data[name], q, rows)
    return Schedule(makespan=data.get('makespan'), **per_load)


class ScheduleSerializer(FormatVersionMixin, serializers.Serializer):
    """
    Schedule file. Arrays are nested [processor or link][load][installment];
    the four time arrays are omitted together for a fractions-only schedule.
    """
    format_version = serializers.IntegerField(required=False, default=FORMAT_VERSION)
    q = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    fractions = serializers.ListField(child=serializers.ListField(child=serializers.ListField(child=serializers.FloatField())))
    comm_start = serializers.ListField(child=serializers.ListField(child=serializers.ListField(child=serializers.FloatField())), required=False, allow_null=True)
    comm_end = serializers.ListField(child=serializers.ListField(child=serializers.ListField(child=serializers.FloatField())), required=False, allow_null=True)
    comp_start = serializers.ListField(child=serializers.ListField(child=serializers.ListField(child=serializers.FloatField())), required=False, allow_null=True)
    comp_end = serializers.ListField(child=serializers.ListField(child=serializers.ListField(child=serializers.FloatField())), required=False, allow_null=True)
    makespan = serializers.FloatField(required=False, allow_null=True)

    def validate(self, attrs):
        try:
            attrs['schedule'] = schedule_from_nested(attrs)
        except InputValidationError as exc:
            raise _as_drf_error(exc)
        return attrs

    def create(self, validated_data):
        return validated_data['schedule']

    def to_representation(self, schedule):
        data = {
            'format_version': FORMAT_VERSION,
            'q': list(schedule.installments),
            'fractions': _nest(schedule.fractions),
        }
        if schedule.has_times:
            for name in TIME_FIELDS:
                data[name] = _nest(getattr(schedule, name))
        data['makespan'] = schedule.makespan
        return data


class ValidationReportSerializer(serializers.BaseSerializer):
    def to_representation(self, report):
        return {
            'ok': report.ok,
            'summary': report.summary(),
            'violations': [
                {'family': family, 'index': list(index), 'residual': residual}
                for family, index, residual in report.violations
            ],
        }


class ValidateRequestSerializer(serializers.Serializer):
    instance = serializers.DictField(help_text="instance document (format_version 1)")
    schedule = serializers.DictField(help_text="schedule document; times may be omitted")
    tol = serializers.FloatField(required=False, min_value=0)
    strict_forwarding = serializers.BooleanField(required=False, default=False)
