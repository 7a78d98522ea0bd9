"""Reading and writing instance / schedule JSON files."""
from pathlib import Path
import json
import logging

from rest_framework.exceptions import ValidationError as DRFValidationError

from .exceptions import InputValidationError
from .serializers import InstanceSerializer, ScheduleSerializer

logger = logging.getLogger(__name__)


def dumps(data):
    return json.dumps(data, indent=2) + '\n'


def _flatten_errors(detail):
    if isinstance(detail, dict):
        field, errors = next(iter(detail.items()))
        return field, _flatten_errors(errors)[1]
    if isinstance(detail, list) and detail:
        return None, _flatten_errors(detail[0])[1]
    return None, str(detail)


def _parse(serializer_class, data, source):
    serializer = serializer_class(data=data)
    try:
        serializer.is_valid(raise_exception=True)
    except DRFValidationError as exc:
        field, message = _flatten_errors(exc.detail)
        raise InputValidationError(field or source, value=source, message=message.replace("%", "%%") + " (%(value)s)")
    return serializer.save()


def parse_instance(data, source='instance'):
    return _parse(InstanceSerializer, data, source)


def parse_schedule(data, source='schedule'):
    return _parse(ScheduleSerializer, data, source)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputValidationError(str(path), value=exc.msg, message='%(field)s is not valid JSON: %(value)s')


def read_instance(path):
    logger.debug(f"Reading instance file {path}")
    return parse_instance(_load_json(path), source=str(path))


def read_schedule(path):
    logger.debug(f"Reading schedule file {path}")
    return parse_schedule(_load_json(path), source=str(path))


def instance_text(instance):
    return dumps(InstanceSerializer(instance).data)


def schedule_text(schedule):
    return dumps(ScheduleSerializer(schedule).data)


def write_instance(instance, path):
    Path(path).write_text(instance_text(instance))
    logger.info(f"Wrote instance file {path}")


def write_schedule(schedule, path):
    Path(path).write_text(schedule_text(schedule))
    logger.info(f"Wrote schedule file {path}")
