# core/exceptions.py
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _
from rest_framework.views import exception_handler
from rest_framework import status
from rest_framework.response import Response
import logging

logger = logging.getLogger(__name__)


class DivisibleLoadError(Exception):
    """Root of every error raised by the scheduling toolkit."""
    code = 'divisible_load_error'

    def to_dict(self):
        return {'error': self.code, 'message': str(self)}


class InputValidationError(DivisibleLoadError, ValidationError):
    """
    Malformed platform, workload or schedule data.

    Carries the offending field and its 1-based index so callers (serializers,
    commands, the API) can point at the exact entry.
    """
    code = 'invalid_input'
    default_message = _('Invalid value for %(field)s.')

    def __init__(self, field, index=None, value=None, message=None):
        self.field = field
        self.index = index
        self.value = value
        params = {'field': self.location, 'value': value}
        super().__init__(message or self.default_message, code=self.code, params=params)

    @property
    def location(self):
        if self.index is None:
            return self.field
        if isinstance(self.index, tuple):
            return f"{self.field}[{']['.join(str(k) for k in self.index)}]"
        return f"{self.field}[{self.index}]"

    def __str__(self):
        return self.messages[0]

    def to_dict(self):
        data = super().to_dict()
        data['detail'] = {'field': self.field, 'index': self.index}
        return data


class NonPositiveRate(InputValidationError):
    code = 'non_positive_rate'
    default_message = _('%(field)s must be strictly positive (got %(value)s).')


class LengthMismatch(InputValidationError):
    code = 'length_mismatch'
    default_message = _('%(field)s has the wrong length (got %(value)s).')


class NegativeAvailability(InputValidationError):
    code = 'negative_availability'
    default_message = _('%(field)s must be nonnegative (got %(value)s).')


class NonPositiveVolume(InputValidationError):
    code = 'non_positive_volume'
    default_message = _('%(field)s must be strictly positive (got %(value)s).')


class IndexMismatch(InputValidationError):
    code = 'index_mismatch'
    default_message = _('%(field)s does not match the instance shape (got %(value)s).')


class NegativePayload(InputValidationError):
    code = 'negative_payload'
    default_message = _('%(field)s carries a negative payload (got %(value)s).')


class MissingVariable(DivisibleLoadError):
    code = 'missing_variable'


class TooLarge(DivisibleLoadError):
    code = 'too_large'


class SolverFailure(DivisibleLoadError):
    """The simplex gave up (iteration limit or lost feasibility). Bench runs attach the instance id."""
    code = 'solver_failure'

    def __init__(self, message, instance_id=None):
        super().__init__(message)
        self.instance_id = instance_id

    def __str__(self):
        message = super().__str__()
        if self.instance_id is None:
            return message
        return f"instance {self.instance_id}: {message}"


class InternalSolverError(DivisibleLoadError):
    """A verdict that cannot happen for valid inputs (Infeasible / Unbounded)."""
    code = 'internal_solver_error'


class OnePortConflict(DivisibleLoadError):
    code = 'one_port_conflict'

    def __init__(self, message, conflicts=()):
        super().__init__(message)
        self.conflicts = tuple(conflicts)


class DomainError(DivisibleLoadError):
    code = 'domain_error'


class NoSolution(DivisibleLoadError):
    """A heuristic cannot build a schedule under its own rules."""
    code = 'no_solution'


class SingularSystem(NoSolution):
    code = 'singular_system'


def custom_exception_handler(exc, context):
    """
    DRF exception handler.

    Domain errors become 422 bodies naming the failing field or verdict; throttled
    requests keep a short, uniform 429 body.
    """
    response = exception_handler(exc, context)

    if response is None and isinstance(exc, DivisibleLoadError):
        view = context.get('view')
        logger.warning(f"Domain error in {view.__class__.__name__ if view else 'unknown view'}: {exc}")
        return Response(exc.to_dict(), status=status.HTTP_422_UNPROCESSABLE_ENTITY)

    if response is not None and response.status_code == status.HTTP_429_TOO_MANY_REQUESTS:
        response.data = {
            'error': 'rate_limit_exceeded',
            'message': 'Too many solve requests. Please try again later.',
            'detail': str(exc),
        }

    return response
