import math
import numbers
from collections.abc import Mapping

import numpy as np
from django.utils.translation import gettext_lazy as _

from .exceptions import IndexMismatch, InputValidationError, LengthMismatch
from .timing import retime
from .types import InstallmentCounts, Platform, ValidationReport, Workload, Load


DEFAULT_TOL = 1e-9


def _numbers(desc, name, required=True, default=None):
    if name not in desc or desc[name] is None:
        if required:
            raise InputValidationError(name, message=_('%(field)s is required.'))
        return default
    values = desc[name]
    if isinstance(values, (str, bytes)) or not hasattr(values, '__iter__'):
        raise InputValidationError(name, value=values, message=_('%(field)s must be a list of numbers (got %(value)s).'))
    out = []
    for k, v in enumerate(values, start=1):
        try:
            out.append(float(v))
        except (TypeError, ValueError):
            raise InputValidationError(name, index=k, value=v, message=_('%(field)s must be a number (got %(value)s).'))
        if math.isnan(out[-1]):
            raise InputValidationError(name, index=k, value=v, message=_('%(field)s must be a number (got %(value)s).'))
    return out


def validate_platform(desc):
    """
    Build a Platform from a raw mapping {m, w, z, tau}.

    tau may be omitted (all processors available at time 0). Errors name the
    offending field and its 1-based index.
    """
    if not isinstance(desc, Mapping):
        raise InputValidationError('platform', value=type(desc).__name__,
                                   message=_('%(field)s must be a mapping (got %(value)s).'))
    w = _numbers(desc, 'w')
    m = desc.get('m', len(w))
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 1:
        raise InputValidationError('m', value=m, message=_('%(field)s must be an integer >= 1 (got %(value)s).'))
    z = _numbers(desc, 'z', required=m > 1, default=[])
    tau = _numbers(desc, 'tau', required=False, default=[0.0] * m)

    for name, values, expected in (('w', w, m), ('z', z, m - 1), ('tau', tau, m)):
        if len(values) != expected:
            raise LengthMismatch(name, value=f'{len(values)}, expected {expected}')
    return Platform(w=w, z=z, tau=tau)


def validate_workload(desc):
    """Build a Workload from [{vcomm, vcomp}, ...] or a mapping holding `loads`."""
    loads = desc.get('loads') if isinstance(desc, Mapping) else desc
    if not loads:
        raise LengthMismatch('loads', value=0, message=_('a workload needs at least one load (got %(value)s).'))
    parsed = []
    for n, entry in enumerate(loads, start=1):
        if isinstance(entry, Load):
            parsed.append(entry)
            continue
        try:
            parsed.append(Load(vcomm=float(entry['vcomm']), vcomp=float(entry['vcomp'])))
        except (KeyError, TypeError, ValueError):
            raise InputValidationError('loads', index=n, value=entry,
                                       message=_('%(field)s needs numeric vcomm and vcomp (got %(value)s).'))
    return Workload(tuple(parsed))


def validate_installments(q, workload):
    counts = q if isinstance(q, InstallmentCounts) else InstallmentCounts(tuple(q))
    if len(counts) != workload.n_loads:
        raise IndexMismatch('q', value=len(counts))
    return counts


def _collect(violations, family, residual, tol, index_of):
    for idx in zip(*np.nonzero(residual > tol)):
        idx = tuple(int(k) for k in idx)
        violations.append((family, index_of(*idx), float(residual[idx])))


def _check_shapes(p, wl, q, s):
    if s.m != p.m:
        raise IndexMismatch('fractions', value=f'{s.m} processor rows, platform has {p.m}')
    if s.n_loads != wl.n_loads:
        raise IndexMismatch('fractions', value=f'{s.n_loads} loads, workload has {wl.n_loads}')
    if tuple(s.installments) != tuple(q):
        raise IndexMismatch('q', value=f'{list(s.installments)}, expected {list(q)}')


def time_tolerance(schedule, tol):
    """Absolute tolerance for time residuals: tol relative to the schedule horizon."""
    horizon = abs(schedule.makespan or 0.0)
    for arrays in (schedule.comm_start, schedule.comm_end, schedule.comp_start, schedule.comp_end):
        for a in arrays:
            if a.size:
                horizon = max(horizon, float(np.abs(a).max()))
    return tol * max(1.0, horizon)


def validate_schedule(p, wl, q, s, tol=DEFAULT_TOL, strict_forwarding=False):
    """
    Check constraint families 1-13 of the multi-installment model.

    Fractions are checked against `tol` absolutely; time residuals against
    `tol * max(1, horizon)`. A fractions-only schedule is timed as early as
    possible first. Family 6 uses Cs(i) >= E(i-1); with strict_forwarding P_i
    must also have forwarded the installment (Cs(i) >= E(i)) before computing it.
    """
    if tol < 0:
        raise InputValidationError('tol', value=tol, message=_('%(field)s must be nonnegative (got %(value)s).'))
    q = validate_installments(q, wl)
    _check_shapes(p, wl, q, s)
    if not s.has_times:
        s = retime(p, wl, s, strict_forwarding=strict_forwarding)

    m, n_loads = p.m, wl.n_loads
    tt = time_tolerance(s, tol)
    w = np.asarray(p.w)[:, None]
    z = np.asarray(p.z)[:, None]
    tau = np.asarray(p.tau)
    # link whose end gates the next receive on each link (the last link gates itself)
    gate = [a + 1 if a < m - 2 else a for a in range(m - 1)]
    violations = []

    for n in range(n_loads):
        load = wl[n]
        F = s.fractions[n]
        S, E = s.comm_start[n], s.comm_end[n]
        Cs, Ce = s.comp_start[n], s.comp_end[n]

        if m >= 3:
            _collect(violations, 1, E[:-1] - S[1:], tt, lambda a, j, n=n: (a + 1, n + 1, j + 1))
        if m >= 2:
            if F.shape[1] > 1:
                _collect(violations, 2, E[gate, :-1] - S[:, 1:], tt, lambda a, j, n=n: (a + 1, n + 1, j + 1))
            if n < n_loads - 1:
                S_next = s.comm_start[n + 1]
                _collect(violations, 3, E[gate, -1] - S_next[:, 0], tt, lambda a, n=n: (a + 1, n + 1))
            _collect(violations, 4, -S, tt, lambda a, j, n=n: (a + 1, n + 1, j + 1))
            downstream = np.cumsum(F[::-1], axis=0)[::-1][1:]
            _collect(violations, 5, np.abs(E - S - z * load.vcomm * downstream), tt,
                     lambda a, j, n=n: (a + 1, n + 1, j + 1))
            _collect(violations, 6, E - Cs[1:], tt, lambda a, j, n=n: (a + 2, n + 1, j + 1))
            if strict_forwarding and m >= 3:
                _collect(violations, 6, E[1:] - Cs[1:m - 1], tt, lambda a, j, n=n: (a + 2, n + 1, j + 1))

        _collect(violations, 7, np.abs(Ce - Cs - w * F * load.vcomp), tt, lambda i, j, n=n: (i + 1, n + 1, j + 1))
        if n < n_loads - 1:
            _collect(violations, 8, Ce[:, -1] - s.comp_start[n + 1][:, 0], tt, lambda i, n=n: (i + 1, n + 1))
        if F.shape[1] > 1:
            _collect(violations, 9, Ce[:, :-1] - Cs[:, 1:], tt, lambda i, j, n=n: (i + 1, n + 1, j + 1))
        if n == 0:
            _collect(violations, 10, tau - Cs[:, 0], tt, lambda i: (i + 1,))
        _collect(violations, 11, -F, tol, lambda i, j, n=n: (i + 1, n + 1, j + 1))
        _collect(violations, 12, np.array([abs(F.sum() - 1.0)]), tol, lambda _k, n=n: (n + 1,))
        if n == n_loads - 1:
            _collect(violations, 13, Ce[:, -1] - s.makespan, tt, lambda i: (i + 1,))

    violations.sort(key=lambda v: (v[0], v[1]))
    return ValidationReport(tuple(violations))


def makespan_of(s):
    """Completion time of the last installment of the last load, over all processors."""
    if not s.has_times:
        raise IndexMismatch('times', value='missing', message=_('%(field)s are %(value)s; time the schedule first.'))
    return float(s.comp_end[-1][:, -1].max())
