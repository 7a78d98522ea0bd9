"""
Domain types of the divisible-load model.

Indexing is 0-based in memory. Every file format, report and error message uses
1-based processor, link, load and installment numbers.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .exceptions import (
    IndexMismatch,
    LengthMismatch,
    NegativeAvailability,
    NonPositiveRate,
    NonPositiveVolume,
)


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Platform:
    """Linear chain P1 - l1 - P2 - ... - Pm."""
    w: tuple
    z: tuple
    tau: tuple

    def __post_init__(self):
        object.__setattr__(self, 'w', tuple(float(v) for v in self.w))
        object.__setattr__(self, 'z', tuple(float(v) for v in self.z))
        object.__setattr__(self, 'tau', tuple(float(v) for v in self.tau))

        m = len(self.w)
        if m < 1:
            raise LengthMismatch('w', value=0, message='a platform needs at least one processor (got %(value)s).')
        if len(self.z) != m - 1:
            raise LengthMismatch('z', value=len(self.z))
        if len(self.tau) != m:
            raise LengthMismatch('tau', value=len(self.tau))
        for name, values in (('w', self.w), ('z', self.z)):
            for k, v in enumerate(values, start=1):
                if not (v > 0 and math.isfinite(v)):
                    raise NonPositiveRate(name, index=k, value=v)
        for k, v in enumerate(self.tau, start=1):
            if not (v >= 0 and math.isfinite(v)):
                raise NegativeAvailability('tau', index=k, value=v)

    @property
    def m(self):
        return len(self.w)

    def scaled(self, factor):
        """Same chain with every rate and date multiplied by factor."""
        return Platform(
            w=tuple(v * factor for v in self.w),
            z=tuple(v * factor for v in self.z),
            tau=tuple(v * factor for v in self.tau),
        )


@dataclass(frozen=True)
class Load:
    vcomm: float
    vcomp: float

    def __post_init__(self):
        object.__setattr__(self, 'vcomm', float(self.vcomm))
        object.__setattr__(self, 'vcomp', float(self.vcomp))


@dataclass(frozen=True)
class Workload:
    loads: tuple

    def __post_init__(self):
        loads = tuple(ld if isinstance(ld, Load) else Load(*ld) for ld in self.loads)
        object.__setattr__(self, 'loads', loads)
        if not loads:
            raise LengthMismatch('loads', value=0, message='a workload needs at least one load (got %(value)s).')
        for n, ld in enumerate(loads, start=1):
            for name in ('vcomm', 'vcomp'):
                v = getattr(ld, name)
                if not (v > 0 and math.isfinite(v)):
                    raise NonPositiveVolume(f'loads.{name}', index=n, value=v)

    @property
    def n_loads(self):
        return len(self.loads)

    def __len__(self):
        return len(self.loads)

    def __iter__(self):
        return iter(self.loads)

    def __getitem__(self, n):
        return self.loads[n]


@dataclass(frozen=True)
class InstallmentCounts:
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, 'q', tuple(int(v) for v in self.q))
        if not self.q:
            raise LengthMismatch('q', value=0)
        for n, v in enumerate(self.q, start=1):
            if v < 1:
                raise LengthMismatch('q', index=n, value=v, message='%(field)s must be at least 1 (got %(value)s).')

    @classmethod
    def uniform(cls, n_loads, installments=1):
        return cls((installments,) * n_loads)

    @property
    def total(self):
        return sum(self.q)

    def __len__(self):
        return len(self.q)

    def __iter__(self):
        return iter(self.q)

    def __getitem__(self, n):
        return self.q[n]

    def messages(self):
        """(n, j) pairs in sending order."""
        return [(n, j) for n, qn in enumerate(self.q) for j in range(qn)]


@dataclass(frozen=True, eq=False)
class Schedule:
    """
    Fractions and timings of a multi-installment schedule.

    Per load n: fractions[n] and comp_start/comp_end[n] have shape (m, Q_n),
    comm_start/comm_end[n] have shape (m-1, Q_n). Time arrays are None for a
    fractions-only schedule.
    """
    fractions: tuple
    comm_start: tuple = None
    comm_end: tuple = None
    comp_start: tuple = None
    comp_end: tuple = None
    makespan: float = None

    def __post_init__(self):
        fractions = tuple(_frozen(f) for f in self.fractions)
        if not fractions:
            raise IndexMismatch('fractions', value=0)
        m = fractions[0].shape[0] if fractions[0].ndim == 2 else -1
        for n, f in enumerate(fractions, start=1):
            if f.ndim != 2 or f.shape[0] != m or f.shape[1] < 1:
                raise IndexMismatch('fractions', index=n, value=f.shape)
        object.__setattr__(self, 'fractions', fractions)

        timed = [self.comm_start, self.comm_end, self.comp_start, self.comp_end]
        if all(t is None for t in timed):
            if self.makespan is not None:
                object.__setattr__(self, 'makespan', float(self.makespan))
            return
        if any(t is None for t in timed):
            raise IndexMismatch('times', value='partial', message='time arrays must be given together (got %(value)s).')

        for name, rows in (('comm_start', m - 1), ('comm_end', m - 1), ('comp_start', m), ('comp_end', m)):
            given = tuple(getattr(self, name))
            if len(given) != len(fractions):
                raise IndexMismatch(name, value=len(given))
            arrays = []
            for n, (a, f) in enumerate(zip(given, fractions), start=1):
                a = _frozen(np.zeros((0, f.shape[1])) if rows == 0 else a)
                if a.shape != (rows, f.shape[1]):
                    raise IndexMismatch(name, index=n, value=a.shape)
                arrays.append(a)
            object.__setattr__(self, name, tuple(arrays))

        if self.makespan is None:
            object.__setattr__(self, 'makespan', float(self.comp_end[-1][:, -1].max()))
        else:
            object.__setattr__(self, 'makespan', float(self.makespan))

    @property
    def m(self):
        return self.fractions[0].shape[0]

    @property
    def n_loads(self):
        return len(self.fractions)

    @property
    def installments(self):
        return InstallmentCounts(tuple(f.shape[1] for f in self.fractions))

    @property
    def has_times(self):
        return self.comp_end is not None

    def fraction_totals(self):
        """Sum of fractions per load."""
        return np.array([f.sum() for f in self.fractions])

    def payload(self, link, n, j):
        """Share of load n carried by `link` in installment j (downstream fractions)."""
        return float(self.fractions[n][link + 1:, j].sum())

    def with_times(self, comm_start, comm_end, comp_start, comp_end, makespan=None):
        return Schedule(self.fractions, comm_start, comm_end, comp_start, comp_end, makespan)

    def fractions_only(self):
        return Schedule(self.fractions)


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of a constraint check.

    violations holds (family, index, residual) with family in 1..13 and the index
    tuple 1-based in the family's own (i, n, j) order.
    """
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def families(self):
        return sorted({family for family, _, _ in self.violations})

    def summary(self):
        if self.ok:
            return 'schedule satisfies constraint families 1-13'
        worst = max(self.violations, key=lambda v: v[2])
        family, index, residual = worst
        return (
            f"{len(self.violations)} violation(s) in families {self.families()}; "
            f"worst: family {family} at {index} (residual {residual:.3g})"
        )


@dataclass(frozen=True)
class Instance:
    """A platform/workload pair plus generation metadata."""
    platform: Platform
    workload: Workload
    latency: tuple = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.latency is not None:
            latency = tuple(float(v) for v in self.latency)
            if len(latency) != self.platform.m - 1:
                raise LengthMismatch('latency', value=len(latency))
            for k, v in enumerate(latency, start=1):
                if not (v >= 0 and math.isfinite(v)):
                    raise NegativeAvailability('latency', index=k, value=v)
            object.__setattr__(self, 'latency', latency)

    @property
    def instance_id(self):
        return self.meta.get('index')
