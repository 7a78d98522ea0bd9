"""
Discrete-event replay of a schedule on the one-port chain (simpy).

Each message (load n, installment j) is one transfer per link. A transfer on
link l waits for the message to reach P_l and for P_{l+1} to have forwarded
the previous message (the last link waits for its own previous transfer), so
every processor handles one transfer at a time. It lasts
latency_l + z_l * (payload + startup), payload being the data of the
processors behind the link.
"""
from dataclasses import dataclass, field
import logging

from django.db import models
import numpy as np
import simpy

from core.exceptions import IndexMismatch, LengthMismatch, NegativeAvailability, NegativePayload, OnePortConflict
from core.timing import retime
from core.types import Schedule
from core.validators import validate_installments

logger = logging.getLogger(__name__)

ONE_PORT_TOL = 1e-9


class SimMode(models.TextChoices):
    REPLAY_EXACT = 'replay-exact', 'Replay the schedule times'
    AS_EARLY_AS_POSSIBLE = 'as-early-as-possible', 'Start every event as early as possible'


class EventKind(models.TextChoices):
    COMM_START = 'comm_start', 'communication start'
    COMM_END = 'comm_end', 'communication end'
    COMP_START = 'comp_start', 'computation start'
    COMP_END = 'comp_end', 'computation end'


@dataclass(frozen=True)
class SimConfig:
    link_latency: tuple = None
    startup: float = 0.0
    mode: str = SimMode.REPLAY_EXACT
    skip_empty_messages: bool = False
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'mode', SimMode(self.mode))
        if self.startup < 0:
            raise NegativeAvailability('startup', value=self.startup)
        if self.link_latency is not None:
            latency = tuple(float(v) for v in self.link_latency)
            for k, v in enumerate(latency, start=1):
                if v < 0:
                    raise NegativeAvailability('link_latency', index=k, value=v)
            object.__setattr__(self, 'link_latency', latency)

    def latencies(self, m):
        if self.link_latency is None:
            return np.zeros(m - 1)
        if len(self.link_latency) != m - 1:
            raise LengthMismatch('link_latency', value=f'{len(self.link_latency)}, expected {m - 1}')
        return np.asarray(self.link_latency)


@dataclass(frozen=True)
class TraceEvent:
    time: float
    entity: str
    kind: str
    load: int
    installment: int
    detail: str = ''

    @property
    def sort_key(self):
        comm = self.kind in (EventKind.COMM_START, EventKind.COMM_END)
        end = self.kind in (EventKind.COMM_END, EventKind.COMP_END)
        return (self.time, 0 if comm else 1, int(self.entity[1:]), 0 if end else 1, self.load, self.installment)


@dataclass(frozen=True, eq=False)
class SimReport:
    realized_makespan: float
    event_trace: tuple
    per_processor_busy: tuple
    violations: tuple = ()
    schedule: Schedule = None
    config: SimConfig = field(default=None, compare=False)


def one_port_conflicts(schedule, tol=ONE_PORT_TOL):
    """Overlapping transfers on a processor, as (processor, first, second) with 1-based (link, n, j)."""
    m = schedule.m
    conflicts = []
    for proc in range(m):
        intervals = []
        for link in (proc - 1, proc):
            if not 0 <= link < m - 1:
                continue
            for n in range(schedule.n_loads):
                for j in range(schedule.installments[n]):
                    start = schedule.comm_start[n][link, j]
                    end = schedule.comm_end[n][link, j]
                    if end - start > tol:
                        intervals.append((start, end, (link + 1, n + 1, j + 1)))
        intervals.sort()
        for (s0, e0, a), (s1, e1, b) in zip(intervals, intervals[1:]):
            if s1 < e0 - tol * max(1.0, abs(e0)):
                conflicts.append((proc + 1, a, b))
    return conflicts


class _ChainSimulation:

    def __init__(self, platform, workload, schedule, cfg):
        self.p = platform
        self.wl = workload
        self.s = schedule
        self.cfg = cfg
        self.env = simpy.Environment()
        self.m = platform.m
        self.latency = cfg.latencies(platform.m)
        self.exact = cfg.mode == SimMode.REPLAY_EXACT
        self.messages = schedule.installments.messages()
        self.trace = []
        self.busy = np.zeros(self.m)
        q = schedule.installments
        self.times = {
            'comm_start': [np.zeros((self.m - 1, qn)) for qn in q],
            'comm_end': [np.zeros((self.m - 1, qn)) for qn in q],
            'comp_start': [np.zeros((self.m, qn)) for qn in q],
            'comp_end': [np.zeros((self.m, qn)) for qn in q],
        }
        self.received = {(l, n, j): self.env.event() for l in range(self.m - 1) for n, j in self.messages}
        self.computed = {(i, n, j): self.env.event() for i in range(self.m) for n, j in self.messages}

    def _gate(self, link):
        return link + 1 if link < self.m - 2 else link

    def _wait_until(self, scheduled):
        delay = scheduled - self.env.now
        if delay > 0:
            yield self.env.timeout(delay)

    def _record(self, time, entity, kind, n, j, detail=''):
        self.trace.append(TraceEvent(float(time), entity, kind, n + 1, j + 1, detail))

    def transfer(self, link, k):
        n, j = self.messages[k]
        waits = []
        if link > 0:
            waits.append(self.received[(link - 1, n, j)])
        if k > 0:
            waits.append(self.received[(self._gate(link),) + self.messages[k - 1]])
        if waits:
            yield self.env.all_of(waits)
        if self.exact:
            yield from self._wait_until(self.s.comm_start[n][link, j])

        payload = self.wl[n].vcomm * self.s.payload(link, n, j)
        start = self.env.now
        if not (self.cfg.skip_empty_messages and payload == 0):
            duration = self.latency[link] + self.p.z[link] * (payload + self.cfg.startup)
            entity = f'l{link + 1}'
            self._record(start, entity, EventKind.COMM_START, n, j, f'{payload:.12g}')
            yield self.env.timeout(duration)
            self._record(self.env.now, entity, EventKind.COMM_END, n, j, f'{payload:.12g}')
        self.times['comm_start'][n][link, j] = start
        self.times['comm_end'][n][link, j] = self.env.now
        self.received[(link, n, j)].succeed()

    def compute(self, i, k):
        n, j = self.messages[k]
        waits = []
        if i > 0:
            waits.append(self.received[(i - 1, n, j)])
        if k > 0:
            waits.append(self.computed[(i,) + self.messages[k - 1]])
        if waits:
            yield self.env.all_of(waits)
        floor = self.s.comp_start[n][i, j] if self.exact else (self.p.tau[i] if k == 0 else 0.0)
        yield from self._wait_until(floor)

        fraction = float(self.s.fractions[n][i, j])
        work = self.p.w[i] * fraction * self.wl[n].vcomp
        start = self.env.now
        if fraction > 0:
            entity = f'P{i + 1}'
            self._record(start, entity, EventKind.COMP_START, n, j, f'{fraction:.12g}')
            yield self.env.timeout(work)
            self._record(self.env.now, entity, EventKind.COMP_END, n, j, f'{fraction:.12g}')
        self.busy[i] += work
        self.times['comp_start'][n][i, j] = start
        self.times['comp_end'][n][i, j] = self.env.now
        self.computed[(i, n, j)].succeed()

    def run(self):
        for k in range(len(self.messages)):
            for link in range(self.m - 1):
                self.env.process(self.transfer(link, k))
            for i in range(self.m):
                self.env.process(self.compute(i, k))
        self.env.run()
        t = self.times
        realized = Schedule(
            self.s.fractions,
            tuple(t['comm_start']), tuple(t['comm_end']), tuple(t['comp_start']), tuple(t['comp_end']),
        )
        self.trace.sort(key=lambda e: e.sort_key)
        return realized


def replay(platform, workload, schedule, cfg=None):
    """
    Simulate `schedule`. In replay-exact mode events start at their scheduled
    time or later; a fractions-only schedule is timed as early as possible
    first. In as-early-as-possible mode only the fractions are used.
    """
    cfg = cfg or SimConfig()
    validate_installments(schedule.installments, workload)
    if schedule.m != platform.m:
        raise IndexMismatch('fractions', value=f'{schedule.m} processor rows, platform has {platform.m}')
    for n, f in enumerate(schedule.fractions):
        negative = np.argwhere(f < 0)
        if negative.size:
            i, j = (int(v) for v in negative[0])
            raise NegativePayload('fractions', index=(i + 1, n + 1, j + 1), value=float(f[i, j]))

    violations = []
    if cfg.mode == SimMode.REPLAY_EXACT:
        if not schedule.has_times:
            schedule = retime(platform, workload, schedule)
        conflicts = one_port_conflicts(schedule)
        if conflicts and cfg.strict:
            raise OnePortConflict(
                f"{len(conflicts)} overlapping transfer pair(s); first on P{conflicts[0][0]}: "
                f"{conflicts[0][1]} and {conflicts[0][2]}",
                conflicts,
            )
        violations.extend(conflicts)

    simulation = _ChainSimulation(platform, workload, schedule, cfg)
    realized = simulation.run()
    violations.extend(c for c in one_port_conflicts(realized) if c not in violations)
    if violations:
        logger.warning(f"Replay recorded {len(violations)} one-port conflict(s)")

    logger.debug(f"Replay ({cfg.mode}) finished at {realized.makespan:.9g}, {len(simulation.trace)} events")
    return SimReport(
        realized_makespan=realized.makespan,
        event_trace=tuple(simulation.trace),
        per_processor_busy=tuple(float(b) for b in simulation.busy),
        violations=tuple(violations),
        schedule=realized,
        config=cfg,
    )


def overhead_ratio(report_ideal, report_costed):
    """Realized makespan with costs over realized makespan without."""
    if report_ideal.realized_makespan == 0:
        raise ZeroDivisionError("ideal makespan is 0")
    return report_costed.realized_makespan / report_ideal.realized_makespan
