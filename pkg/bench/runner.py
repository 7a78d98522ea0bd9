"""
Heuristic-versus-LP benchmarking.

Each instance is evaluated by every strategy; the relative performance of a
strategy on an instance is its makespan over the smallest makespan any
successful strategy reached there. A strategy without a solution on an
instance gets no sample there and counts one failure.
"""
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
import csv
import io
import json
import logging
import platform as host
import re

import django
import numpy as np

from core.conf import divload_setting
from core.exceptions import InputValidationError, NoSolution
from core.serializers import InstanceSerializer
from core.types import InstallmentCounts
from core.validators import validate_schedule
from heuristics.strategies import multi_inst, simple_schedule, single_inst
from lp.services import optimal_schedule
from simulation.engine import SimConfig, replay

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
REPORT_COLUMNS = ('strategy', 'avg_rel', 'std_rel', 'max_rel', 'failures', 'n_instances')
LP_MAX_INSTALLMENTS = 6
REPLAY_TOL = 1e-6

SIMPLE, SINGLE_INST, MULTI_INST, LP = 'simple', 'single-inst', 'multi-inst', 'lp'

_STRATEGY_RE = re.compile(r'^(simple|singleinst|multiinst|lp)(?:(?::(\d+))|(?:\((\d+)\)))?$')
_KINDS = {'simple': SIMPLE, 'singleinst': SINGLE_INST, 'multiinst': MULTI_INST, 'lp': LP}


@dataclass(frozen=True)
class Strategy:
    kind: str
    param: int = None

    @property
    def name(self):
        return self.kind if self.param is None else f'{self.kind}:{self.param}'

    @classmethod
    def parse(cls, text):
        """
        Accepts simple, single-inst, multi-inst, multi-inst:CAP and lp:Q, plus
        the spelled forms Simple, SingleInst, MultiInst(CAP) and LP(Q).
        """
        key = re.sub(r'[\s_-]', '', str(text)).lower()
        match = _STRATEGY_RE.match(key)
        if not match:
            raise InputValidationError('strategies', value=text, message='unknown strategy %(value)s.')
        kind = _KINDS[match.group(1)]
        digits = match.group(2) or match.group(3)
        param = int(digits) if digits is not None else None

        if kind in (SIMPLE, SINGLE_INST) and param is not None:
            raise InputValidationError('strategies', value=text, message='%(value)s takes no parameter.')
        if kind == MULTI_INST and param is not None and param < 1:
            raise InputValidationError('strategies', value=text, message='multi-inst cap must be >= 1 (got %(value)s).')
        if kind == LP and not (param is not None and 1 <= param <= LP_MAX_INSTALLMENTS):
            raise InputValidationError(
                'strategies', value=text,
                message=f'lp needs an installment count between 1 and {LP_MAX_INSTALLMENTS} (got %(value)s).',
            )
        return cls(kind, param)

    def schedule(self, instance, reduced=True, solver_cfg=None):
        """Theoretical schedule for `instance`; raises NoSolution when the heuristic has none."""
        p, wl = instance.platform, instance.workload
        if self.kind == LP:
            schedule, _ = optimal_schedule(
                p, wl, InstallmentCounts.uniform(wl.n_loads, self.param),
                reduced=reduced, cfg=solver_cfg, instance_id=instance.instance_id,
            )
            return schedule
        if self.kind == SIMPLE:
            outcome = simple_schedule(p, wl)
        elif self.kind == SINGLE_INST:
            outcome = single_inst(p, wl)
        else:
            outcome = multi_inst(p, wl, cap=self.param)
        if not outcome.ok:
            raise NoSolution(outcome.diagnostics.reason)
        return outcome.schedule


def parse_strategies(value):
    """Comma-separated text or an iterable of names -> tuple of Strategy, duplicates dropped."""
    items = value.split(',') if isinstance(value, str) else list(value)
    strategies = []
    for item in items:
        if isinstance(item, Strategy):
            strategy = item
        elif str(item).strip():
            strategy = Strategy.parse(str(item).strip())
        else:
            continue
        if strategy not in strategies:
            strategies.append(strategy)
    if not strategies:
        raise InputValidationError('strategies', value=value, message='no strategy given (got %(value)s).')
    return tuple(strategies)


@dataclass(frozen=True)
class InstanceResult:
    index: int
    makespans: dict
    reasons: dict = field(default_factory=dict)
    anomalies: tuple = ()

    @property
    def best(self):
        values = [v for v in self.makespans.values() if v is not None]
        return min(values) if values else None

    def relative(self, name):
        value, best = self.makespans.get(name), self.best
        if value is None or best is None:
            return None
        return value / best

    def to_dict(self):
        return {
            'index': self.index,
            'makespans': dict(self.makespans),
            'reasons': dict(self.reasons),
            'anomalies': list(self.anomalies),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['index'], dict(data['makespans']), dict(data.get('reasons', {})), tuple(data.get('anomalies', ())))


def _verify(instance, name, schedule, tol):
    p, wl = instance.platform, instance.workload
    anomalies = []
    report = validate_schedule(p, wl, schedule.installments, schedule, tol=tol)
    if not report.ok:
        anomalies.append(f"{name}: {report.summary()}")
    replayed = replay(p, wl, schedule, SimConfig(strict=False))
    if replayed.violations:
        anomalies.append(f"{name}: {len(replayed.violations)} one-port conflict(s) in replay")
    scale = schedule.makespan if schedule.makespan > 0 else 1.0
    gap = abs(replayed.realized_makespan - schedule.makespan) / scale
    if gap > REPLAY_TOL:
        anomalies.append(
            f"{name}: replay makespan {replayed.realized_makespan:.12g} differs from {schedule.makespan:.12g}"
        )
    return anomalies


def evaluate_instance(instance, strategies, verify=False, reduced=None, solver_cfg=None):
    if reduced is None:
        reduced = divload_setting('BENCH_REDUCED_FORM')
    tol = divload_setting('VALIDATION_TOL')
    makespans, reasons, anomalies = {}, {}, []
    for strategy in strategies:
        try:
            schedule = strategy.schedule(instance, reduced=reduced, solver_cfg=solver_cfg)
        except NoSolution as exc:
            makespans[strategy.name] = None
            reasons[strategy.name] = str(exc)
            continue
        makespans[strategy.name] = schedule.makespan
        if verify:
            anomalies.extend(_verify(instance, strategy.name, schedule, tol))
    for anomaly in anomalies:
        logger.warning(f"Instance {instance.instance_id}: {anomaly}")
    return InstanceResult(instance.instance_id, makespans, reasons, tuple(anomalies))


@dataclass(frozen=True)
class StrategyRow:
    strategy: str
    avg_rel: float
    std_rel: float
    max_rel: float
    failures: int
    n_instances: int


def aggregate(results, names):
    rows = []
    for name in names:
        samples = [r.relative(name) for r in results]
        values = np.array([s for s in samples if s is not None])
        failures = sum(1 for r in results if r.makespans.get(name) is None)
        if values.size:
            rows.append(StrategyRow(name, float(values.mean()), float(values.std()), float(values.max()), failures, len(results)))
        else:
            rows.append(StrategyRow(name, None, None, None, failures, len(results)))
    return tuple(rows)


def tool_versions():
    versions = {'python': host.python_version(), 'django': django.get_version(), 'numpy': np.__version__}
    try:
        versions['simpy'] = version('simpy')
    except PackageNotFoundError:
        versions['simpy'] = None
    return versions


def _number(value):
    return '' if value is None else repr(value)


@dataclass(frozen=True)
class BenchReport:
    rows: tuple
    results: tuple
    metadata: dict = field(default_factory=dict)
    created_at: str = None

    def row(self, name):
        return next(r for r in self.rows if r.strategy == name)

    @property
    def anomalies(self):
        return [f"instance {r.index}: {a}" for r in self.results for a in r.anomalies]

    def csv_text(self):
        buffer = io.StringIO()
        buffer.write(f"# format_version: {FORMAT_VERSION}\n")
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(REPORT_COLUMNS)
        for r in self.rows:
            writer.writerow([r.strategy, _number(r.avg_rel), _number(r.std_rel), _number(r.max_rel), r.failures, r.n_instances])
        return buffer.getvalue()

    def to_dict(self):
        return {
            'format_version': FORMAT_VERSION,
            'created_at': self.created_at,
            'metadata': self.metadata,
            'rows': [
                {name: getattr(r, name) for name in REPORT_COLUMNS}
                for r in self.rows
            ],
            'instances': [r.to_dict() for r in self.results],
            'anomalies': self.anomalies,
        }

    def json_text(self):
        return json.dumps(self.to_dict(), indent=2) + '\n'


def _evaluate_with_celery(instances, strategies, verify, reduced):
    from celery import group

    from .tasks import evaluate_instance_task

    names = [s.name for s in strategies]
    jobs = group(
        evaluate_instance_task.s(InstanceSerializer(instance).data, names, verify, reduced)
        for instance in instances
    )
    return [InstanceResult.from_dict(d) for d in jobs.apply_async().join()]


def run_bench(instances, strategies, verify=False, reduced=None, use_celery=None, metadata=None, solver_cfg=None):
    """
    Evaluate every instance with every strategy and aggregate relative performance.

    Results are ordered by instance index before aggregation. SolverFailure
    propagates with the instance id.
    """
    strategies = parse_strategies(strategies)
    instances = list(instances)
    if not instances:
        raise InputValidationError('instances', value=0, message='nothing to benchmark (%(value)s instances).')
    if reduced is None:
        reduced = divload_setting('BENCH_REDUCED_FORM')
    if use_celery is None:
        use_celery = divload_setting('BENCH_USE_CELERY')

    names = [s.name for s in strategies]
    logger.info(f"Benchmarking {len(instances)} instance(s) with {', '.join(names)}")
    if use_celery:
        results = _evaluate_with_celery(instances, strategies, verify, reduced)
    else:
        results = []
        for k, instance in enumerate(instances, start=1):
            results.append(evaluate_instance(instance, strategies, verify=verify, reduced=reduced, solver_cfg=solver_cfg))
            if k % 50 == 0:
                logger.info(f"Evaluated {k}/{len(instances)} instances")

    # instances without an index keep their input order
    order = {id(r): k for k, r in enumerate(results)}
    results.sort(key=lambda r: (r.index if r.index is not None else order[id(r)], order[id(r)]))

    meta = {'strategies': names, 'verify': bool(verify), 'reduced_form': bool(reduced), 'versions': tool_versions()}
    meta.update(metadata or {})
    report = BenchReport(
        rows=aggregate(results, names),
        results=tuple(results),
        metadata=meta,
        created_at=datetime.now(timezone.utc).isoformat(),
    )
    for r in report.rows:
        logger.info(f"{r.strategy}: avg {_number(r.avg_rel)} max {_number(r.max_rel)} failures {r.failures}")
    return report
