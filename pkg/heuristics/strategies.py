"""
Comparison strategies: proportional single installment (Simple), equal
completion per load (SingleInst) and greedy keep-busy installments
(MultiInst). Loads are handled one after the other and earlier decisions are
never revisited.
"""
from dataclasses import dataclass
import logging

from django.db import models
import numpy as np

from core.conf import divload_setting
from core.exceptions import InputValidationError, NoSolution
from core.timing import ChainTimeline, aeap_times

from .equal_completion import equal_completion_split, keep_busy_limit, ready_split

logger = logging.getLogger(__name__)

KEEP_BUSY_TOL = 1e-9
REMAINDER_TOL = 1e-9


class OutcomeStatus(models.TextChoices):
    OK = 'ok', 'Ok'
    NO_SOLUTION = 'no_solution', 'NoSolution'


@dataclass(frozen=True)
class Diagnostics:
    """installments: Q_n of every load placed so far; failed_load is 1-based."""
    installments: tuple = ()
    reason: str = ''
    failed_load: int = None
    coverage_bound: float = None


@dataclass(frozen=True, eq=False)
class HeuristicOutcome:
    strategy: str
    status: OutcomeStatus
    diagnostics: Diagnostics
    schedule: object = None

    @property
    def ok(self):
        return self.status == OutcomeStatus.OK

    @property
    def makespan(self):
        return self.schedule.makespan if self.ok else None


def _ok(strategy, platform, workload, columns):
    fractions = tuple(np.column_stack(cols) for cols in columns)
    schedule = aeap_times(platform, workload, fractions)
    installments = tuple(len(cols) for cols in columns)
    logger.debug(f"{strategy}: makespan {schedule.makespan:.9g} with q={list(installments)}")
    return HeuristicOutcome(strategy, OutcomeStatus.OK, Diagnostics(installments), schedule)


def _no_solution(strategy, columns, n, reason, coverage_bound=None):
    logger.info(f"{strategy}: no solution at load {n + 1}: {reason}")
    diagnostics = Diagnostics(tuple(len(cols) for cols in columns), reason, n + 1, coverage_bound)
    return HeuristicOutcome(strategy, OutcomeStatus.NO_SOLUTION, diagnostics)


def _keeps_busy(timeline, alphas, load):
    """True when every processor holds its data by the time it is free."""
    _, end = timeline.arrival_times(alphas, load.vcomm)
    if end.size == 0:
        return True
    scale = max(1.0, float(np.abs(timeline.ready).max()))
    return bool((end <= timeline.ready[1:] + KEEP_BUSY_TOL * scale).all())


def simple_schedule(platform, workload):
    inverse = 1.0 / np.asarray(platform.w)
    share = inverse / inverse.sum()
    columns = [[share.copy()] for _ in workload]
    return _ok('simple', platform, workload, columns)


def single_inst(platform, workload):
    """
    One installment per load; all processors finish each load together.

    From the second load on every processor must stay busy: its data arrives
    before it finishes the previous load, otherwise there is no solution.
    """
    timeline = ChainTimeline(platform)
    columns = []
    for n, load in enumerate(workload):
        try:
            split = equal_completion_split(timeline, load, 1.0, force_ready=n > 0)
        except NoSolution as exc:
            return _no_solution('single-inst', columns, n, str(exc))
        if n > 0 and not _keeps_busy(timeline, split.alphas, load):
            return _no_solution('single-inst', columns, n, "a processor would idle waiting for its data")
        timeline.place(split.alphas, load)
        columns.append([split.alphas])
    return _ok('single-inst', platform, workload, columns)


def multi_inst(platform, workload, cap=None):
    """
    The first load goes in one equal-completion installment. Each later load
    is cut into the largest keep-busy installments; the cap-th installment,
    or the first one that can hold the remainder, takes all remaining work.

    Without a cap the geometric tail of the installment sizes is extrapolated
    after every installment and the run stops with the coverage bound as soon
    as the load cannot be finished.
    """
    name = f'multi-inst:{cap}' if cap is not None else 'multi-inst'
    if cap is not None and (int(cap) != cap or cap < 1):
        raise InputValidationError('cap', value=cap, message='%(field)s must be a positive integer (got %(value)s).')
    limit = divload_setting('MULTI_INST_UNCAPPED_LIMIT')

    timeline = ChainTimeline(platform)
    columns = []
    for n, load in enumerate(workload):
        cols, sizes = [], []
        remaining = 1.0
        while True:
            final = n == 0 or (cap is not None and len(cols) + 1 == cap)
            if not final:
                s_min, s_max, affine = keep_busy_limit(timeline, load)
                final = s_max >= remaining - REMAINDER_TOL or s_max <= 1e-12 or s_max < s_min
            if final:
                try:
                    split = equal_completion_split(timeline, load, remaining)
                except NoSolution as exc:
                    return _no_solution(name, columns + [cols], n, str(exc))
                timeline.place(split.alphas, load)
                cols.append(split.alphas)
                break

            try:
                alphas = ready_split(affine, s_max)
            except NoSolution as exc:
                return _no_solution(name, columns + [cols], n, str(exc))
            timeline.place(alphas, load)
            cols.append(alphas)
            sizes.append(s_max)
            remaining -= s_max

            if cap is None and len(sizes) >= 2:
                ratio = sizes[-1] / sizes[-2]
                tail = np.inf if ratio >= 1 else sizes[-1] * ratio / (1 - ratio)
                coverage = (1.0 - remaining) + tail
                if coverage < 1 - REMAINDER_TOL:
                    return _no_solution(
                        name, columns + [cols], n,
                        f"keep-busy installments cover at most {coverage:.6g} of the load",
                        coverage_bound=coverage,
                    )
            if cap is None and len(cols) >= limit:
                return _no_solution(name, columns + [cols], n, f"no completion within {limit} installments")
        columns.append(cols)
    return _ok(name, platform, workload, columns)
