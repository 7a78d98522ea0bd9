import logging

import numpy as np

from core.conf import divload_setting
from core.exceptions import InputValidationError, InternalSolverError, SolverFailure
from core.types import InstallmentCounts
from core.validators import validate_installments
from heuristics.overhead import choose_installments

from .formulation import build_lp, extract_schedule, natural_time_scale
from .simplex import LPStatus, SolverConfig, solve
from .standard_form import to_standard_form

logger = logging.getLogger(__name__)


def optimal_schedule(platform, workload, q, reduced=None, strict_forwarding=None, cfg=None, instance_id=None):
    """
    Build, solve and decode the LP for installment counts q.

    Returns (schedule, makespan). Infeasible or unbounded verdicts cannot occur
    for valid inputs and raise InternalSolverError. An exhausted iteration
    budget, lost primal feasibility or a decoded point that misses its rows
    by more than the output tolerance raises SolverFailure.
    """
    if reduced is None:
        reduced = divload_setting('LP_REDUCED_FORM')
    if strict_forwarding is None:
        strict_forwarding = divload_setting('LP_STRICT_FORWARDING')
    cfg = cfg or SolverConfig.from_settings()

    problem = build_lp(
        platform, workload, q, reduced=reduced, strict_forwarding=strict_forwarding,
        time_scale=natural_time_scale(platform, workload),
    )
    try:
        solution = solve(to_standard_form(problem), cfg)
    except SolverFailure as exc:
        raise SolverFailure(exc.args[0], instance_id=instance_id) from exc

    if solution.status == LPStatus.ITERATION_LIMIT:
        raise SolverFailure(f"simplex stopped after {solution.iterations} iterations", instance_id=instance_id)
    if solution.status != LPStatus.OPTIMAL:
        raise InternalSolverError(f"LP for q={list(problem.context['q'])} reported {solution.status.label}")

    violation = problem.max_violation(solution.x)
    if violation > cfg.output_tolerance(float(np.abs(solution.x).max(initial=0.0))):
        raise SolverFailure(f"LP optimum violates its constraints by {violation:.3g}", instance_id=instance_id)

    schedule = extract_schedule(problem, solution.x)
    logger.info(
        f"LP optimum for m={platform.m} q={list(problem.context['q'])}: makespan {schedule.makespan:.9g} "
        f"({solution.iterations} pivots)"
    )
    return schedule, schedule.makespan


def resolve_installments(workload, installments=None, uniform_q=None, platform=None,
                         startup=0.0, rho_max=None, max_installments=3):
    """
    Installment counts from the solve options: an explicit per-load list, a
    uniform count, or 'auto' (per-load count under a startup-overhead budget).
    """
    if (installments is None) == (uniform_q is None):
        raise InputValidationError('installments', value='both or neither',
                                   message='give exactly one of installments and uniform_q (%(value)s given).')
    if uniform_q is not None:
        return InstallmentCounts.uniform(workload.n_loads, uniform_q)
    if installments == 'auto':
        if platform is None or rho_max is None:
            raise InputValidationError('rho_max', message='%(field)s is required with installments=auto.')
        return choose_installments(platform, workload, startup, rho_max, max_installments)
    if isinstance(installments, str):
        try:
            installments = [int(v) for v in installments.split(',') if v.strip()]
        except ValueError:
            raise InputValidationError('installments', value=installments,
                                       message='%(field)s must be a comma-separated list of integers (got %(value)s).')
    return validate_installments(InstallmentCounts(tuple(installments)), workload)
