"""
The two-processor, two-load example: w1 = w2 = lambda, z1 = 1, unit loads.

Closed forms for the reference schedules live here next to the instance
factory so tests and `generate --example` share them.
"""
import math

import numpy as np

from core.exceptions import DomainError
from core.timing import aeap_times
from core.types import Instance, Platform, Workload

SINGLE_INST_THRESHOLD = (math.sqrt(3) + 1) / 2
UNCAPPED_THRESHOLD = (math.sqrt(17) + 1) / 8


def _check(lam):
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"lambda must be a positive real, got {lam}")


def motivating_example(lam):
    _check(lam)
    platform = Platform(w=(lam, lam), z=(1.0,), tau=(0.0, 0.0))
    workload = Workload(((1.0, 1.0), (1.0, 1.0)))
    return Instance(platform, workload, meta={'example_lambda': lam})


def makespan_single(lam):
    """Makespan of the hand-built single-installment schedule."""
    return 2 * lam * (lam ** 2 + lam + 1) / (2 * lam ** 2 + 2 * lam + 1)


def makespan_single_inst(lam):
    """Makespan of the equal-completion single-installment strategy (lambda >= threshold)."""
    return lam * (4 * lam + 3) / (2 * (2 * lam + 1))


def reference_single_installment_schedule(lam):
    """One installment per load, P1 favoured on the first load and P2 on the second."""
    instance = motivating_example(lam)
    d = 2 * lam ** 2 + 2 * lam + 1
    fractions = (
        np.array([[(2 * lam ** 2 + 1) / d], [2 * lam / d]]),
        np.array([[(2 * lam + 1) / d], [2 * lam ** 2 / d]]),
    )
    return aeap_times(instance.platform, instance.workload, fractions)


def reference_two_installment_schedule():
    """Two installments per load for lambda = 3/4 (fractions over 653)."""
    instance = motivating_example(0.75)
    fractions = (
        np.array([[0, 317], [192, 144]]) / 653,
        np.array([[0, 464], [108, 81]]) / 653,
    )
    return aeap_times(instance.platform, instance.workload, fractions)


def multi_inst_installments(lam):
    """Installments used for the second load by the keep-busy strategy."""
    _check(lam)
    if lam >= SINGLE_INST_THRESHOLD:
        return 1
    if lam <= UNCAPPED_THRESHOLD:
        raise DomainError(f"no finite installment count exists for lambda={lam}")
    if lam == 1:
        return 2
    return math.ceil(math.log((4 * lam ** 2 - lam - 1) / (2 * lam ** 2)) / math.log(lam))
