"""Installment counts under per-message startup costs, and coverage bounds of the two-processor example."""
import math

from core.exceptions import DomainError
from core.types import InstallmentCounts


def min_installments_for_overhead(vcomm, m, startup, rho_max):
    """
    Largest Q with ((m-1) * Q * startup + vcomm) / vcomm <= rho_max.

    Returns None (no limit) when startup is 0, and at least 1 otherwise.
    """
    if vcomm <= 0:
        raise DomainError(f"vcomm must be positive, got {vcomm}")
    if m < 2:
        raise DomainError(f"a chain needs at least two processors to pay startup costs, got m={m}")
    if startup < 0:
        raise DomainError(f"startup must be nonnegative, got {startup}")
    if not rho_max > 1:
        raise DomainError(f"rho_max must exceed 1, got {rho_max}")
    if startup == 0:
        return None
    return max(1, math.floor((rho_max - 1) * vcomm / ((m - 1) * startup) + 1e-9))


def choose_installments(platform, workload, startup, rho_max, max_installments=3):
    """Per-load installment counts for an overhead budget, capped at max_installments."""
    if platform.m < 2:
        return InstallmentCounts.uniform(workload.n_loads, 1)
    counts = []
    for load in workload:
        q = min_installments_for_overhead(load.vcomm, platform.m, startup, rho_max)
        counts.append(max_installments if q is None else min(q, max_installments))
    return InstallmentCounts(tuple(counts))


def uncapped_feasibility_bound(lam, installments=None):
    """
    Share of the second load of the two-processor example that keep-busy
    installments can carry: with `installments` rounds, or in the limit.
    A value below 1 means the uncapped strategy cannot finish.
    """
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam > 0):
        raise DomainError(f"lambda must be a positive real, got {lam}")
    if installments is not None:
        if installments < 1:
            raise DomainError(f"installments must be at least 1, got {installments}")
        if lam == 1:
            return 2 * installments / 3
        return 2 * lam ** 2 * (lam ** installments - 1) / (2 * lam ** 2 - lam - 1)
    if lam >= 1:
        return math.inf
    return 2 * lam ** 2 / ((1 - lam) * (2 * lam + 1))
