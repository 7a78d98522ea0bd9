"""
Equal-completion splits of one message over the chain.

Under as-early-as-possible timing every start time is a maximum of lower
bounds. Once the active bound of each max is fixed ("branches"), completion
times are affine in the fractions and equal completion plus the size of the
message is a square linear system in (alpha_1..alpha_m, T). Branches are
re-read from the solution until they no longer change.
"""
from dataclasses import dataclass
import logging

import numpy as np

from core.exceptions import NoSolution, SingularSystem

logger = logging.getLogger(__name__)

NEGATIVE_FRACTION_TOL = 1e-12
MAX_CONDITION = 1e12

CONST, CHAIN = 'const', 'chain'
READY, ARRIVAL = 'ready', 'arrival'


@dataclass(frozen=True)
class Split:
    alphas: np.ndarray
    finish: float
    branches: tuple


def _branches(timeline, alphas, load, force_ready):
    m = timeline.platform.m
    floor = timeline.link_floor()
    _, end = timeline.arrival_times(alphas, load.vcomm)
    links = tuple(
        CONST if l == 0 or floor[l] >= end[l - 1] else CHAIN
        for l in range(m - 1)
    )
    procs = tuple(
        READY if i == 0 or force_ready or timeline.ready[i] >= end[i - 1] else ARRIVAL
        for i in range(m)
    )
    return links, procs


def _linear_system(timeline, load, total, branches):
    """Rows over (alpha_1..alpha_m, T, 1): equal completion, then the size row."""
    m = timeline.platform.m
    links, procs = branches
    floor = timeline.link_floor()
    width = m + 2

    def const(value):
        v = np.zeros(width)
        v[-1] = value
        return v

    downstream = [np.zeros(width) for _ in range(m + 1)]
    for k in reversed(range(m)):
        downstream[k] = downstream[k + 1].copy()
        downstream[k][k] = 1.0

    ends = []
    for l in range(m - 1):
        start = const(floor[l]) if links[l] == CONST else ends[l - 1]
        ends.append(start + timeline.z[l] * load.vcomm * downstream[l + 1])

    M = np.zeros((m + 1, m + 1))
    rhs = np.zeros(m + 1)
    for i in range(m):
        row = const(timeline.ready[i]) if procs[i] == READY else ends[i - 1].copy()
        row[i] += timeline.w[i] * load.vcomp
        row[m] -= 1.0
        M[i] = row[:m + 1]
        rhs[i] = -row[-1]
    M[m, :m] = 1.0
    rhs[m] = total
    return M, rhs


def equal_completion_split(timeline, load, total, force_ready=False):
    """
    Fractions summing to `total` that make every processor finish this
    message at the same time, given the messages already placed on
    `timeline`. With force_ready every processor starts when it is free,
    whatever the arrival of its data.

    Raises SingularSystem or NoSolution.
    """
    m = timeline.platform.m
    inverse = 1.0 / timeline.w
    guess = inverse / inverse.sum() * total
    branches = _branches(timeline, guess, load, force_ready)
    seen = set()

    while branches not in seen:
        seen.add(branches)
        M, rhs = _linear_system(timeline, load, total, branches)
        if np.linalg.cond(M) > MAX_CONDITION:
            raise SingularSystem(f"equal-completion system is singular for branches {branches}")
        try:
            solution = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(str(exc))
        alphas, finish = solution[:m], float(solution[m])

        if alphas.min() < -NEGATIVE_FRACTION_TOL:
            raise NoSolution(f"equal completion needs a negative fraction ({alphas.min():.3g})")
        alphas = np.maximum(alphas, 0.0)

        following = _branches(timeline, alphas, load, force_ready)
        if following == branches:
            logger.debug(f"Equal-completion split settled after {len(seen)} round(s): finish {finish:.9g}")
            return Split(alphas, finish, branches)
        branches = following

    raise NoSolution("equal-completion branches cycle without settling")


def keep_busy_limit(timeline, load):
    """
    Largest message size whose equal-completion split, with every processor
    starting as soon as it is free, delivers each processor's data no later
    than that moment. Returns (smallest size with nonnegative fractions,
    largest keep-busy size, split as an affine map size -> fractions).
    """
    m = timeline.platform.m
    speed = 1.0 / (timeline.w * load.vcomp)
    ready = timeline.ready
    # alpha_i = a_i * s + b_i with a common finish time
    a = speed / speed.sum()
    finish0 = (ready * speed).sum() / speed.sum()
    b = (finish0 - ready) * speed

    with np.errstate(divide='ignore', invalid='ignore'):
        lower = np.where(a > 0, -b / a, -np.inf)
    s_min = float(max(0.0, lower.max()))

    tail_a = np.concatenate([np.cumsum(a[::-1])[::-1], [0.0]])
    tail_b = np.concatenate([np.cumsum(b[::-1])[::-1], [0.0]])
    floor = timeline.link_floor()
    s_max = np.inf
    for i in range(1, m):
        for k in range(i):
            # data for P_i leaving P_{k+1} no earlier than link k is free
            u = floor[k] + load.vcomm * sum(timeline.z[l] * tail_b[l + 1] for l in range(k, i))
            v = load.vcomm * sum(timeline.z[l] * tail_a[l + 1] for l in range(k, i))
            slack = ready[i] - u
            if v > 0:
                s_max = min(s_max, slack / v)
            elif slack < 0:
                s_max = min(s_max, 0.0)
    return s_min, float(s_max), (a, b)


def ready_split(affine, size):
    a, b = affine
    alphas = a * size + b
    if alphas.min() < -NEGATIVE_FRACTION_TOL:
        raise NoSolution(f"keep-busy split of size {size:.3g} needs a negative fraction")
    return np.maximum(alphas, 0.0)
