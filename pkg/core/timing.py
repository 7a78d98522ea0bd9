"""
As-early-as-possible timing on the chain.

Every transfer and computation starts at the largest of its lower bounds:

- link l sends message k once P_l holds it (end on link l-1) and once P_{l+1}
  finished forwarding message k-1 (end on link l+1, or on link l itself for the
  last link);
- P_i computes once its data arrived (end on link i-1), once it finished its
  previous computation, and never before its availability date.
"""
from dataclasses import dataclass

import numpy as np

from .types import Schedule


@dataclass(frozen=True)
class Placement:
    comm_start: np.ndarray
    comm_end: np.ndarray
    comp_start: np.ndarray
    comp_end: np.ndarray


class ChainTimeline:
    """Places messages one at a time, in sending order."""

    def __init__(self, platform, strict_forwarding=False):
        self.platform = platform
        self.strict_forwarding = strict_forwarding
        self.w = np.asarray(platform.w)
        self.z = np.asarray(platform.z)
        self.ready = np.asarray(platform.tau, dtype=float).copy()
        self.link_end = np.zeros(platform.m - 1)

    def link_floor(self):
        """Earliest start allowed on each link by the previous message."""
        m = self.platform.m
        return np.array([self.link_end[min(l + 1, m - 2)] for l in range(m - 1)])

    def arrival_times(self, alphas, vcomm):
        """(start, end) per link for a message carrying `alphas` of a load."""
        m = self.platform.m
        floor = self.link_floor()
        downstream = np.cumsum(alphas[::-1])[::-1]
        start = np.zeros(m - 1)
        end = np.zeros(m - 1)
        for l in range(m - 1):
            start[l] = floor[l] if l == 0 else max(floor[l], end[l - 1])
            end[l] = start[l] + self.z[l] * vcomm * downstream[l + 1]
        return start, end

    def place(self, alphas, load):
        alphas = np.asarray(alphas, dtype=float)
        m = self.platform.m
        comm_start, comm_end = self.arrival_times(alphas, load.vcomm)

        comp_start = self.ready.copy()
        for i in range(1, m):
            comp_start[i] = max(comp_start[i], comm_end[i - 1])
            if self.strict_forwarding and i < m - 1:
                comp_start[i] = max(comp_start[i], comm_end[i])
        comp_end = comp_start + self.w * alphas * load.vcomp

        self.ready = comp_end.copy()
        self.link_end = comm_end.copy()
        return Placement(comm_start, comm_end, comp_start, comp_end)


def aeap_times(platform, workload, fractions, strict_forwarding=False):
    """Time a fractions-only schedule; returns a fully timed Schedule."""
    timeline = ChainTimeline(platform, strict_forwarding=strict_forwarding)
    m = platform.m
    comm_start, comm_end, comp_start, comp_end = [], [], [], []
    for load, f in zip(workload, fractions):
        f = np.asarray(f, dtype=float)
        q = f.shape[1]
        cs, ce = np.zeros((m - 1, q)), np.zeros((m - 1, q))
        ps, pe = np.zeros((m, q)), np.zeros((m, q))
        for j in range(q):
            placed = timeline.place(f[:, j], load)
            cs[:, j], ce[:, j] = placed.comm_start, placed.comm_end
            ps[:, j], pe[:, j] = placed.comp_start, placed.comp_end
        comm_start.append(cs)
        comm_end.append(ce)
        comp_start.append(ps)
        comp_end.append(pe)
    return Schedule(tuple(fractions), tuple(comm_start), tuple(comm_end), tuple(comp_start), tuple(comp_end))


def retime(platform, workload, schedule, strict_forwarding=False):
    return aeap_times(platform, workload, schedule.fractions, strict_forwarding=strict_forwarding)
