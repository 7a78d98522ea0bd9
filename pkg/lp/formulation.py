"""
The multi-installment linear program.

Columns, per (load n, installment j) block in sending order: S and E per link,
Cs and Ce per processor, then gamma per processor; the makespan column comes
last. Rows are emitted in the same (n, j) order, one constraint family after
the other inside a block; the load-sum rows close each load and the makespan
rows close the program.

The last link has no downstream link to wait for: its next receive is gated
by its own previous end, so families 2 and 3 reach every link.

In the reduced form E and Ce are substituted by their defining expressions
and families 5 and 7 disappear.
"""
from collections import defaultdict
import logging

import numpy as np

from core.exceptions import MissingVariable
from core.types import Schedule
from core.validators import validate_installments

from .types import LPProblem, LPRow, Relation, VarKind, VarTag

logger = logging.getLogger(__name__)


def natural_time_scale(platform, workload):
    """A time unit of the order of the makespan: all work on the fastest processor."""
    work = min(platform.w) * sum(load.vcomp for load in workload)
    return float(work + max(platform.tau))


class _Builder:

    def __init__(self, platform, workload, q, reduced, strict_forwarding, time_scale):
        self.p = platform
        self.wl = workload
        self.q = q
        self.reduced = reduced
        self.strict = strict_forwarding
        self.c = float(time_scale)
        self.tags = []
        self.rows = []
        self.m = platform.m
        self.links = platform.m - 1

    def add_columns(self):
        kinds = [VarKind.COMM_START, VarKind.COMM_END, VarKind.COMP_START, VarKind.COMP_END, VarKind.FRACTION]
        if self.reduced:
            kinds = [VarKind.COMM_START, VarKind.COMP_START, VarKind.FRACTION]
        for n, j in self.q.messages():
            for kind in kinds:
                count = self.links if kind in (VarKind.COMM_START, VarKind.COMM_END) else self.m
                self.tags.extend(VarTag(kind, i, n, j) for i in range(count))
        self.tags.append(VarTag(VarKind.MAKESPAN))
        self.col = {tag: k for k, tag in enumerate(self.tags)}

    # Expressions are {column: coefficient} dicts in scaled time units.

    def _var(self, kind, i=None, n=None, j=None):
        return {self.col[VarTag(kind, i, n, j)]: 1.0}

    def _transfer(self, link, n, j):
        """Scaled duration of message (n, j) on `link` as a gamma expression."""
        coef = self.p.z[link] * self.wl[n].vcomm / self.c
        return {self.col[VarTag(VarKind.FRACTION, k, n, j)]: coef for k in range(link + 1, self.m)}

    def _work(self, i, n, j):
        coef = self.p.w[i] * self.wl[n].vcomp / self.c
        return {self.col[VarTag(VarKind.FRACTION, i, n, j)]: coef}

    def S(self, link, n, j):
        return self._var(VarKind.COMM_START, link, n, j)

    def E(self, link, n, j):
        if self.reduced:
            return _plus(self.S(link, n, j), self._transfer(link, n, j))
        return self._var(VarKind.COMM_END, link, n, j)

    def Cs(self, i, n, j):
        return self._var(VarKind.COMP_START, i, n, j)

    def Ce(self, i, n, j):
        if self.reduced:
            return _plus(self.Cs(i, n, j), self._work(i, n, j))
        return self._var(VarKind.COMP_END, i, n, j)

    def gate(self, link):
        return link + 1 if link < self.links - 1 else link

    def row(self, expr, relation, rhs, family, index):
        coeffs = tuple(sorted((col, coef) for col, coef in expr.items() if coef != 0.0))
        self.rows.append(LPRow(coeffs, relation, float(rhs), family, tuple(index)))

    def ge(self, lhs, rhs_expr, family, index, const=0.0):
        """lhs >= rhs_expr + const"""
        self.row(_plus(lhs, rhs_expr, -1.0), Relation.GE, const, family, index)

    def block(self, n, j):
        links, m, q = self.links, self.m, self.q
        last = q[n] - 1

        for a in range(links - 1):
            self.ge(self.S(a + 1, n, j), self.E(a, n, j), 1, (a + 1, n + 1, j + 1))
        if j > 0:
            for a in range(links):
                self.ge(self.S(a, n, j), self.E(self.gate(a), n, j - 1), 2, (a + 1, n + 1, j))
        elif n > 0:
            for a in range(links):
                self.ge(self.S(a, n, 0), self.E(self.gate(a), n - 1, q[n - 1] - 1), 3, (a + 1, n))
        if not self.reduced:
            for a in range(links):
                expr = _plus(self.E(a, n, j), self.S(a, n, j), -1.0)
                self.row(_plus(expr, self._transfer(a, n, j), -1.0), Relation.EQ, 0.0, 5, (a + 1, n + 1, j + 1))
        for i in range(1, m):
            self.ge(self.Cs(i, n, j), self.E(i - 1, n, j), 6, (i + 1, n + 1, j + 1))
        if self.strict:
            for i in range(1, m - 1):
                self.ge(self.Cs(i, n, j), self.E(i, n, j), 6, (i + 1, n + 1, j + 1))
        if not self.reduced:
            for i in range(m):
                expr = _plus(self.Ce(i, n, j), self.Cs(i, n, j), -1.0)
                self.row(_plus(expr, self._work(i, n, j), -1.0), Relation.EQ, 0.0, 7, (i + 1, n + 1, j + 1))
        if j == 0 and n > 0:
            for i in range(m):
                self.ge(self.Cs(i, n, 0), self.Ce(i, n - 1, q[n - 1] - 1), 8, (i + 1, n))
        if j > 0:
            for i in range(m):
                self.ge(self.Cs(i, n, j), self.Ce(i, n, j - 1), 9, (i + 1, n + 1, j))
        if n == 0 and j == 0:
            for i in range(m):
                self.ge(self.Cs(i, 0, 0), {}, 10, (i + 1,), const=self.p.tau[i] / self.c)
        if j == last:
            gammas = {self.col[VarTag(VarKind.FRACTION, i, n, jj)]: 1.0 for i in range(m) for jj in range(q[n])}
            self.row(gammas, Relation.EQ, 1.0, 12, (n + 1,))

    def build(self):
        self.add_columns()
        for n, j in self.q.messages():
            self.block(n, j)
        last_n = self.wl.n_loads - 1
        makespan = self._var(VarKind.MAKESPAN)
        for i in range(self.m):
            self.ge(makespan, self.Ce(i, last_n, self.q[last_n] - 1), 13, (i + 1,))

        objective = np.zeros(len(self.tags))
        objective[-1] = 1.0
        return LPProblem(
            objective, tuple(self.rows), tuple(self.tags),
            time_scale=self.c, reduced=self.reduced, strict_forwarding=self.strict,
            context={'platform': self.p, 'workload': self.wl, 'q': self.q},
        )


def _plus(a, b, scale=1.0):
    out = defaultdict(float, a)
    for col, coef in b.items():
        out[col] += scale * coef
    return dict(out)


def build_lp(platform, workload, q, reduced=False, strict_forwarding=False, time_scale=1.0):
    """
    Build the LP for a fixed installment vector q.

    Variables are bounded below by zero (families 4 and 11); every other
    family is an explicit row.
    """
    q = validate_installments(q, workload)
    if not time_scale > 0:
        raise ValueError(f"time_scale must be positive, got {time_scale}")
    lp = _Builder(platform, workload, q, reduced, strict_forwarding, time_scale).build()
    logger.debug(
        f"Built {'reduced' if reduced else 'full'} LP for m={platform.m} q={list(q)}: "
        f"{lp.n_vars} columns, {lp.n_rows} rows"
    )
    return lp


def _column(problem, tag):
    try:
        return problem.index[tag]
    except KeyError:
        raise MissingVariable(f"LP has no column for {tag.name}")


def extract_schedule(problem, x):
    """Read a timed Schedule back from a primal vector of `problem`."""
    x = np.asarray(x, dtype=float)
    if x.size != problem.n_vars:
        raise MissingVariable(f"solution has {x.size} values, LP has {problem.n_vars} columns")
    x = np.maximum(x, 0.0)
    p, wl, q = problem.context['platform'], problem.context['workload'], problem.context['q']
    m, c = p.m, problem.time_scale

    def value(kind, i=None, n=None, j=None):
        return x[_column(problem, VarTag(kind, i, n, j))]

    fractions, comm_start, comm_end, comp_start, comp_end = [], [], [], [], []
    for n, qn in enumerate(q):
        F = np.array([[value(VarKind.FRACTION, i, n, j) for j in range(qn)] for i in range(m)])
        S = np.array([[value(VarKind.COMM_START, a, n, j) * c for j in range(qn)] for a in range(m - 1)]).reshape(m - 1, qn)
        Cs = np.array([[value(VarKind.COMP_START, i, n, j) * c for j in range(qn)] for i in range(m)])
        if problem.reduced:
            downstream = np.cumsum(F[::-1], axis=0)[::-1][1:]
            E = S + np.asarray(p.z)[:, None] * wl[n].vcomm * downstream
            Ce = Cs + np.asarray(p.w)[:, None] * wl[n].vcomp * F
        else:
            E = np.array([[value(VarKind.COMM_END, a, n, j) * c for j in range(qn)] for a in range(m - 1)]).reshape(m - 1, qn)
            Ce = np.array([[value(VarKind.COMP_END, i, n, j) * c for j in range(qn)] for i in range(m)])
        fractions.append(F)
        comm_start.append(S)
        comm_end.append(E)
        comp_start.append(Cs)
        comp_end.append(Ce)

    makespan = value(VarKind.MAKESPAN) * c
    return Schedule(tuple(fractions), tuple(comm_start), tuple(comm_end), tuple(comp_start), tuple(comp_end), makespan)


def pack_schedule(problem, schedule):
    """Primal vector of `problem` holding a timed schedule."""
    if not schedule.has_times:
        raise MissingVariable("schedule has no times to pack")
    c = problem.time_scale
    x = np.zeros(problem.n_vars)
    sources = {
        VarKind.COMM_START: (schedule.comm_start, c),
        VarKind.COMM_END: (schedule.comm_end, c),
        VarKind.COMP_START: (schedule.comp_start, c),
        VarKind.COMP_END: (schedule.comp_end, c),
        VarKind.FRACTION: (schedule.fractions, 1.0),
    }
    for k, tag in enumerate(problem.var_meta):
        if tag.kind == VarKind.MAKESPAN:
            x[k] = schedule.makespan / c
        else:
            arrays, unit = sources[tag.kind]
            x[k] = arrays[tag.n][tag.i, tag.j] / unit
    return x

