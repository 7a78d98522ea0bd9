"""
Dense two-phase tableau simplex.

Phase 1 minimizes the sum of artificial variables, phase 2 the objective.
Entering columns follow Dantzig's rule (most negative reduced cost) until a
basis repeats during a run of zero-length pivots; from then on Bland's rule
(lowest eligible column, lowest basic index among ratio-test candidates) is
used for the rest of the solve.

The program is equilibrated (power-of-two row and column scales) before the
first pivot. The ratio test is Harris' two-pass test: rows whose ratio is
within feas_tol of the bound are candidates, small pivots among them are
skipped, and exact ratio ties go to the smallest row index. The tableau is
rebuilt from the scaled data every few pivots and once more before a
solution is reported; the reported point is checked against the original
rows.
"""
from dataclasses import dataclass
import logging
import math

from django.db import models
import numpy as np

from core.conf import divload_setting
from core.exceptions import SolverFailure

from .standard_form import to_standard_form

logger = logging.getLogger(__name__)

REFACTOR_EVERY = (100, 10)
SCALING_PASSES = 4
PIVOT_SHARE = 1e-2


class LPStatus(models.TextChoices):
    OPTIMAL = 'optimal', 'Optimal'
    INFEASIBLE = 'infeasible', 'Infeasible'
    UNBOUNDED = 'unbounded', 'Unbounded'
    ITERATION_LIMIT = 'iteration_limit', 'Iteration limit'


class PivotRule(models.TextChoices):
    BLAND = 'bland', 'Bland'
    DANTZIG = 'dantzig-with-bland-fallback', 'Dantzig, Bland after cycling'


@dataclass(frozen=True)
class SolverConfig:
    feas_tol: float = 1e-9
    opt_tol: float = 1e-9
    pivot_tol: float = 1e-9  # relative to the largest entry of the entering column
    pivot_rule: str = PivotRule.DANTZIG
    max_iterations: int = None
    verbose: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'pivot_rule', PivotRule(self.pivot_rule))

    @classmethod
    def from_settings(cls, **overrides):
        conf = {k.lower(): v for k, v in divload_setting('SOLVER').items()}
        conf.update(overrides)
        return cls(**conf)

    def iteration_cap(self, rows, cols):
        if self.max_iterations is not None:
            return self.max_iterations
        return 50 * (rows + cols)

    def output_tolerance(self, *magnitudes):
        """Allowed row residual of a reported point: 10 feas_tol, relative beyond unit magnitude."""
        return 10 * self.feas_tol * max([1.0, *magnitudes])


@dataclass(frozen=True, eq=False)
class LPSolution:
    status: LPStatus
    x: np.ndarray = None
    objective: float = math.nan
    iterations: int = 0
    cs_residual: float = math.nan
    used_bland: bool = False
    max_residual: float = math.nan

    @property
    def optimal(self):
        return self.status == LPStatus.OPTIMAL


class _LostFeasibility(Exception):
    pass


def _power_of_two(values):
    return np.exp2(np.round(np.log2(values)))


def equilibrate(slp, passes=SCALING_PASSES):
    """
    Row scales r and column scales s such that diag(r) A diag(s) has entries
    near 1. Slack columns get 1/r of their row so they stay unit columns.
    """
    k, n = slp.A.shape
    r = np.ones(k)
    s = np.ones(n)
    n0 = slp.n_original
    if k == 0 or n0 == 0:
        return r, s

    A = np.abs(slp.A[:, :n0])
    nz = A > 0
    rows_used = nz.any(axis=1)
    cols_used = nz.any(axis=0)
    s0 = np.ones(n0)
    for _ in range(passes):
        M = A * r[:, None] * s0[None, :]
        big = np.where(nz, M, 0.0).max(axis=1)
        small = np.where(nz, M, np.inf).min(axis=1)
        r[rows_used] /= np.sqrt(big[rows_used] * small[rows_used])

        M = A * r[:, None] * s0[None, :]
        big = np.where(nz, M, 0.0).max(axis=0)
        small = np.where(nz, M, np.inf).min(axis=0)
        s0[cols_used] /= np.sqrt(big[cols_used] * small[cols_used])

    r = _power_of_two(r)
    s[:n0] = _power_of_two(s0)
    for slack in slp.slack_meta:
        s[slack.column] = 1.0 / r[slack.row]
    return r, s


class _Tableau:
    """
    Rows 0..k-1 hold [B^-1 A | B^-1 b]; the last row holds the reduced costs
    and -z. A and b are kept so the body can be rebuilt for the current basis.
    """

    def __init__(self, A, b, basis, cfg, cap, refactor_every):
        k, n = A.shape
        self.A = A
        self.b = b
        self.rows = list(range(k))
        self.T = np.zeros((k + 1, n + 1))
        self.T[:k, :n] = A
        self.T[:k, -1] = b
        self.basis = list(basis)
        self.cost = np.zeros(n)
        self.cfg = cfg
        self.cap = cap
        self.refactor_every = refactor_every
        self.iterations = 0
        self.bland = cfg.pivot_rule == PivotRule.BLAND
        self.switched = False

    @property
    def k(self):
        return self.T.shape[0] - 1

    @property
    def n(self):
        return self.T.shape[1] - 1

    @property
    def rhs_scale(self):
        return max(1.0, float(np.abs(self.b).max())) if self.b.size else 1.0

    def set_objective(self, c):
        self.cost = np.asarray(c, dtype=float)
        row = np.zeros(self.n + 1)
        row[:len(c)] = c
        for r, col in enumerate(self.basis):
            if row[col] != 0.0:
                row -= row[col] * self.T[r]
        self.T[-1] = row

    def pivot(self, r, k):
        T = self.T
        T[r] /= T[r, k]
        factors = T[:, k].copy()
        factors[r] = 0.0
        nz = np.nonzero(factors)[0]
        T[nz] -= np.outer(factors[nz], T[r])
        T[:, k] = 0.0
        T[r, k] = 1.0
        self.basis[r] = k
        self.iterations += 1

    def refactor(self):
        """Rebuild [B^-1 A | B^-1 b] and the cost row from the kept data."""
        if not self.rows:
            return
        A = self.A[self.rows]
        B = A[:, self.basis]
        try:
            body = np.linalg.solve(B, np.column_stack([A, self.b[self.rows]]))
        except np.linalg.LinAlgError:
            logger.warning(f"Basis singular at iteration {self.iterations}; keeping the updated tableau")
            return
        for r, col in enumerate(self.basis):
            body[:, col] = 0.0
            body[r, col] = 1.0
        self.T[:-1] = body
        self.set_objective(self.cost)

    def primal_shortfall(self):
        """Most negative basic value (0 when the basis is feasible)."""
        if not self.k:
            return 0.0
        return float(max(0.0, -self.T[:-1, -1].min()))

    def clamp(self):
        """Basic values within feas_tol below zero are set to zero."""
        rhs = self.T[:-1, -1]
        rhs[(rhs < 0.0) & (rhs >= -self.cfg.feas_tol * self.rhs_scale)] = 0.0

    def _entering(self, allowed):
        d = self.T[-1, :self.n]
        eligible = np.nonzero((d < -self.cfg.opt_tol) & allowed)[0]
        if eligible.size == 0:
            return None
        if self.bland:
            return int(eligible[0])
        return int(eligible[np.argmin(d[eligible])])

    def _leaving(self, k):
        column = self.T[:self.k, k]
        if column.size == 0:
            return None, None
        threshold = self.cfg.pivot_tol * max(1.0, float(np.abs(column).max()))
        rows = np.nonzero(column > threshold)[0]
        if rows.size == 0:
            return None, None
        a = column[rows]
        rhs = self.T[rows, -1]
        # pass 1: largest step that keeps every basic value above -feas_tol
        bound = ((rhs + self.cfg.feas_tol * self.rhs_scale) / a).min()
        # pass 2: rows blocking within that bound with a pivot near the largest one
        ratios = np.maximum(rhs, 0.0) / a
        candidates = np.nonzero(ratios <= max(bound, 0.0))[0]
        strong = candidates[a[candidates] >= PIVOT_SHARE * a[candidates].max()]
        tied = strong[ratios[strong] == ratios[strong].min()]
        if self.bland:
            pick = tied[np.argmin([self.basis[rows[t]] for t in tied])]
        else:
            pick = tied[0]
        return int(rows[pick]), float(ratios[pick])

    def run(self, allowed, phase):
        """Pivot until optimal; returns an LPStatus."""
        seen = set()
        while True:
            k = self._entering(allowed)
            if k is None:
                return LPStatus.OPTIMAL
            if self.iterations >= self.cap:
                logger.warning(f"Simplex phase {phase} hit the iteration limit ({self.cap})")
                return LPStatus.ITERATION_LIMIT
            r, step = self._leaving(k)
            if r is None:
                return LPStatus.UNBOUNDED
            self.T[r, -1] = max(self.T[r, -1], 0.0)
            self.pivot(r, k)
            self.clamp()
            if self.cfg.verbose:
                logger.debug(f"phase {phase} pivot {self.iterations}: col {k} enters, row {r} leaves\n{self.T}")
            if self.iterations % self.refactor_every == 0:
                self.checkpoint(phase)

            if step > 1e-12:
                seen.clear()
                continue
            key = tuple(sorted(self.basis))
            if key in seen and not self.bland:
                logger.info(f"Basis repeated during degenerate pivots at iteration {self.iterations}; switching to Bland's rule")
                self.bland = True
                self.switched = True
            seen.add(key)

    def checkpoint(self, phase):
        self.refactor()
        shortfall = self.primal_shortfall()
        if shortfall > 10 * self.cfg.feas_tol * self.rhs_scale:
            raise _LostFeasibility(f"phase {phase}, iteration {self.iterations}: basic value {-shortfall:.3g}")
        self.clamp()

    def drop_row(self, r):
        self.T = np.delete(self.T, r, axis=0)
        del self.basis[r]
        del self.rows[r]

    def drop_columns(self, cols):
        keep = [k for k in range(self.n + 1) if k not in cols]
        remap = {old: new for new, old in enumerate(keep)}
        self.T = self.T[:, keep]
        self.A = self.A[:, [k for k in keep if k < self.A.shape[1]]]
        self.basis = [remap[col] for col in self.basis]


def solve(slp, cfg=None):
    """
    Solve a StandardLP. Returns an LPSolution whose x covers the original
    variables only.

    A solve that loses primal feasibility is repeated once with more frequent
    refactorization; if that fails too SolverFailure is raised.
    """
    cfg = cfg or SolverConfig()
    for attempt, every in enumerate(REFACTOR_EVERY):
        try:
            return _solve_scaled(slp, cfg, every)
        except _LostFeasibility as exc:
            logger.warning(f"Simplex lost feasibility ({exc}); attempt {attempt + 1} of {len(REFACTOR_EVERY)}")
            last = exc
    raise SolverFailure(f"simplex lost primal feasibility ({last})")


def _solve_scaled(slp, cfg, refactor_every):
    k, n = slp.A.shape
    cap = cfg.iteration_cap(k, n)
    r_scale, s_scale = equilibrate(slp)
    A_s = slp.A * r_scale[:, None] * s_scale[None, :]
    b_s = slp.b * r_scale
    c_s = slp.c * s_scale

    basis = slp.initial_basis()
    artificial_rows = [r for r, col in enumerate(basis) if col is None]
    A = np.zeros((k, n + len(artificial_rows)))
    A[:, :n] = A_s
    for t, r in enumerate(artificial_rows):
        A[r, n + t] = 1.0
        basis[r] = n + t
    artificial = set(range(n, n + len(artificial_rows)))

    tableau = _Tableau(A, b_s, basis, cfg, cap, refactor_every)

    if artificial:
        phase1 = np.zeros(A.shape[1])
        phase1[n:] = 1.0
        tableau.set_objective(phase1)
        allowed = np.arange(A.shape[1]) < n
        status = tableau.run(allowed, phase=1)
        if status == LPStatus.ITERATION_LIMIT:
            return LPSolution(status, iterations=tableau.iterations, used_bland=tableau.switched)
        tableau.refactor()

        infeasibility = -tableau.T[-1, -1]
        if infeasibility > cfg.feas_tol * tableau.rhs_scale:
            logger.debug(f"Phase 1 ended with infeasibility {infeasibility:.3g}")
            return LPSolution(LPStatus.INFEASIBLE, iterations=tableau.iterations, used_bland=tableau.switched)

        # drive remaining artificials out; rows where that is impossible are redundant
        for r in reversed(range(tableau.k)):
            if tableau.basis[r] not in artificial:
                continue
            row = np.abs(tableau.T[r, :n])
            threshold = cfg.pivot_tol * max(1.0, float(row.max()) if row.size else 0.0)
            if row.size and row.max() > threshold:
                tableau.T[r, -1] = 0.0
                tableau.pivot(r, int(np.argmax(row)))
            else:
                logger.debug(f"Dropping redundant row {tableau.rows[r]}")
                tableau.drop_row(r)
        tableau.drop_columns(artificial)

    tableau.set_objective(c_s)
    allowed = np.ones(n, dtype=bool)
    while True:
        status = tableau.run(allowed, phase=2)
        if status != LPStatus.OPTIMAL:
            return LPSolution(status, iterations=tableau.iterations, used_bland=tableau.switched)
        tableau.checkpoint(phase=2)
        if tableau._entering(allowed) is None:
            break

    x_scaled = np.zeros(n)
    for r, col in enumerate(tableau.basis):
        x_scaled[col] = tableau.T[r, -1]
    x_full = x_scaled * s_scale
    residual = float(np.abs(slp.A @ x_full - slp.b).max()) if k else 0.0
    shortfall = float(max(0.0, -x_full.min())) if n else 0.0
    allowed_residual = cfg.output_tolerance(
        float(np.abs(slp.b).max()) if k else 0.0, float(np.abs(x_full).max()) if n else 0.0
    )
    if residual > allowed_residual or shortfall > allowed_residual:
        raise _LostFeasibility(f"reported point misses its rows by {max(residual, shortfall):.3g}")
    x_full = np.maximum(x_full, 0.0)

    objective = float(slp.c @ x_full)
    cs = _complementary_slackness(slp, tableau.rows, tableau.basis, x_full)
    logger.debug(
        f"Simplex optimal after {tableau.iterations} pivots: objective {objective:.12g}, "
        f"row residual {residual:.3g}, complementary slackness residual {cs:.3g}"
    )
    return LPSolution(
        LPStatus.OPTIMAL,
        x=x_full[:slp.n_original].copy(),
        objective=objective,
        iterations=tableau.iterations,
        cs_residual=cs,
        used_bland=tableau.switched,
        max_residual=residual,
    )


def _complementary_slackness(slp, rows, basis, x):
    """max |x_j * d_j| with d the reduced costs of the dual estimate B^T y = c_B."""
    if not rows:
        return float(np.abs(x * slp.c).max()) if x.size else 0.0
    A = slp.A[rows]
    B = A[:, basis]
    y = np.linalg.lstsq(B.T, slp.c[basis], rcond=None)[0]
    d = slp.c - A.T @ y
    return float(np.abs(x * d).max())


def solve_problem(problem, cfg=None):
    """to_standard_form + solve."""
    return solve(to_standard_form(problem), cfg)
