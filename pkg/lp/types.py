"""Linear programs as plain row lists over nonnegative variables."""
from dataclasses import dataclass, field
from functools import cached_property

from django.db import models
import numpy as np


class Relation(models.TextChoices):
    LE = '<=', 'less than or equal'
    EQ = '=', 'equal'
    GE = '>=', 'greater than or equal'

    def flipped(self):
        return {Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(self, Relation.EQ)


class VarKind(models.TextChoices):
    COMM_START = 'S', 'communication start'
    COMM_END = 'E', 'communication end'
    COMP_START = 'Cs', 'computation start'
    COMP_END = 'Ce', 'computation end'
    FRACTION = 'gamma', 'load fraction'
    MAKESPAN = 'makespan', 'makespan'
    GENERIC = 'x', 'generic variable'


@dataclass(frozen=True)
class VarTag:
    """What an LP column stands for. i, n, j are 0-based."""
    kind: str
    i: int = None
    n: int = None
    j: int = None

    @property
    def name(self):
        if self.kind == VarKind.MAKESPAN:
            return 'makespan'
        if self.kind == VarKind.GENERIC:
            return f'x{self.i + 1}'
        return f'{self.kind}_{self.i + 1}_{self.n + 1}_{self.j + 1}'


@dataclass(frozen=True)
class LPRow:
    """sum(coef * x[col]) <relation> rhs, tagged with its constraint family."""
    coeffs: tuple
    relation: Relation
    rhs: float
    family: int = 0
    index: tuple = ()

    @property
    def name(self):
        if not self.family:
            return 'row'
        return f"f{self.family}[{','.join(str(k) for k in self.index)}]"


@dataclass(frozen=True, eq=False)
class LPProblem:
    """
    minimize objective @ x subject to rows, x >= 0.

    Time-valued columns are expressed in units of time_scale; extraction
    multiplies them back.
    """
    objective: np.ndarray
    rows: tuple
    var_meta: tuple
    time_scale: float = 1.0
    reduced: bool = False
    strict_forwarding: bool = False
    context: dict = field(default_factory=dict, compare=False)

    @classmethod
    def generic(cls, objective, rows):
        """LP over x1..xk from a dense objective and (coeffs, relation, rhs) triples."""
        objective = np.asarray(objective, dtype=float)
        parsed = []
        for coeffs, relation, rhs in rows:
            coeffs = np.asarray(coeffs, dtype=float)
            parsed.append(LPRow(
                tuple((int(k), float(coeffs[k])) for k in np.nonzero(coeffs)[0]),
                Relation(relation), float(rhs),
            ))
        tags = tuple(VarTag(VarKind.GENERIC, i=k) for k in range(objective.size))
        return cls(objective, tuple(parsed), tags)

    @property
    def n_vars(self):
        return len(self.var_meta)

    @property
    def n_rows(self):
        return len(self.rows)

    @cached_property
    def index(self):
        return {tag: k for k, tag in enumerate(self.var_meta)}

    @cached_property
    def matrix(self):
        A = np.zeros((self.n_rows, self.n_vars))
        for r, row in enumerate(self.rows):
            for col, coef in row.coeffs:
                A[r, col] += coef
        return A

    @property
    def rhs(self):
        return np.array([row.rhs for row in self.rows])

    def families(self):
        return sorted({row.family for row in self.rows})

    def row_residuals(self, x):
        """Per-row violation (0 when satisfied)."""
        activity = self.matrix @ np.asarray(x, dtype=float)
        b = self.rhs
        out = np.zeros(self.n_rows)
        for r, row in enumerate(self.rows):
            gap = activity[r] - b[r]
            if row.relation == Relation.LE:
                out[r] = max(gap, 0.0)
            elif row.relation == Relation.GE:
                out[r] = max(-gap, 0.0)
            else:
                out[r] = abs(gap)
        return out

    def max_violation(self, x):
        """Largest row or bound violation of x."""
        x = np.asarray(x, dtype=float)
        bound = float(max(0.0, -x.min())) if x.size else 0.0
        rows = float(self.row_residuals(x).max()) if self.n_rows else 0.0
        return max(bound, rows)

    def value(self, x):
        return float(self.objective @ np.asarray(x, dtype=float))
