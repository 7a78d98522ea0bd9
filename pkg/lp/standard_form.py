"""Conversion of an LPProblem to equality form A x = b, x >= 0, b >= 0."""
from dataclasses import dataclass

import numpy as np

from .types import Relation


@dataclass(frozen=True)
class SlackColumn:
    column: int
    row: int
    sign: float  # +1 slack (<= row), -1 surplus (>= row)


@dataclass(frozen=True, eq=False)
class StandardLP:
    """
    Equality-form program. Columns 0..n_original-1 are the original variables,
    the rest are slacks and surpluses described by slack_meta. Rows flagged in
    needs_artificial have no slack to start the basis from.
    """
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    n_original: int
    slack_meta: tuple
    row_sign: np.ndarray
    needs_artificial: tuple
    row_families: tuple

    @property
    def n_rows(self):
        return self.A.shape[0]

    @property
    def n_cols(self):
        return self.A.shape[1]

    def initial_basis(self):
        """Slack column per row that has one, None where an artificial is needed."""
        basis = [None] * self.n_rows
        for slack in self.slack_meta:
            if slack.sign > 0:
                basis[slack.row] = slack.column
        return basis


def to_standard_form(problem):
    """
    Rows with a negative right-hand side are negated first; a >= row with a
    zero right-hand side is negated into a <= row so it gets a slack.
    """
    A0 = problem.matrix
    b0 = problem.rhs
    k, n = A0.shape

    rows, rhs, signs, relations = [], [], [], []
    for r, row in enumerate(problem.rows):
        a, beta, relation, sign = A0[r].copy(), float(b0[r]), Relation(row.relation), 1.0
        if beta < 0 or (beta == 0 and relation == Relation.GE):
            a, beta, relation, sign = -a, -beta, relation.flipped(), -1.0
        rows.append(a)
        rhs.append(abs(beta))
        signs.append(sign)
        relations.append(relation)

    extra = [r for r, relation in enumerate(relations) if relation != Relation.EQ]
    A = np.zeros((k, n + len(extra)))
    if k:
        A[:, :n] = np.vstack(rows)
    slack_meta = []
    for t, r in enumerate(extra):
        sign = 1.0 if relations[r] == Relation.LE else -1.0
        A[r, n + t] = sign
        slack_meta.append(SlackColumn(n + t, r, sign))

    c = np.zeros(n + len(extra))
    c[:n] = problem.objective
    return StandardLP(
        A=A,
        b=np.array(rhs, dtype=float),
        c=c,
        n_original=n,
        slack_meta=tuple(slack_meta),
        row_sign=np.array(signs),
        needs_artificial=tuple(relation != Relation.LE for relation in relations),
        row_families=tuple(row.family for row in problem.rows),
    )
