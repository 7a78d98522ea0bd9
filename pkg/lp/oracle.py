"""Brute-force vertex enumeration, used to cross-check the simplex on small programs."""
from itertools import combinations
import logging

import numpy as np

from core.exceptions import TooLarge

from .simplex import LPSolution, LPStatus

logger = logging.getLogger(__name__)

MAX_DIMENSION = 12


def _independent_rows(A, b):
    rows = []
    for r in range(A.shape[0]):
        if np.linalg.matrix_rank(A[rows + [r]]) > len(rows):
            rows.append(r)
    return A[rows], b[rows]


def vertex_oracle(slp, tol=1e-9):
    """
    Solve a StandardLP by trying every basis.

    Raises TooLarge beyond MAX_DIMENSION rows or columns.
    """
    k, n = slp.A.shape
    if n > MAX_DIMENSION or k > MAX_DIMENSION:
        raise TooLarge(f"vertex enumeration is limited to {MAX_DIMENSION} rows and columns, got {k}x{n}")

    A, b, c = slp.A, slp.b, slp.c
    if k:
        if np.linalg.matrix_rank(np.column_stack([A, b])) > np.linalg.matrix_rank(A):
            return LPSolution(LPStatus.INFEASIBLE)
        A, b = _independent_rows(A, b)
    rank = A.shape[0]

    best, best_value, feasible = None, None, []
    for cols in combinations(range(n), rank):
        cols = list(cols)
        B = A[:, cols]
        if rank:
            if np.linalg.matrix_rank(B) < rank:
                continue
            xb = np.linalg.solve(B, b)
        else:
            xb = np.zeros(0)
        if (xb < -tol).any():
            continue
        x = np.zeros(n)
        x[cols] = np.maximum(xb, 0.0)
        value = float(c @ x)
        feasible.append((cols, B))
        if best is None or value < best_value - 1e-12:
            best, best_value = x, value

    if best is None:
        return LPSolution(LPStatus.INFEASIBLE)

    for cols, B in feasible:
        y = np.linalg.solve(B.T, c[cols]) if rank else np.zeros(0)
        for j in range(n):
            if j in cols:
                continue
            reduced = c[j] - y @ A[:, j]
            direction = np.linalg.solve(B, A[:, j]) if rank else np.zeros(0)
            if reduced < -tol and (direction <= tol).all():
                logger.debug(f"Oracle found an unbounded ray along column {j}")
                return LPSolution(LPStatus.UNBOUNDED)

    return LPSolution(LPStatus.OPTIMAL, x=best[:slp.n_original].copy(), objective=best_value)
