"""Dense two-phase simplex for small equality-form linear programs.

Solves min c.x subject to A x = b, x >= 0 on problems with a handful of
rows and up to a few thousand columns, which is all the correlation
polytopes need.  Bland's rule keeps the pivoting cycle-free.  When the
program is infeasible the phase-1 dual vector is returned as a Farkas
certificate: y.A <= 0 columnwise while y.b > 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpNumericalFailure

PIVOT_TOL = 1e-9
RATIO_TIE_TOL = 1e-12
MAX_ITER = 20000


@dataclass(frozen=True, eq=False)
class LpOutcome:
    feasible: bool
    x: np.ndarray | None = None
    objective: float | None = None
    farkas: np.ndarray | None = None


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]
    basis[row] = col


def _iterate(tableau: np.ndarray, basis: list[int], n_enter: int) -> None:
    """Run simplex pivots in place until the objective row is optimal.

    Only the first n_enter columns may enter the basis; the objective row
    is the last row, the right-hand side the last column.
    """
    m = tableau.shape[0] - 1
    for _ in range(MAX_ITER):
        obj = tableau[m, :n_enter]
        entering = np.flatnonzero(obj < -PIVOT_TOL)
        if entering.size == 0:
            return
        col = int(entering[0])  # Bland: smallest eligible index
        column = tableau[:m, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            raise LpNumericalFailure("simplex pivot column is unbounded")
        ratios = tableau[rows, -1] / column[rows]
        tied = rows[ratios <= ratios.min() + RATIO_TIE_TOL]
        row = int(tied[np.argmin([basis[i] for i in tied])])
        _pivot(tableau, basis, row, col)
    raise LpNumericalFailure("simplex iteration limit reached")


def solve_equality_lp(A, b, c=None, feas_tol: float = 1e-8) -> LpOutcome:
    """Two-phase simplex on min c.x, A x = b, x >= 0.

    With c omitted only feasibility is decided.  feas_tol is the phase-1
    threshold below which the artificial residue counts as zero.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).reshape(-1)
    m, n = A.shape
    if b.shape != (m,):
        raise ValueError("A and b have incompatible shapes")

    flip = b < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)

    # phase 1: artificial basis, cost 1 on each artificial
    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = A
    tableau[:m, n : n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[m, :n] = -A.sum(axis=0)
    tableau[m, -1] = -b.sum()
    basis = list(range(n, n + m))
    _iterate(tableau, basis, n_enter=n + m)

    residue = -float(tableau[m, -1])
    if residue > feas_tol:
        # dual of phase 1, read off the artificial reduced costs
        y = 1.0 - tableau[m, n : n + m]
        y = np.where(flip, -y, y)
        return LpOutcome(feasible=False, farkas=y)

    if c is None:
        return LpOutcome(feasible=True, x=_extract(tableau, basis, n))

    # drive zero-valued artificial basics onto original columns so phase 2
    # cannot regrow them; rows with no original pivot are redundant
    for row in range(m):
        if basis[row] >= n:
            candidates = np.flatnonzero(np.abs(tableau[row, :n]) > PIVOT_TOL)
            if candidates.size:
                _pivot(tableau, basis, row, int(candidates[0]))

    # phase 2: rebuild the objective row from c, artificials barred from entering
    c = np.asarray(c, dtype=float).reshape(n)
    cost = np.concatenate([c, np.zeros(m)])
    basic_cost = cost[basis]
    tableau[m, :-1] = cost - basic_cost @ tableau[:m, :-1]
    tableau[m, -1] = -float(basic_cost @ tableau[:m, -1])
    _iterate(tableau, basis, n_enter=n)
    x = _extract(tableau, basis, n)
    return LpOutcome(feasible=True, x=x, objective=float(c @ x))


def _extract(tableau: np.ndarray, basis: list[int], n: int) -> np.ndarray:
    x = np.zeros(n)
    for row, col in enumerate(basis):
        if col < n:
            x[col] = tableau[row, -1]
    if x.min(initial=0.0) < -1e-7:
        raise LpNumericalFailure("simplex produced a negative basic value")
    np.clip(x, 0.0, None, out=x)
    return x
