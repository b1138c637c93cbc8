"""Classical hidden-variable bounds for bilinear spin correlation inequalities.

The inequality sum_kl c_kl <S_k S_l> >= beta is bounded from below, over
deterministic assignments, by the discrete minimum of a . C . b.  Party B
is scanned explicitly; for the unconstrained party A the inner minimum is
the closed form -s * sum_k |(C b)_k|.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .assignments import Assignment, enumerate_constrained, enumerate_unconstrained
from .errors import InfeasibleSpin, NonFiniteMatrix
from .number_theory import SpinValue

# resolution at which minima are considered tied
TIE_TOL = 1e-12
ROTATION_TOL = 1e-12
WITNESS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    """Real 3x3 matrix of inequality coefficients, rows/columns in x, y, z order."""

    entries: np.ndarray
    is_rotation: bool = field(init=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NonFiniteMatrix("coefficient matrix has non-finite entries")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        orthogonal = float(np.max(np.abs(m.T @ m - np.eye(3)))) <= ROTATION_TOL
        unit_det = abs(float(np.linalg.det(m)) - 1.0) <= ROTATION_TOL
        object.__setattr__(self, "is_rotation", orthogonal and unit_det)


def as_coefficient_matrix(C) -> CoefficientMatrix:
    if isinstance(C, CoefficientMatrix):
        return C
    return CoefficientMatrix(np.asarray(C, dtype=float))


@dataclass(frozen=True)
class BoundsReport:
    """Both classical bounds with their minimizing assignment pairs.

    beta_constrained is None (and constrained_infeasible is True) when no
    magnitude-conserving assignment exists for the spin, in which case the
    inequality refutes the conserving model state-independently.
    """

    beta_constrained: float | None
    beta_unconstrained: float
    witness_constrained: tuple[Assignment, Assignment] | None
    witness_unconstrained: tuple[Assignment, Assignment]
    constrained_infeasible: bool = False


def _values(assignments: Sequence[Assignment]) -> np.ndarray:
    return np.array([a.doubled for a in assignments], dtype=float) / 2.0


def _chunked_rows(mat: np.ndarray, right: np.ndarray, threads: int) -> np.ndarray:
    """mat @ right computed in row blocks, optionally across worker threads.

    Workers each produce a contiguous block; concatenation makes the result
    identical to the single-threaded product regardless of thread count.
    """
    if threads <= 1 or len(mat) < 1024:
        return mat @ right
    blocks = np.array_split(mat, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda block: block @ right, blocks))
    return np.vstack(parts)


def _select_pair(values: np.ndarray) -> tuple[float, int, int]:
    """Minimum of a (na, nb) value table with the tie-broken argmin.

    Ties within TIE_TOL of the minimum are resolved to the smallest b index,
    then the smallest a index, matching the scan order of the evaluation.
    """
    best = float(values.min())
    ii, jj = np.nonzero(values <= best + TIE_TOL)
    k = int(np.lexsort((ii, jj))[0])
    return best, int(ii[k]), int(jj[k])


def classical_bound(
    C, s: SpinValue, constrained: bool, threads: int = 1
) -> tuple[float, tuple[Assignment, Assignment]]:
    """Discrete minimum of a . C . b over one party's assignment set squared.

    Returns the bound and a minimizing (a, b) pair; among ties the pair
    with the smallest b, then smallest a, in component order.
    Raises InfeasibleSpin when constrained and the conserving set is empty.
    """
    cm = as_coefficient_matrix(C)
    if s.doubled < 1:
        raise ValueError("spin magnitude must be positive")
    if constrained:
        return _bound_constrained(cm, s, threads)
    return _bound_unconstrained(cm, s, threads)


def _bound_constrained(cm, s, threads):
    aset = enumerate_constrained(s)
    if not aset:
        raise InfeasibleSpin(f"no magnitude-conserving assignments exist for s = {s}")
    avals = _values(aset)
    table = _chunked_rows(avals, cm.entries @ avals.T, threads)
    best, i, j = _select_pair(table)
    return best, (aset[i], aset[j])


def _bound_unconstrained(cm, s, threads):
    bset = enumerate_unconstrained(s)
    bvals = _values(bset)
    rows = _chunked_rows(bvals, cm.entries.T, threads)  # row j = C b_j
    inner = -(s.doubled / 2.0) * np.abs(rows).sum(axis=1)
    best = float(inner.min())
    j = int(np.nonzero(inner <= best + TIE_TOL)[0][0])
    # componentwise argmin for party A; near-zero components tie, and the
    # smallest spectrum value -s wins the tie
    a_doubled = tuple(-s.doubled if v >= -TIE_TOL else s.doubled for v in rows[j])
    a = Assignment(*(SpinValue(d) for d in a_doubled))
    return best, (a, bset[j])


def classical_bound_bruteforce(
    C, s: SpinValue, constrained: bool
) -> tuple[float, tuple[Assignment, Assignment]]:
    """Reference double loop over the explicit pair set.

    Ground truth for the reduced evaluation in classical_bound; quadratic
    in the assignment count, so only for moderate s.
    """
    cm = as_coefficient_matrix(C)
    if s.doubled < 1:
        raise ValueError("spin magnitude must be positive")
    aset = enumerate_constrained(s) if constrained else enumerate_unconstrained(s)
    if not aset:
        raise InfeasibleSpin(f"no magnitude-conserving assignments exist for s = {s}")
    avals = _values(aset)
    table = avals @ cm.entries @ avals.T
    best, i, j = _select_pair(table)
    return best, (aset[i], aset[j])


def _witness_value(cm: CoefficientMatrix, pair: tuple[Assignment, Assignment]) -> float:
    a, b = pair
    av = np.array(a.doubled, dtype=float) / 2.0
    bv = np.array(b.doubled, dtype=float) / 2.0
    return float(av @ cm.entries @ bv)


def bounds_report(C, s: SpinValue, threads: int = 1) -> BoundsReport:
    """Both classical bounds for one matrix and spin."""
    cm = as_coefficient_matrix(C)
    beta_bar, w_bar = classical_bound(cm, s, constrained=False, threads=threads)
    if abs(_witness_value(cm, w_bar) - beta_bar) > WITNESS_TOL:
        raise RuntimeError("witness does not reproduce its bound")
    try:
        beta, w = classical_bound(cm, s, constrained=True, threads=threads)
    except InfeasibleSpin:
        return BoundsReport(None, beta_bar, None, w_bar, constrained_infeasible=True)
    if abs(_witness_value(cm, w) - beta) > WITNESS_TOL:
        raise RuntimeError("witness does not reproduce its bound")
    if beta < beta_bar - WITNESS_TOL:
        raise RuntimeError("constrained bound undercuts the unconstrained one")
    return BoundsReport(beta, beta_bar, w, w_bar)
