"""Dense real linear algebra: Gauss-Jordan with partial pivoting.

Solves possibly over- or under-determined systems, returning any solution
with free variables set to 0, and computes numerical rank under a relative
pivot tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Inconsistent

# Pivot below pivot_tol * max|original entry| counts as zero; an eliminated
# row is inconsistent when its residual rhs exceeds RESIDUAL_RTOL * (1 + max|rhs|).
DEFAULT_PIVOT_TOL = 1e-9
RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True)
class RealSystem:
    """A dense real augmented system with a pivot tolerance."""

    matrix: np.ndarray
    rhs: np.ndarray
    pivot_tol: float = DEFAULT_PIVOT_TOL

    def __post_init__(self) -> None:
        a = np.array(self.matrix, dtype=np.float64)
        b = np.array(self.rhs, dtype=np.float64)
        if a.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        if b.shape != (a.shape[0],):
            raise ValueError("rhs length must equal the row count")
        if not self.pivot_tol > 0:
            raise ValueError("pivot_tol must be positive")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "rhs", b)


def _forward_eliminate(
    a: np.ndarray, b: np.ndarray | None, pivot_tol: float
) -> list[tuple[int, int]]:
    """Eliminate below each pivot in place; returns (row, col) pivots.

    Pivot rows are normalized to a unit pivot.  Updates touch only the
    trailing column block, which is safe because every earlier column is
    either a zeroed pivot column or a skipped column whose entries are never
    read by the solver.
    """
    nrows, ncols = a.shape
    scale = float(np.abs(a).max()) if a.size else 0.0
    thresh = pivot_tol * scale
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        p = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[p, col]) <= thresh:
            continue
        if p != row:
            a[[row, p]] = a[[p, row]]
            if b is not None:
                b[[row, p]] = b[[p, row]]
        pv = a[row, col]
        a[row, col:] /= pv
        a[row, col] = 1.0
        if b is not None:
            b[row] /= pv
        factors = a[row + 1 :, col].copy()
        a[row + 1 :, col:] -= np.outer(factors, a[row, col:])
        a[row + 1 :, col] = 0.0
        if b is not None:
            b[row + 1 :] -= factors * b[row]
        pivots.append((row, col))
        row += 1
    return pivots


def real_solve(sys: RealSystem) -> np.ndarray:
    """Any solution of the system; free variables are set to 0.

    Raises Inconsistent when an eliminated row keeps a residual rhs above
    RESIDUAL_RTOL * (1 + max|rhs|).
    """
    a = sys.matrix.copy()
    b = sys.rhs.copy()
    pivots = _forward_eliminate(a, b, sys.pivot_tol)
    rhs_scale = float(np.abs(sys.rhs).max()) if sys.rhs.size else 0.0
    limit = RESIDUAL_RTOL * (1.0 + rhs_scale)
    for r in range(len(pivots), a.shape[0]):
        if abs(b[r]) > limit:
            raise Inconsistent(f"residual {b[r]:.3e} exceeds {limit:.3e}")
    y = np.zeros(a.shape[1])
    # Back-substitution over pivot rows; free coordinates stay 0, and pivot
    # coordinates left of c are still 0 when row (r, c) is processed.
    for r, c in reversed(pivots):
        y[c] = b[r] - float(a[r, c + 1 :] @ y[c + 1 :])
    return y


def real_rank(matrix: np.ndarray, pivot_tol: float = DEFAULT_PIVOT_TOL) -> int:
    """Numerical rank under the given relative pivot tolerance."""
    if not pivot_tol > 0:
        raise ValueError("pivot_tol must be positive")
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return len(_forward_eliminate(a, None, pivot_tol))
