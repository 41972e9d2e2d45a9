"""TLS generalizations: several right-hand sides and frozen columns.

With p right-hand sides the SVD of (A | B) is partitioned after column n;
the solution is X = -V12 V22^{-1} when the trailing p x p block V22 is
invertible, and the rank-n truncation is the nearest solvable system.

With frozen columns the system matrix splits into an error-free block A1
and an uncertain block A2.  The solve orthogonalizes A2 and B against
A1 (QR when A1 has full column rank, SVD otherwise), solves the reduced
TLS problem in the orthogonal complement, and back-substitutes for the
frozen-block coefficients.  Ordinary least squares is the special case
of freezing every column.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NoTlsSolutionError
from .linalg import (
    Matrix,
    Vector,
    _householder_qr_arrays,
    jacobi_svd,
    truncate_rank,
)
from .ols import _solve_upper
from .tolerances import EXISTENCE_TOL, GAP_TOL

__all__ = [
    "MultiRhsSolution",
    "FixedColsSolution",
    "solve_tls_multi",
    "solve_tls_fixed",
]


@dataclass(frozen=True)
class MultiRhsSolution:
    """Solution X of A X = B in the TLS sense, plus the nearest system."""

    x: Matrix
    nearest_system: Matrix
    sigma: Vector
    unique: bool


@dataclass(frozen=True)
class FixedColsSolution:
    """Coefficients (X1; X2) of A1 X1 + A2 X2 = B with A1 kept exact.

    ``minimized_value`` is the attained value of
    ||A2 - C||_F^2 + ||B - D||_F^2.  When the frozen block is
    rank-deficient, X1 is the minimum-norm representative and
    ``x1_unique`` is False.
    """

    x1: Matrix
    x2: Matrix
    minimized_value: float
    x1_unique: bool


def solve_tls_multi(a: Matrix, b: Matrix) -> MultiRhsSolution:
    """Solve A X = B with p right-hand sides in the TLS sense.

    Requires m >= n + p.  Raises NoTlsSolutionError when the trailing
    block V22 of the right singular matrix is numerically singular; a
    tied singular-value gap at the partition is reported via
    ``unique=False``.
    """
    m, n = a.rows, a.cols
    p = b.cols
    if b.rows != m:
        raise DimensionError(
            f"solve_tls_multi: B has {b.rows} rows, expected {m}")
    if p < 1:
        raise DimensionError("solve_tls_multi: B needs at least one column")
    if m < n + p:
        raise DimensionError(
            f"solve_tls_multi: need rows >= cols(A) + cols(B), "
            f"got {m} < {n} + {p}")
    svd = jacobi_svd(Matrix(np.column_stack([a.array, b.array])))
    s = svd.sigma.array
    v = svd.v.array
    v12 = v[:n, n:]
    v22 = v[n:, n:]
    sub = jacobi_svd(Matrix(v22))
    s22 = sub.sigma.array
    if s22[p - 1] <= EXISTENCE_TOL:
        raise NoTlsSolutionError(
            "no TLS solution: the trailing block of the right singular "
            f"matrix is singular (smallest singular value {s22[p - 1]:.3e})",
            null_vector=Vector(v[:, n:] @ sub.v.array[:, p - 1]),
            sigma=svd.sigma,
        )
    inv22 = (sub.v.array / s22) @ sub.u.array.T
    unique = True if n == 0 else bool(
        (s[n - 1] - s[n]) > GAP_TOL * max(s[0], 1.0))
    return MultiRhsSolution(
        x=Matrix(-v12 @ inv22),
        nearest_system=truncate_rank(svd, n),
        sigma=svd.sigma,
        unique=unique,
    )


def solve_tls_fixed(a1: Matrix, a2: Matrix, b: Matrix) -> FixedColsSolution:
    """Solve A1 X1 + A2 X2 = B perturbing only A2 and B.

    The frozen block A1 may be empty (plain multi-RHS TLS) or cover all
    columns (ordinary least squares).  A rank-deficient frozen block
    leaves X1 underdetermined; the returned X1 has no component in the
    null space of A1 and ``x1_unique`` is False.
    """
    m = b.rows
    j, k, p = a1.cols, a2.cols, b.cols
    if a1.rows != m or a2.rows != m:
        raise DimensionError(
            f"solve_tls_fixed: row counts differ "
            f"({a1.rows}, {a2.rows}, {m})")
    if m < j + k + p:
        raise DimensionError(
            f"solve_tls_fixed: need rows >= {j} + {k} + {p}, got {m}")
    svd1 = jacobi_svd(a1)
    r = svd1.rank
    if r == j:
        # Full-rank frozen block: orthogonalize via QR.
        u, r_full = _householder_qr_arrays(a1.array)
        r1 = r_full[:j, :j]
        split = j
    else:
        u = svd1.u.array
        split = r
    ta2 = u.T @ a2.array
    tb = u.T @ b.array
    a12, a22 = ta2[:split], ta2[split:]
    b1, b2 = tb[:split], tb[split:]
    reduced = solve_tls_multi(Matrix(a22), Matrix(b2))
    x2 = reduced.x.array
    rhs1 = b1 - a12 @ x2
    if r == j:
        x1 = _solve_upper(r1, rhs1)
    else:
        # S1 V1^T X1 = rhs1; complete X1 minimum-norm (nothing along V2).
        v1 = svd1.v.array[:, :r]
        x1 = v1 @ (rhs1 / svd1.sigma.array[:r, None])
    # Reconstruct the perturbed blocks C, D and evaluate the objective.
    c2d2 = reduced.nearest_system.array
    c = u @ np.vstack([a12, c2d2[:, :k]])
    d = u @ np.vstack([b1, c2d2[:, k:]])
    minimized = (np.linalg.norm(a2.array - c, "fro") ** 2
                 + np.linalg.norm(b.array - d, "fro") ** 2)
    return FixedColsSolution(
        x1=Matrix(x1),
        x2=Matrix(x2),
        minimized_value=float(minimized),
        x1_unique=bool(r == j),
    )
