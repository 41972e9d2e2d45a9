"""Numerical thresholds shared across the solver modules.

All comparisons against singular values are relative to the largest one,
so the solvers behave the same under a global rescaling of the data.
"""

# A singular value s_i counts as zero iff s_i <= RANK_REL_TOL * s_1.
RANK_REL_TOL = 1e-12

# s_k and s_{k+1} count as a tie iff s_k - s_{k+1} <= GAP_TOL * max(s_1, 1).
GAP_TOL = 1e-10

# Smallest magnitude of a trailing normal/null-vector component that still
# permits renormalization to an explicit solution.
EXISTENCE_TOL = 1e-10
EXPRESSIBILITY_TOL = 1e-10

# One-sided Jacobi sweep control: a column pair (i, j) counts as orthogonal
# iff |a_i . a_j| <= JACOBI_OFFDIAG_TOL * ||a_i|| * ||a_j||.
JACOBI_OFFDIAG_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60

# Cholesky pivot below CHOLESKY_PD_TOL * max(diag) means "not positive
# definite" when solving normal equations.
CHOLESKY_PD_TOL = 1e-12
