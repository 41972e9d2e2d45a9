"""Multiple right-hand sides and frozen-column TLS."""
import numpy as np
import pytest

from tlsfit import (
    DimensionError,
    Matrix,
    Method,
    NoTlsSolutionError,
    PointCloud,
    Vector,
    fit_hyperplane_tls,
    jacobi_svd,
    solve_ols,
    solve_tls_fixed,
    solve_tls_multi,
    solve_tls_system,
)


def fixed_objective(a1, a2, b, x1, x2):
    """Best attainable ||A2-C||^2 + ||B-D||^2 for the given coefficients.

    For fixed (X1, X2) the optimal perturbation projects each residual row
    through (X2^T X2 + I)^{-1}; independent of the solver's route.
    """
    residual = a1 @ x1 + a2 @ x2 - b
    gram = x2.T @ x2 + np.eye(b.shape[1])
    return float(np.trace(residual @ np.linalg.solve(gram, residual.T)))


def noisy_multi(rng, m, n, p, noise):
    a = rng.standard_normal((m, n))
    x0 = rng.standard_normal((n, p))
    b = a @ x0 + noise * rng.standard_normal((m, p))
    return a, x0, b


# ---------------------------------------------------------------------------
# solve_tls_multi


def test_multi_single_rhs_matches_system_solver():
    rng = np.random.default_rng(70)
    for _ in range(10):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(n + 1, n + 10))
        a, _, b = noisy_multi(rng, m, n, 1, noise=1e-3)
        multi = solve_tls_multi(Matrix(a), Matrix(b))
        system = solve_tls_system(Matrix(a), Vector(b[:, 0]))
        np.testing.assert_allclose(multi.x.array[:, 0],
                                   system.coefficients.array,
                                   rtol=1e-9, atol=1e-9)


def test_multi_consistent_system_recovered_exactly():
    rng = np.random.default_rng(71)
    a, x0, b = noisy_multi(rng, 9, 3, 2, noise=0.0)
    sol = solve_tls_multi(Matrix(a), Matrix(b))
    assert np.abs(sol.x.array - x0).max() <= 1e-8
    assert np.abs(sol.sigma.array[3:]).max() <= 1e-12
    assert sol.unique


def test_multi_zero_trailing_block_has_no_solution():
    with pytest.raises(NoTlsSolutionError) as info:
        solve_tls_multi(Matrix([[1, 0], [0, 0], [0, 0]]),
                        Matrix([[1.0], [1.0], [1.0]]))
    null = info.value.null_vector.array
    assert (np.allclose(null, [0.0, 1.0, 0.0], atol=1e-10)
            or np.allclose(null, [0.0, -1.0, 0.0], atol=1e-10))


def test_multi_theorem_annihilation():
    # The nearest system kills the trailing right-singular block:
    # F V12 + G V22 = 0.
    rng = np.random.default_rng(72)
    for _ in range(10):
        a, _, b = noisy_multi(rng, 10, 3, 2, noise=0.3)
        sol = solve_tls_multi(Matrix(a), Matrix(b))
        svd = jacobi_svd(Matrix(np.column_stack([a, b])))
        v12 = svd.v.array[:3, 3:]
        v22 = svd.v.array[3:, 3:]
        e = sol.nearest_system.array
        f, g = e[:, :3], e[:, 3:]
        scale = max(1.0, np.linalg.norm(e))
        assert np.linalg.norm(f @ v12 + g @ v22) <= 1e-9 * scale


def test_multi_solution_invariants():
    rng = np.random.default_rng(73)
    for _ in range(15):
        n = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        m = int(rng.integers(n + p, n + p + 10))
        a, _, b = noisy_multi(rng, m, n, p, noise=0.2)
        sol = solve_tls_multi(Matrix(a), Matrix(b))
        e = sol.nearest_system.array
        f, g = e[:, :n], e[:, n:]
        assert np.linalg.norm(f @ sol.x.array - g) <= \
            1e-8 * max(1.0, np.linalg.norm(e))
        gap2 = np.linalg.norm(np.column_stack([a, b]) - e) ** 2
        tail2 = float(np.sum(sol.sigma.array[n:] ** 2))
        assert gap2 == pytest.approx(tail2, rel=1e-9, abs=1e-18)


def test_multi_tied_spectrum_flags_non_unique():
    a = Matrix([[1.0], [1.0], [0.0], [0.0]])
    b = Matrix([[0.0], [0.0], [1.0], [1.0]])
    sol = solve_tls_multi(a, b)
    assert not sol.unique
    assert np.abs(sol.x.array).max() <= 1e-12


def test_multi_dimension_checks():
    with pytest.raises(DimensionError):
        solve_tls_multi(Matrix.identity(3), Matrix([[1.0], [2.0]]))
    with pytest.raises(DimensionError):
        solve_tls_multi(Matrix.identity(3), Matrix(np.zeros((3, 1))))
    with pytest.raises(DimensionError):
        solve_tls_multi(Matrix(np.ones((3, 2))), Matrix(np.zeros((3, 0))))


# ---------------------------------------------------------------------------
# solve_tls_fixed


def test_fixed_no_frozen_columns_equals_multi():
    rng = np.random.default_rng(74)
    a, _, b = noisy_multi(rng, 9, 2, 1, noise=0.1)
    fixed = solve_tls_fixed(Matrix(np.zeros((9, 0))), Matrix(a), Matrix(b))
    multi = solve_tls_multi(Matrix(a), Matrix(b))
    assert fixed.x1.shape == (0, 1)
    assert np.abs(fixed.x2.array - multi.x.array).max() <= 1e-10
    tail2 = float(np.sum(multi.sigma.array[2:] ** 2))
    assert fixed.minimized_value == pytest.approx(tail2, rel=1e-10)
    assert fixed.x1_unique


def test_fixed_all_frozen_equals_ols():
    rng = np.random.default_rng(75)
    a = rng.standard_normal((8, 3))
    b = rng.standard_normal((8, 1))
    fixed = solve_tls_fixed(Matrix(a), Matrix(np.zeros((8, 0))), Matrix(b))
    ols = solve_ols(Matrix(a), Vector(b[:, 0]), Method.QR)
    assert np.abs(fixed.x1.array[:, 0] - ols.coefficients.array).max() <= 1e-8
    assert fixed.minimized_value == pytest.approx(ols.residual_norm ** 2,
                                                  rel=1e-9)


def test_fixed_frozen_ones_recovers_regression_line():
    rng = np.random.default_rng(76)
    for _ in range(10):
        m = int(rng.integers(5, 30))
        x = rng.standard_normal(m) * 2.0
        y = 1.3 + 0.7 * x + 0.2 * rng.standard_normal(m)
        fit = fit_hyperplane_tls(PointCloud(np.column_stack([x, y])))
        if not (fit.expressible and fit.unique):
            continue
        sol = solve_tls_fixed(
            Matrix(np.ones((m, 1))),
            Matrix(x.reshape(-1, 1)),
            Matrix(y.reshape(-1, 1)))
        line = fit.explicit_coeffs.array
        assert abs(sol.x1[0, 0] - line[0]) <= 1e-8
        assert abs(sol.x2[0, 0] - line[1]) <= 1e-8


def test_fixed_minimized_value_matches_direct_evaluation():
    rng = np.random.default_rng(77)
    for _ in range(10):
        m, j, k, p = 12, 2, 3, 2
        a1 = rng.standard_normal((m, j))
        a2 = rng.standard_normal((m, k))
        b = rng.standard_normal((m, p))
        sol = solve_tls_fixed(Matrix(a1), Matrix(a2), Matrix(b))
        direct = fixed_objective(a1, a2, b, sol.x1.array, sol.x2.array)
        assert sol.minimized_value == pytest.approx(direct, rel=1e-9)


def test_fixed_never_below_fully_free_tls():
    rng = np.random.default_rng(78)
    for _ in range(10):
        m, j, k, p = 11, 2, 2, 1
        a1 = rng.standard_normal((m, j))
        a2 = rng.standard_normal((m, k))
        b = rng.standard_normal((m, p))
        fixed = solve_tls_fixed(Matrix(a1), Matrix(a2), Matrix(b))
        free = solve_tls_multi(Matrix(np.column_stack([a1, a2])), Matrix(b))
        free_value = float(np.sum(free.sigma.array[j + k:] ** 2))
        assert fixed.minimized_value >= free_value - 1e-12


def test_fixed_orthogonal_invariance():
    rng = np.random.default_rng(79)
    m, j, k, p = 10, 1, 2, 1
    a1 = rng.standard_normal((m, j))
    a2 = rng.standard_normal((m, k))
    b = rng.standard_normal((m, p))
    base = solve_tls_fixed(Matrix(a1), Matrix(a2), Matrix(b))
    q = np.linalg.qr(rng.standard_normal((m, m)))[0]
    rotated = solve_tls_fixed(Matrix(q @ a1), Matrix(q @ a2), Matrix(q @ b))
    assert np.abs(rotated.x1.array - base.x1.array).max() <= 1e-8
    assert np.abs(rotated.x2.array - base.x2.array).max() <= 1e-8
    assert rotated.minimized_value == pytest.approx(base.minimized_value,
                                                    rel=1e-9)


def test_fixed_rank_deficient_frozen_block():
    rng = np.random.default_rng(80)
    m, k, p = 12, 2, 1
    column = rng.standard_normal((m, 1))
    a1 = np.column_stack([column, 2.0 * column])  # rank 1, j = 2
    a2 = rng.standard_normal((m, k))
    b = rng.standard_normal((m, p))
    sol = solve_tls_fixed(Matrix(a1), Matrix(a2), Matrix(b))
    assert not sol.x1_unique
    svd1 = jacobi_svd(Matrix(a1))
    v2 = svd1.v.array[:, 1:]  # null-space basis of the frozen block
    # Minimum-norm completion: X1 has no component along the null space.
    assert np.abs(v2.T @ sol.x1.array).max() <= 1e-10
    # The objective does not move along the null space.
    base = fixed_objective(a1, a2, b, sol.x1.array, sol.x2.array)
    assert sol.minimized_value == pytest.approx(base, rel=1e-9)
    for _ in range(5):
        w = rng.standard_normal((1, p))
        shifted = fixed_objective(a1, a2, b,
                                  sol.x1.array + v2 @ w, sol.x2.array)
        assert abs(shifted - base) <= 1e-10 * max(1.0, base)


def test_fixed_propagates_missing_tls_solution():
    with pytest.raises(NoTlsSolutionError):
        solve_tls_fixed(Matrix(np.zeros((3, 0))),
                        Matrix([[1, 0], [0, 0], [0, 0]]),
                        Matrix([[1.0], [1.0], [1.0]]))


def test_fixed_dimension_checks():
    rng = np.random.default_rng(81)
    with pytest.raises(DimensionError):
        solve_tls_fixed(Matrix(np.ones((4, 1))), Matrix(np.ones((5, 1))),
                        Matrix(np.ones((4, 1))))
    with pytest.raises(DimensionError):
        solve_tls_fixed(Matrix(np.ones((3, 1))), Matrix(np.ones((3, 2))),
                        Matrix(np.ones((3, 1))))
