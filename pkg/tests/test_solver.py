"""Smooth minimization, minimax ladder, Newton polish, gradient checks."""

import numpy as np
import pytest

from interplab import solver as sv


def quadratic_fg(A, b):
    def fg(x):
        return 0.5 * float(x @ A @ x) - float(b @ x), A @ x - b
    return fg


def test_minimize_smooth_solves_quadratic():
    rng = np.random.default_rng(0)
    B = rng.standard_normal((6, 6))
    A = B @ B.T + np.eye(6)
    b = rng.standard_normal(6)
    x, report = sv.minimize_smooth(quadratic_fg(A, b), np.zeros(6), tol=1e-10)
    assert report.converged
    assert np.allclose(x, np.linalg.solve(A, b), atol=1e-7)


def test_minimize_smooth_rejects_bad_inputs():
    with pytest.raises(sv.SolverError):
        sv.minimize_smooth(lambda x: (float(x @ x), 2 * x), np.zeros(2), tol=0.0)
    with pytest.raises(sv.SolverError):
        sv.minimize_smooth(lambda x: (np.nan, x), np.zeros(2))


def test_minimize_smooth_deterministic():
    rng = np.random.default_rng(1)
    A = np.diag(rng.uniform(1, 10, 4))
    b = rng.standard_normal(4)
    x1, _ = sv.minimize_smooth(quadratic_fg(A, b), np.ones(4))
    x2, _ = sv.minimize_smooth(quadratic_fg(A, b), np.ones(4))
    assert np.array_equal(x1, x2)


def test_minimax_max_of_linear_functions():
    # min over x of max(x, -x, x - 1) = min max(|x|, x-1) -> 0 at x = 0
    def node_values(x):
        return np.array([x[0], -x[0], x[0] - 1.0])

    def node_weighted_grad(x, lam):
        return np.array([lam[0] - lam[1] + lam[2]])

    x, report = sv.minimize_minimax(node_values, node_weighted_grad, np.array([0.7]))
    assert abs(x[0]) <= 1e-6
    assert report.objective == pytest.approx(0.0, abs=1e-6)


def test_minimax_abs_max_in_two_dims():
    # max_i |x_i - c_i| over smooth surrogate nodes +-(x - c)
    c = np.array([0.3, -1.2])

    def node_values(x):
        return np.concatenate([x - c, c - x])

    def node_weighted_grad(x, lam):
        return lam[:2] - lam[2:]

    x, _ = sv.minimize_minimax(node_values, node_weighted_grad, np.zeros(2))
    assert np.allclose(x, c, atol=1e-6)


def test_newton_polish_on_quadratic():
    rng = np.random.default_rng(2)
    B = rng.standard_normal((5, 5))
    A = B @ B.T + 0.5 * np.eye(5)
    b = rng.standard_normal(5)
    fg = quadratic_fg(A, b)
    u, it, gn = sv._newton_polish(fg, lambda u: A, np.zeros(5), gtol=1e-10)
    assert gn <= 1e-10
    assert it <= 3
    assert np.allclose(u, np.linalg.solve(A, b), atol=1e-10)


def test_check_gradient_flags_wrong_gradient():
    good = lambda x: (float(x @ x), 2 * x)
    bad = lambda x: (float(x @ x), 2 * x + 0.1)
    x = np.array([0.4, -1.1])
    assert sv.check_gradient(good, x) <= 1e-8
    assert sv.check_gradient(bad, x) > 1e-3


def test_solve_report_records_seed():
    _, report = sv.minimize_smooth(lambda x: (float(x @ x), 2 * x), np.ones(3), seed=17)
    assert report.seed == 17
    assert report.converged
