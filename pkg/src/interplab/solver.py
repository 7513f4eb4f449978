"""Smooth convex minimization and minimax engine over coefficient vectors.

Thin deterministic wrapper around L-BFGS with a softmax smoothing ladder
for minimax problems.  All objectives in this package are convex in the
boundary values, so local minima are global up to discretization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp, softmax


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class SolveReport:
    objective: float
    iterations: int
    grad_norm: float
    converged: bool
    seed: int = 0


def minimize_smooth(fun_grad, init, tol: float = 1e-9, max_iter: int = 2000, seed: int = 0):
    """Minimize a differentiable functional; fun_grad(x) -> (value, grad).

    Returns (x, SolveReport).  Deterministic given (init, seed); converged
    means the final infinity-norm of the gradient is <= tol.
    """
    if tol <= 0:
        raise SolverError("tol must be positive")
    x0 = np.asarray(init, dtype=float)
    f0, _ = fun_grad(x0)
    if not np.isfinite(f0):
        raise SolverError(f"objective not finite at init: {f0}")
    res = minimize(
        fun_grad,
        x0,
        jac=True,
        method="L-BFGS-B",
        options={"maxiter": max_iter, "gtol": tol, "ftol": 1e-18, "maxcor": 20},
    )
    gnorm = float(np.linalg.norm(res.jac, np.inf)) if res.jac is not None else np.inf
    report = SolveReport(
        objective=float(res.fun),
        iterations=int(res.nit),
        grad_norm=gnorm,
        converged=bool(gnorm <= tol),
        seed=seed,
    )
    return res.x, report


def _newton_polish(fg, hess_dense, u, gtol: float, max_newton: int = 60):
    """Levenberg-damped Newton with an exact dense Hessian at every step.

    fg(u) -> (value, gradient); hess_dense(u) -> the full Hessian matrix.
    The damping parameter absorbs the strongly non-quadratic transient
    (near-l_1 norms); the structured assembly makes a rebuild cost about
    one factorization, so the Hessian is refreshed after every accepted
    step and only reused across rejected ones, where the base point is
    unchanged.  Returns (u, iterations, grad_norm).
    """
    from scipy.linalg import cho_factor, cho_solve

    H = None
    mu = 0.0
    eye = np.eye(u.size)
    f, g = fg(u)
    gn = float(np.abs(g).max())
    it = 0
    for it in range(1, max_newton + 1):
        if gn <= gtol:
            break
        if H is None:
            H = hess_dense(u)
        scale_h = max(1.0, float(np.abs(np.diag(H)).max()))
        try:
            factor = cho_factor(H + (mu + 1e-12 * scale_h) * eye, lower=True)
        except np.linalg.LinAlgError:
            mu = max(4.0 * mu, 1e-8 * scale_h)
            continue
        step = cho_solve(factor, -g)
        predicted = -float(g @ step) - 0.5 * float(step @ (H @ step))
        f2, g2 = fg(u + step)
        if not np.isfinite(f2) or f2 > f or predicted <= 0:
            mu = max(10.0 * mu, 1e-8 * scale_h)
            continue
        ratio = (f - f2) / predicted
        u = u + step
        f, g = f2, g2
        gn = float(np.abs(g).max())
        H = None
        if ratio < 0.25:
            mu = max(4.0 * mu, 1e-8 * scale_h)
        elif ratio > 0.75:
            mu /= 3.0
            if mu < 1e-10 * scale_h:
                mu = 0.0
    return u, it, gn


def minimize_minimax(
    node_values,
    node_weighted_grad,
    init,
    tol: float = 1e-9,
    max_iter: int = 2000,
    tau0: float = 1.0,
    n_halvings: int = 8,
    seed: int = 0,
    taus=None,
    hess_dense=None,
    newton_gtol: float = 1e-4,
    stage_values: list | None = None,
):
    """Minimize max_m v_m(x) through a softmax smoothing ladder.

    node_values(x) returns the vector of node values; node_weighted_grad
    (x, lam) returns sum_m lam_m grad v_m(x).  Temperatures are halved
    n_halvings times from tau0 (or taken from taus when given); the
    reported objective is the true (unsmoothed) maximum at the final
    point.  When hess_dense(x, tau) is supplied, each stage is polished
    by damped Newton steps to gradient norm newton_gtol, which keeps the
    small-temperature stages cheap; stage_values, when given, collects
    (tau, true max) after every stage for smoothing-bias extrapolation.
    """
    x = np.asarray(init, dtype=float)
    if taus is None:
        taus = [tau0 * 0.5**k for k in range(n_halvings + 1)]
    total_iters = 0
    gnorm = np.inf
    for tau in taus:

        def fg(u, tau=tau):
            v = node_values(u)
            val = tau * logsumexp(v / tau)
            lam = softmax(v / tau)
            return float(val), node_weighted_grad(u, lam)

        if hess_dense is None:
            x, report = minimize_smooth(fg, x, tol=tol, max_iter=max_iter, seed=seed)
            total_iters += report.iterations
            gnorm = report.grad_norm
        else:
            res = minimize(
                fg,
                x,
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": 250, "gtol": 1e-4, "ftol": 1e-16, "maxcor": 12},
            )
            x = res.x
            total_iters += int(res.nit)
            gnorm = float(np.abs(res.jac).max())
            if gnorm > newton_gtol:
                x, nit, gnorm = _newton_polish(
                    fg, lambda u, tau=tau: hess_dense(u, tau), x, gtol=newton_gtol
                )
                total_iters += nit
        if stage_values is not None:
            stage_values.append((float(tau), float(np.max(node_values(x)))))
    true_max = float(np.max(node_values(x)))
    eff_tol = tol if hess_dense is None else newton_gtol
    final = SolveReport(
        objective=true_max,
        iterations=total_iters,
        grad_norm=gnorm,
        converged=bool(gnorm <= eff_tol),
        seed=seed,
    )
    return x, final


def check_gradient(fun_grad, x, h: float = 1e-6) -> float:
    """Max relative error of the analytic gradient vs central differences."""
    x = np.asarray(x, dtype=float)
    _, g = fun_grad(x)
    g = np.asarray(g, dtype=float)
    num = np.empty_like(g)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        fp, _ = fun_grad(x + e)
        fm, _ = fun_grad(x - e)
        num[i] = (fp - fm) / (2.0 * h)
    scale = max(1.0, float(np.linalg.norm(g, np.inf)))
    return float(np.linalg.norm(g - num, np.inf) / scale)
