"""Maps between unit spheres: Daher maps, the limit Mazur map, and
empirical modulus-of-continuity / uniformity probes.

All probes are sampling-based: they report evidence about the sampled
grid only, with explicit cutoffs, never a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import interpolation as ip
from . import norms as nm

PROBE_K = 16
PROBE_M = 128


class SphereError(ValueError):
    pass


def daher_map(couple, theta, theta_prime, x, minimal=None, K=ip.DEFAULT_K, M=ip.DEFAULT_M):
    """phi_{theta, theta'}: evaluate the minimal function of x at theta'."""
    if not (0 < theta < 1 and 0 < theta_prime < 1):
        raise SphereError("theta and theta' must lie in (0, 1)")
    x = np.asarray(x, dtype=complex)
    if minimal is None:
        minimal = ip.f2_minimal(couple, theta, x, K=K, M=M)
    return minimal(theta_prime)


@dataclass(frozen=True)
class MazurLimitResult:
    x: np.ndarray
    limit: np.ndarray
    s_values: np.ndarray
    endpoint_norms: np.ndarray  # ||F(s_k)||_1 along the extrapolation points
    gap: float                  # | ||limit||_1 - 1 |
    in_delta: bool
    residual: float


def limit_mazur(couple, theta, x, k_max: int = 6, tol: float = 2e-2,
                K=ip.DEFAULT_K, M=ip.DEFAULT_M) -> MazurLimitResult:
    """Limit Mazur map by Richardson extrapolation of F_x^theta(1 - 2^{-k}).

    In finite dimension weak and norm convergence agree, so the
    extrapolated vector is the boundary limit whenever it exists; growth
    of the extrapolation corrections flags divergence.
    """
    x = np.asarray(x, dtype=complex)
    minimal = ip.f2_minimal(couple, theta, x, K=K, M=M)
    ks = np.arange(2, k_max + 1)
    s_values = 1.0 - 2.0 ** (-ks.astype(float))
    samples = [minimal(float(s)) for s in s_values]
    limit, residual = ip.richardson_limit(samples)
    limit = np.asarray(limit)
    endpoint_norms = np.array([nm.norm_eval(couple.norm1, v) for v in samples])
    gap = abs(nm.norm_eval(couple.norm1, limit) - 1.0)
    diverged = residual > 10.0 * tol
    return MazurLimitResult(
        x=x,
        limit=limit,
        s_values=s_values,
        endpoint_norms=endpoint_norms,
        gap=float(gap),
        in_delta=bool(gap <= tol and not diverged),
        residual=float(residual),
    )


# ---------------------------------------------------------------------------
# Empirical modulus probes


@dataclass(frozen=True)
class ModulusTable:
    label: str
    s: float
    t: float | None
    eps: np.ndarray
    alpha: np.ndarray


@dataclass(frozen=True)
class ModulusReport:
    eps_grid: np.ndarray
    tables: tuple
    n_pairs: int
    seed: int
    verdict: str
    meta: dict = field(default_factory=dict)


def _alpha_table(d_in: np.ndarray, d_out: np.ndarray, eps_grid: np.ndarray) -> np.ndarray:
    """Largest alpha per eps with no sampled violation below it.

    alpha(eps) is the smallest input distance among pairs whose image
    distance reaches eps, capped at the largest observed input distance.
    """
    cap = float(d_in.max())
    alphas = []
    for eps in eps_grid:
        bad = d_in[d_out >= eps]
        alphas.append(float(bad.min()) if bad.size else cap)
    return np.asarray(alphas)


def _sample_sphere(couple, theta, n, rng, K, M):
    g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return g / ip.theta_norm(couple, theta, g, K=K, M=M)


def _sample_pairs(couple, theta, n_pairs, eps_grid, rng, K, M):
    """Unit pairs at distances graded over the eps scales."""
    n = couple.dim
    xs, ys = [], []
    for i in range(n_pairs):
        x = _sample_sphere(couple, theta, n, rng, K, M)
        r = float(eps_grid[i % len(eps_grid)]) * (0.5 + rng.random())
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        y = x + r * g / ip.theta_norm(couple, theta, g, K=K, M=M)
        y = y / ip.theta_norm(couple, theta, y, K=K, M=M)
        xs.append(x)
        ys.append(y)
    return np.array(xs), np.array(ys)


def modulus_probe(couple, theta, theta_prime, n_pairs: int, eps_grid, seed: int,
                  K=PROBE_K, M=PROBE_M, map_fn=None) -> ModulusReport:
    """Empirical (alpha, eps) tables of the Daher map and its inverse direction.

    The inverse direction is probed by swapping theta and theta' (the two
    maps compose to the identity on spheres).  map_fn, when given,
    replaces the solver-backed map; used to compare against closed forms
    under the identical sampler.
    """
    if n_pairs < 100:
        raise SphereError("need at least 100 pairs")
    eps_grid = np.asarray(eps_grid, dtype=float)
    rng = np.random.default_rng(seed)
    tables = []
    for label, (ta, tb) in (("forward", (theta, theta_prime)), ("inverse", (theta_prime, theta))):
        xs, ys = _sample_pairs(couple, ta, n_pairs, eps_grid, rng, K, M)
        d_in = np.array([ip.theta_norm(couple, ta, x - y, K=K, M=M) for x, y in zip(xs, ys)])
        if map_fn is None:
            fx = [daher_map(couple, ta, tb, x, K=K, M=M) for x in xs]
            fy = [daher_map(couple, ta, tb, y, K=K, M=M) for y in ys]
        else:
            fx = [map_fn(ta, tb, x) for x in xs]
            fy = [map_fn(ta, tb, y) for y in ys]
        d_out = np.array([ip.theta_norm(couple, tb, u - v, K=K, M=M) for u, v in zip(fx, fy)])
        tables.append(ModulusTable(label=label, s=float(ta), t=None, eps=eps_grid,
                                   alpha=_alpha_table(d_in, d_out, eps_grid)))
    verdict = "UniformAcrossGrid" if all((t.alpha > 0).all() for t in tables) else "Inconclusive"
    return ModulusReport(
        eps_grid=eps_grid,
        tables=tuple(tables),
        n_pairs=n_pairs,
        seed=seed,
        verdict=verdict,
        meta={"theta": float(theta), "theta_prime": float(theta_prime)},
    )


def uniformity_probe(couple, eps_grid, s_grid, t_grid, n_pairs: int, seed: int,
                     K=PROBE_K, M=PROBE_M, spread_factor: float = 2.0) -> ModulusReport:
    """Empirical uniformity of the vertical maps phi_s^t across a grid.

    One minimal-function solve per sampled point, evaluated at every t.
    Verdict: UniformAcrossGrid when for each eps the alpha values spread
    by less than spread_factor across the grid; Degrading when alpha
    decays monotonically towards s = 1 for some eps; else Inconclusive.
    The verdict describes the sampled grid only.
    """
    eps_grid = np.asarray(eps_grid, dtype=float)
    s_grid = np.asarray(s_grid, dtype=float)
    t_grid = np.asarray(t_grid, dtype=float)
    rng = np.random.default_rng(seed)
    tables = []
    for s in s_grid:
        xs, ys = _sample_pairs(couple, float(s), n_pairs, eps_grid, rng, K, M)
        d_in = np.array([ip.theta_norm(couple, float(s), x - y, K=K, M=M) for x, y in zip(xs, ys)])
        mx = [ip.f2_minimal(couple, float(s), x, K=K, M=M) for x in xs]
        my = [ip.f2_minimal(couple, float(s), y, K=K, M=M) for y in ys]
        for t in t_grid:
            z = float(s) + 1j * float(t)
            d_out = np.array([
                ip.theta_norm(couple, float(s), fx(z) - fy(z), K=K, M=M)
                for fx, fy in zip(mx, my)
            ])
            tables.append(ModulusTable(label=f"s={s:g},t={t:g}", s=float(s), t=float(t),
                                       eps=eps_grid, alpha=_alpha_table(d_in, d_out, eps_grid)))

    verdict = "UniformAcrossGrid"
    for j in range(len(eps_grid)):
        alphas = np.array([tb.alpha[j] for tb in tables])
        if alphas.min() <= 0 or alphas.max() / alphas.min() >= spread_factor:
            verdict = "Inconclusive"
            break
    if verdict == "Inconclusive":
        for j in range(len(eps_grid)):
            # alpha per s, worst case over t
            per_s = np.array([
                min(tb.alpha[j] for tb in tables if tb.s == s) for s in s_grid
            ])
            if (np.diff(per_s) <= 1e-15).all() and per_s[0] > 0 and per_s[-1] < per_s[0] / spread_factor:
                verdict = "Degrading"
                break
    return ModulusReport(
        eps_grid=eps_grid,
        tables=tuple(tables),
        n_pairs=n_pairs,
        seed=seed,
        verdict=verdict,
        meta={"s_grid": s_grid.tolist(), "t_grid": t_grid.tolist()},
    )
