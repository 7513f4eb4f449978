"""Closed-form ground truth for diagonal l_p couples and brute-force references.

For the couple (l_p0, l_p1) with unit weights the interpolation space at
theta is l_{p_theta} with 1/p_theta = (1 - theta)/p0 + theta/p1, the
minimal function of a unit vector is coordinatewise
sgn(x) |x|^{p_theta / p(z)} (with sgn(0) = 0), and the vertical maps are
x |x|^{i t a} with a = p_theta (1/p1 - 1/p0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .norms import WeightedLp, norm_batch


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class LpCoupleSpec:
    p0: float
    p1: float
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if not (1.0 < self.p0 < np.inf and 1.0 < self.p1 < np.inf):
            raise OracleError("exponents must lie in (1, inf); use 1.05 / 40 surrogates for the endpoints")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    def p_of(self, z: complex) -> complex:
        """Exponent function along the strip, 1/p(z) = (1-z)/p0 + z/p1."""
        return 1.0 / ((1.0 - z) / self.p0 + z / self.p1)

    def p_theta(self, theta: float) -> float:
        return float(self.p_of(theta).real)

    def vertical_rate(self, theta: float) -> float:
        """a = p_theta (1/p1 - 1/p0); phi_theta^t(x) = x |x|^{i t a}."""
        return self.p_theta(theta) * (1.0 / self.p1 - 1.0 / self.p0)

    def norm_spec(self, n: int, side: int) -> WeightedLp:
        w = self.weights if self.weights is not None else (1.0,) * n
        return WeightedLp(p=self.p0 if side == 0 else self.p1, weights=w)


def lp_interpolation_norm(spec: LpCoupleSpec, theta: float, x) -> float:
    x = np.asarray(x, dtype=complex)
    w = np.asarray(spec.weights) if spec.weights is not None else np.ones(x.shape[-1])
    p = spec.p_theta(theta)
    return float(((w * np.abs(x) ** p).sum()) ** (1.0 / p))


def lp_minimal_function(spec: LpCoupleSpec, theta: float, x, z: complex) -> np.ndarray:
    """Coordinatewise sgn(x) |x|^{p_theta / p(z)}; expects unit x, unit weights."""
    if spec.weights is not None:
        raise OracleError("minimal-function formula implemented for unit weights only")
    x = np.asarray(x, dtype=complex)
    absx = np.abs(x)
    expo = spec.p_theta(theta) / spec.p_of(z)
    out = np.zeros_like(x)
    nz = absx > 0
    out[nz] = (x[nz] / absx[nz]) * np.exp(expo * np.log(absx[nz]))
    return out


def lp_vertical_map(spec: LpCoupleSpec, theta: float, x, t: float) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    a = spec.vertical_rate(theta)
    absx = np.abs(x)
    out = np.zeros_like(x)
    nz = absx > 0
    out[nz] = x[nz] * np.exp(1j * t * a * np.log(absx[nz]))
    return out


def brute_force_k_functional(couple, x, t: float, grid_density: int = 200, refinements: int = 3):
    """Exhaustive lattice minimization of ||x - x1||_0 + t ||x1||_1 over x1.

    Real data, n <= 2 only.  The lattice is refined around the running
    argmin; returns (value, spacing) with the final lattice spacing as an
    accuracy proxy.
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    if n > 2:
        raise OracleError("brute-force K-functional supports n <= 2 only")
    if np.abs(x.imag).max(initial=0.0) > 0:
        raise OracleError("brute-force K-functional expects real data")
    xr = x.real
    R = float(np.abs(xr).max() + 1.0)
    center = xr / 2.0
    half = R

    def cost(X1):
        D = xr[None, :] - X1
        return norm_batch(couple.norm0, D) + t * norm_batch(couple.norm1, X1)

    best = None
    for _ in range(refinements):
        axes = [np.linspace(c - half, c + half, grid_density) for c in center]
        if n == 1:
            X1 = axes[0][:, None]
        else:
            G = np.meshgrid(*axes, indexing="ij")
            X1 = np.stack([g.ravel() for g in G], axis=-1)
        vals = cost(X1.astype(complex))
        idx = int(vals.argmin())
        best = float(vals[idx])
        center = X1[idx]
        half = 2.0 * (2.0 * half / (grid_density - 1))
    spacing = 2.0 * half / (grid_density - 1)
    return best, spacing
