"""Serializable norm algebra on C^n: evaluation, duality, convexity flags.

A norm is described by a small algebraic tree (weighted l_p, quadratic,
max-of, scaled).  All evaluation routines are exact closed forms; the
smoothed variants used inside gradient-based solvers replace |u| by
sqrt(|u|^2 + eps^2) to remove the kink at zero coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

INF = math.inf

#: default kink-smoothing width used inside p-norm gradients
SMOOTH_EPS = 1e-9


class NormError(ValueError):
    pass


class UnsupportedNormError(NormError):
    pass


class Convexity(Enum):
    STRICTLY_CONVEX = "StrictlyConvex"
    NOT_STRICTLY_CONVEX = "NotStrictlyConvex"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class NormSpec:
    """Base class for the norm algebra; concrete kinds below."""


@dataclass(frozen=True)
class WeightedLp(NormSpec):
    p: float
    weights: tuple[float, ...]

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise NormError(f"p must be >= 1, got {self.p}")
        if len(self.weights) == 0 or any(w <= 0 for w in self.weights):
            raise NormError("weights must be positive and nonempty")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    @property
    def dim(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class Quadratic(NormSpec):
    """Norm x -> sqrt(x^* A x) for a Hermitian positive-definite A."""

    matrix: tuple = field(repr=False)

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise NormError("matrix must be square")
        if not np.allclose(A, A.conj().T, atol=1e-12):
            raise NormError("matrix must be Hermitian")
        if np.linalg.eigvalsh(A).min() <= 0:
            raise NormError("matrix must be positive definite")
        object.__setattr__(self, "matrix", tuple(map(tuple, A)))

    @property
    def A(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=complex)

    @property
    def dim(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class MaxOf(NormSpec):
    of: tuple

    def __post_init__(self):
        if len(self.of) == 0:
            raise NormError("max norm needs at least one member")
        dims = {dim(s) for s in self.of}
        if len(dims) != 1:
            raise NormError("max norm members must share a dimension")
        object.__setattr__(self, "of", tuple(self.of))

    @property
    def dim(self) -> int:
        return dim(self.of[0])


@dataclass(frozen=True)
class Scaled(NormSpec):
    c: float
    inner: NormSpec

    def __post_init__(self):
        if not (self.c > 0):
            raise NormError("scale must be positive")

    @property
    def dim(self) -> int:
        return dim(self.inner)


def dim(spec: NormSpec) -> int:
    return spec.dim


def strict_convexity(spec: NormSpec) -> Convexity:
    """Deterministic convexity verdict derived from the spec tree."""
    if isinstance(spec, WeightedLp):
        if 1.0 < spec.p < INF:
            return Convexity.STRICTLY_CONVEX
        return Convexity.UNKNOWN
    if isinstance(spec, Quadratic):
        return Convexity.STRICTLY_CONVEX
    if isinstance(spec, Scaled):
        return strict_convexity(spec.inner)
    return Convexity.UNKNOWN


def is_smooth(spec: NormSpec) -> bool:
    """True when the norm has a usable gradient (solver paths only)."""
    if isinstance(spec, WeightedLp):
        return spec.p < INF
    if isinstance(spec, Quadratic):
        return True
    if isinstance(spec, Scaled):
        return is_smooth(spec.inner)
    return False


def _check_dim(spec: NormSpec, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape[-1] != dim(spec):
        raise NormError(f"dimension mismatch: spec has {dim(spec)}, vector has {x.shape[-1]}")
    return x


def norm_eval(spec: NormSpec, x) -> float:
    """Exact gauge value of x under the spec."""
    return float(norm_batch(spec, _check_dim(spec, x)[None, :])[0])


def norm_batch(spec: NormSpec, X: np.ndarray) -> np.ndarray:
    """Norms of the rows of X (shape (m, n))."""
    X = np.asarray(X, dtype=complex)
    if isinstance(spec, WeightedLp):
        w = np.asarray(spec.weights)
        absx = np.abs(X)
        if spec.p == INF:
            return (w * absx).max(axis=-1)
        if spec.p == 1.0:
            return (w * absx).sum(axis=-1)
        # rescale by the max to avoid overflow for large p
        m = absx.max(axis=-1, keepdims=True)
        m = np.where(m == 0, 1.0, m)
        return (m[..., 0]) * ((w * (absx / m) ** spec.p).sum(axis=-1)) ** (1.0 / spec.p)
    if isinstance(spec, Quadratic):
        A = spec.A
        q = np.einsum("mi,ij,mj->m", X.conj(), A, X).real
        return np.sqrt(np.maximum(q, 0.0))
    if isinstance(spec, MaxOf):
        return np.max([norm_batch(s, X) for s in spec.of], axis=0)
    if isinstance(spec, Scaled):
        return spec.c * norm_batch(spec.inner, X)
    raise UnsupportedNormError(f"unknown norm spec {spec!r}")


def _smoothed_moduli(X: np.ndarray, eps: float) -> np.ndarray:
    return np.sqrt(X.real**2 + X.imag**2 + eps * eps)


def norm_grad_batch(spec: NormSpec, X: np.ndarray, eps: float = SMOOTH_EPS):
    """Smoothed norms of the rows of X together with their gradients.

    Returns (vals, G) where G[m] is the complex gradient of the smoothed
    norm at row m, in the convention d/dRe = Re(G), d/dIm = Im(G).
    """
    X = np.asarray(X, dtype=complex)
    if isinstance(spec, WeightedLp):
        if spec.p == INF:
            raise UnsupportedNormError("sup-norm has no gradient; use a large-p surrogate")
        w = np.asarray(spec.weights)
        r = _smoothed_moduli(X, eps)
        p = spec.p
        m = r.max(axis=-1, keepdims=True)
        vals = m[..., 0] * ((w * (r / m) ** p).sum(axis=-1)) ** (1.0 / p)
        ratio = r / vals[..., None]
        G = w * ratio ** (p - 2.0) * X / vals[..., None]
        return vals, G
    if isinstance(spec, Quadratic):
        A = spec.A
        AX = X @ A.T  # rows (A x)
        q = np.einsum("mi,mi->m", X.conj(), AX).real
        vals = np.sqrt(np.maximum(q, eps * eps))
        return vals, AX / vals[..., None]
    if isinstance(spec, Scaled):
        vals, G = norm_grad_batch(spec.inner, X, eps)
        return spec.c * vals, spec.c * G
    raise UnsupportedNormError(f"no gradient for norm spec {spec!r}")


def normsq_grad_batch(spec: NormSpec, X: np.ndarray, eps: float = SMOOTH_EPS):
    """Smoothed squared norms of the rows of X with gradients (same convention)."""
    X = np.asarray(X, dtype=complex)
    if isinstance(spec, WeightedLp):
        if spec.p == INF:
            raise UnsupportedNormError("sup-norm has no gradient; use a large-p surrogate")
        w = np.asarray(spec.weights)
        r = _smoothed_moduli(X, eps)
        p = spec.p
        m = r.max(axis=-1, keepdims=True)
        vals = m[..., 0] * ((w * (r / m) ** p).sum(axis=-1)) ** (1.0 / p)
        ratio = r / np.where(vals == 0, 1.0, vals)[..., None]
        G = 2.0 * w * ratio ** (p - 2.0) * X
        return vals**2, G
    if isinstance(spec, Quadratic):
        AX = X @ spec.A.T
        q = np.einsum("mi,mi->m", X.conj(), AX).real
        return q, 2.0 * AX
    if isinstance(spec, Scaled):
        vals2, G = normsq_grad_batch(spec.inner, X, eps)
        return spec.c**2 * vals2, spec.c**2 * G
    raise UnsupportedNormError(f"no gradient for norm spec {spec!r}")


def norm_local_model(spec: NormSpec, X: np.ndarray, eps: float = SMOOTH_EPS):
    """Second-order local model of the smoothed norm at the rows of X.

    Returns (vals, G, hvp) with vals and G as in norm_grad_batch and
    hvp(S) -> (dG, dN): the directional derivative of the gradient and of
    the norm along a complex perturbation S of the rows (the Hessian as a
    real-linear operator).  Supported for smooth specs only.
    """
    X = np.asarray(X, dtype=complex)
    if isinstance(spec, WeightedLp):
        if spec.p == INF:
            raise UnsupportedNormError("sup-norm has no curvature; use a large-p surrogate")
        w = np.asarray(spec.weights)
        p = spec.p
        r = _smoothed_moduli(X, eps)
        rmax = r.max(axis=-1, keepdims=True)
        t = r / rmax
        Np = (w * t**p).sum(axis=-1)  # (N / rmax)^p
        vals = rmax[..., 0] * Np ** (1.0 / p)
        fac = Np ** (-(p - 1.0) / p)  # (rmax / N)^{p-1}, overflow-safe
        G = w * X * t ** (p - 2.0) / rmax * fac[..., None]
        # precomputed Hessian factors: dG = a1 S + a2 X Re(conj(X) S) - b G dN
        a1 = w * t ** (p - 2.0) / rmax * fac[..., None]
        a2 = w * (p - 2.0) * t ** (p - 3.0) / (rmax**2 * r) * fac[..., None]
        a2X = a2 * X
        b = ((p - 1.0) / vals)[..., None]
        bG = b * G

        def hvp(S):
            dN = (G.real * S.real + G.imag * S.imag).sum(axis=-1)
            dG = a1 * S + a2X * (X.real * S.real + X.imag * S.imag) - bG * dN[..., None]
            return dG, dN

        return vals, G, hvp
    if isinstance(spec, Quadratic):
        A = spec.A
        AX = X @ A.T
        q = np.einsum("...i,...i->...", X.conj(), AX).real
        vals = np.sqrt(np.maximum(q, eps * eps))
        G = AX / vals[..., None]

        def hvp(S):
            dN = (G.real * S.real + G.imag * S.imag).sum(axis=-1)
            dG = (S @ A.T) / vals[..., None] - G * (dN / vals)[..., None]
            return dG, dN

        return vals, G, hvp
    if isinstance(spec, Scaled):
        vals, G, inner_hvp = norm_local_model(spec.inner, X, eps)

        def hvp(S):
            dG, dN = inner_hvp(S)
            return spec.c * dG, spec.c * dN

        return spec.c * vals, spec.c * G, hvp
    raise UnsupportedNormError(f"no curvature model for norm spec {spec!r}")


def norm_hessian_factors(spec: NormSpec, X: np.ndarray, eps: float = SMOOTH_EPS):
    """Structured description of the smoothed norm Hessian at the rows of X.

    Returns (vals, G, factors).  The Hessian of N at row m, as a real
    quadratic form in a complex perturbation S, is
        lp:   sum_j a1_mj |S_j|^2 + sum_j a2_mj Re(conj(X_mj) S_j)^2 - b_m dN^2
        quad: (S^* A S) * b_m - b_m dN^2
    with dN = sum_j Re(conj(G_mj) S_j).  This factorization lets callers
    assemble dense Hessians with level-3 BLAS instead of basis sweeps.
    """
    X = np.asarray(X, dtype=complex)
    if isinstance(spec, WeightedLp):
        if spec.p == INF:
            raise UnsupportedNormError("sup-norm has no curvature; use a large-p surrogate")
        w = np.asarray(spec.weights)
        p = spec.p
        r = _smoothed_moduli(X, eps)
        rmax = r.max(axis=-1, keepdims=True)
        t = r / rmax
        Np = (w * t**p).sum(axis=-1)
        vals = rmax[..., 0] * Np ** (1.0 / p)
        fac = Np ** (-(p - 1.0) / p)
        G = w * X * t ** (p - 2.0) / rmax * fac[..., None]
        a1 = w * t ** (p - 2.0) / rmax * fac[..., None]
        a2 = w * (p - 2.0) * t ** (p - 3.0) / (rmax**2 * r) * fac[..., None]
        b = (p - 1.0) / vals
        return vals, G, {"kind": "lp", "a1": a1, "a2": a2, "b": b}
    if isinstance(spec, Quadratic):
        A = spec.A
        AX = X @ A.T
        q = np.einsum("...i,...i->...", X.conj(), AX).real
        vals = np.sqrt(np.maximum(q, eps * eps))
        G = AX / vals[..., None]
        return vals, G, {"kind": "quad", "A": A, "b": 1.0 / vals}
    if isinstance(spec, Scaled):
        vals, G, f = norm_hessian_factors(spec.inner, X, eps)
        c = spec.c
        if f["kind"] == "lp":
            out = {"kind": "lp", "a1": c * f["a1"], "a2": c * f["a2"], "b": f["b"] / c}
        else:
            out = {"kind": "quad", "A": c * c * f["A"], "b": f["b"] / c}
        return c * vals, c * G, out
    raise UnsupportedNormError(f"no curvature model for norm spec {spec!r}")


def norming_functional(spec: NormSpec, x) -> np.ndarray:
    """The unique functional phi with <phi, x> = ||x|| and dual norm 1.

    The pairing is bilinear, <phi, x> = sum_i phi_i x_i.  Requires a
    smooth strictly convex spec (weighted l_p with 1 < p < inf, or
    quadratic).
    """
    x = _check_dim(spec, x)
    n = norm_eval(spec, x)
    if n == 0:
        raise NormError("norming functional undefined at x = 0")
    if isinstance(spec, WeightedLp):
        if not (1.0 < spec.p < INF):
            raise UnsupportedNormError("norming functional needs 1 < p < inf")
        w = np.asarray(spec.weights)
        absx = np.abs(x)
        phi = np.zeros_like(x)
        nz = absx > 0
        phi[nz] = w[nz] * np.conj(x[nz]) * absx[nz] ** (spec.p - 2.0) / n ** (spec.p - 1.0)
        return phi
    if isinstance(spec, Quadratic):
        return np.conj(spec.A @ x) / n
    if isinstance(spec, Scaled):
        return spec.c * norming_functional(spec.inner, x)
    raise UnsupportedNormError(f"norming functional unsupported for {spec!r}")


def dual_norm_eval(spec: NormSpec, phi) -> float:
    """sup of |<phi, x>| over the unit ball, bilinear pairing.

    Closed forms for weighted l_p and quadratic specs; fine-grained
    numerical maximization fallback for max-of specs with n <= 3.
    """
    phi = _check_dim(spec, phi)
    if isinstance(spec, WeightedLp):
        w = np.asarray(spec.weights)
        absphi = np.abs(phi)
        if spec.p == 1.0:
            return float((absphi / w).max())
        if spec.p == INF:
            return float((absphi / w).sum())
        q = spec.p / (spec.p - 1.0)
        return float(((w ** (1.0 - q)) * absphi**q).sum() ** (1.0 / q))
    if isinstance(spec, Quadratic):
        v = np.linalg.solve(spec.A, np.conj(phi))
        return float(np.sqrt(max((phi @ v).real, 0.0)))
    if isinstance(spec, Scaled):
        return dual_norm_eval(spec.inner, phi) / spec.c
    if isinstance(spec, MaxOf):
        if dim(spec) > 3:
            raise UnsupportedNormError("max-of dual norm supported only for n <= 3")
        return _dual_norm_by_search(spec, phi)
    raise UnsupportedNormError(f"unknown norm spec {spec!r}")


def _dual_norm_by_search(spec: NormSpec, phi: np.ndarray, n_samples: int = 4096) -> float:
    # deterministic direction sweep plus a local polish
    from scipy.optimize import minimize

    n = dim(spec)
    rng = np.random.default_rng(0)
    Y = rng.standard_normal((n_samples, n)) + 1j * rng.standard_normal((n_samples, n))
    norms = norm_batch(spec, Y)
    vals = np.abs(Y @ phi) / norms
    best = float(vals.max())
    y0 = Y[int(vals.argmax())]

    def neg(u):
        y = u[:n] + 1j * u[n:]
        ny = norm_eval(spec, y)
        if ny == 0:
            return 0.0
        return -abs(y @ phi) / ny

    u0 = np.concatenate([y0.real, y0.imag])
    res = minimize(neg, u0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
    return max(best, float(-res.fun))


# ---------------------------------------------------------------------------
# JSON serialization


def norm_to_json(spec: NormSpec) -> dict:
    if isinstance(spec, WeightedLp):
        return {"kind": "weighted_lp", "p": "inf" if spec.p == INF else spec.p, "weights": list(spec.weights)}
    if isinstance(spec, Quadratic):
        A = spec.A
        return {"kind": "quadratic", "matrix": [[{"re": a.real, "im": a.imag} for a in row] for row in A]}
    if isinstance(spec, MaxOf):
        return {"kind": "max", "of": [norm_to_json(s) for s in spec.of]}
    if isinstance(spec, Scaled):
        return {"kind": "scaled", "c": spec.c, "inner": norm_to_json(spec.inner)}
    raise UnsupportedNormError(f"unknown norm spec {spec!r}")


def norm_from_json(obj: dict) -> NormSpec:
    kind = obj.get("kind")
    if kind == "weighted_lp":
        p = obj["p"]
        return WeightedLp(p=INF if p == "inf" else float(p), weights=tuple(obj["weights"]))
    if kind == "quadratic":
        A = [[complex(a["re"], a["im"]) for a in row] for row in obj["matrix"]]
        return Quadratic(matrix=tuple(map(tuple, A)))
    if kind == "max":
        return MaxOf(of=tuple(norm_from_json(s) for s in obj["of"]))
    if kind == "scaled":
        return Scaled(c=float(obj["c"]), inner=norm_from_json(obj["inner"]))
    raise NormError(f"unknown norm kind {kind!r}")
