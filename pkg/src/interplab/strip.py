"""Geometry and measure theory of the unit strip S = {0 <= Re z <= 1}.

Everything is expressed through a single conformal chart per base point
theta: the map m_theta sends the strip onto the closed unit disk with
m_theta(theta) = 0, so harmonic measure on the boundary of the strip seen
from theta pulls back to the uniform measure on the circle.  Analytic
functions are truncated power series in the disk variable w = m_theta(z).

Boundary quadrature uses Gauss-Legendre nodes on each of the two circle
arcs corresponding to the two boundary lines, so side masses are exact
(1 - theta and theta) and the rules are spectrally accurate for the
polynomial boundary data produced everywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_STRIP_TOL = 1e-12


class StripError(ValueError):
    pass


def _check_theta(theta: float) -> float:
    if not (0.0 < theta < 1.0):
        raise StripError(f"theta must lie in (0, 1), got {theta}")
    return float(theta)


def _check_in_strip(z: complex) -> complex:
    z = complex(z)
    if z.real < -_STRIP_TOL or z.real > 1.0 + _STRIP_TOL:
        raise StripError(f"point {z} outside the closed strip")
    return z


def conformal_map(theta: float, z: complex) -> complex:
    """m_theta(z): strip -> closed unit disk, recentered at theta.

    Built from h(z) = exp(i pi z), which maps the strip onto the closed
    upper half-plane, followed by the Moebius map vanishing at h(theta).
    """
    theta = _check_theta(theta)
    z = _check_in_strip(z)
    h = np.exp(1j * np.pi * z)
    a = np.exp(1j * np.pi * theta)
    return complex((h - a) / (h - np.conj(a)))


def inverse_conformal_map(theta: float, w: complex) -> complex:
    """Inverse of m_theta on the closed disk (w = 1 maps to infinity)."""
    theta = _check_theta(theta)
    w = complex(w)
    a = np.exp(1j * np.pi * theta)
    s = (a - w * np.conj(a)) / (1.0 - w)
    # log branch with arg in [0, pi] puts Re z in [0, 1]
    return complex(np.angle(s) / np.pi - 1j * np.log(abs(s)) / np.pi)


def poisson_density(theta: float, side: int, t) :
    """Harmonic-measure density of the strip at side + i t seen from theta.

    Obtained by pulling back the disk Poisson kernel through h(z) =
    exp(i pi z); the side masses integrate to 1 - theta and theta.
    """
    theta = _check_theta(theta)
    if side not in (0, 1):
        raise StripError(f"side must be 0 or 1, got {side}")
    t = np.asarray(t, dtype=float)
    c = np.cos(np.pi * theta)
    if side == 1:
        c = -c
    out = np.sin(np.pi * theta) / (2.0 * (np.cosh(np.pi * t) - c))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class BoundaryGrid:
    """Quadrature nodes/weights for the side measures mu_theta^0, mu_theta^1.

    nodes{j} are the imaginary parts t on side j, strictly increasing;
    angles{j} are the corresponding circle angles of m_theta(j + it),
    kept so boundary Vandermonde matrices can be formed directly.
    """

    theta: float
    nodes0: np.ndarray
    weights0: np.ndarray
    angles0: np.ndarray
    nodes1: np.ndarray
    weights1: np.ndarray
    angles1: np.ndarray

    def side(self, j: int):
        if j == 0:
            return self.nodes0, self.weights0, self.angles0
        if j == 1:
            return self.nodes1, self.weights1, self.angles1
        raise StripError(f"side must be 0 or 1, got {j}")

    def circle_points(self, j: int) -> np.ndarray:
        return np.exp(1j * self.side(j)[2])

    def masses(self) -> tuple[float, float]:
        return float(self.weights0.sum()), float(self.weights1.sum())


@lru_cache(maxsize=16)
def _gauss_nodes(M: int):
    from scipy.special import roots_legendre

    x, w = roots_legendre(M)
    return x, w


def _gauss_arc(lo: float, hi: float, M: int):
    x, w = _gauss_nodes(M)
    phi = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    return phi, w * 0.5 * (hi - lo) / (2.0 * np.pi)


def make_grid(theta: float, M: int) -> BoundaryGrid:
    """Boundary quadrature with M nodes per side and exact side masses.

    The circle splits at angles 0 and 2 pi theta: the arc (0, 2 pi theta)
    is the image of the right boundary line (side 1), the complementary
    arc the image of the left line (side 0).
    """
    theta = _check_theta(theta)
    if M < 16:
        raise StripError(f"need M >= 16 nodes per side, got {M}")
    a = np.exp(1j * np.pi * theta)
    sides = []
    for j, (lo, hi) in enumerate([(2.0 * np.pi * theta, 2.0 * np.pi), (0.0, 2.0 * np.pi * theta)]):
        phi, wts = _gauss_arc(lo, hi, M)
        w = np.exp(1j * phi)
        s = (a - w * np.conj(a)) / (1.0 - w)
        # side 0 has s on the positive real axis, side 1 on the negative
        t = -np.log(np.abs(s)) / np.pi
        order = np.argsort(t)
        sides.append((t[order], wts[order], phi[order]))
    (t0, w0, p0), (t1, w1, p1) = sides
    return BoundaryGrid(theta=theta, nodes0=t0, weights0=w0, angles0=p0,
                        nodes1=t1, weights1=w1, angles1=p1)


# ---------------------------------------------------------------------------
# Truncated analytic functions


@dataclass(frozen=True)
class AnalyticFn:
    """Truncated power series S -> C^n in the disk variable w = m_theta(z).

    coeffs has shape (K + 1, n); eval at theta returns coeffs[0].
    """

    theta: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 2:
            raise StripError("coeffs must have shape (K + 1, n)")
        object.__setattr__(self, "coeffs", c)
        _check_theta(self.theta)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def __call__(self, z: complex) -> np.ndarray:
        return fn_eval(self, z)


def fn_eval(f: AnalyticFn, z: complex) -> np.ndarray:
    """Horner evaluation of the series at m_theta(z)."""
    w = conformal_map(f.theta, z)
    out = np.zeros(f.dim, dtype=complex)
    for row in f.coeffs[::-1]:
        out = out * w + row
    return out


def fn_eval_circle(f: AnalyticFn, angles: np.ndarray) -> np.ndarray:
    """Series values at the circle points exp(i angles); rows are points."""
    V = vandermonde(angles, f.degree)
    return V @ f.coeffs


def vandermonde(angles: np.ndarray, degree: int) -> np.ndarray:
    w = np.exp(1j * np.asarray(angles))
    return w[:, None] ** np.arange(degree + 1)[None, :]


def _series_div(A: np.ndarray, B: np.ndarray, order: int) -> np.ndarray:
    # power series division A/B up to the given order; B[0] != 0
    Q = np.zeros(order + 1, dtype=complex)
    for k in range(order + 1):
        acc = A[k] if k < len(A) else 0.0
        for j in range(1, k + 1):
            if j < len(B):
                acc -= B[j] * Q[k - j]
        Q[k] = acc / B[0]
    return Q


def disk_variable_series(theta: float, order: int) -> np.ndarray:
    """Taylor coefficients of u -> m_theta(theta + u) up to the given order."""
    theta = _check_theta(theta)
    a = np.exp(1j * np.pi * theta)
    k = np.arange(order + 1)
    E = (1j * np.pi) ** k / np.array([math.factorial(int(m)) for m in k])  # e^{i pi u}
    A = a * E.copy()
    A[0] = 0.0  # a (e^{i pi u} - 1)
    B = a * E.copy()
    B[0] = a - np.conj(a)
    return _series_div(A, B, order)


def taylor_coeff(f: AnalyticFn, order: int) -> np.ndarray:
    """order-th Taylor coefficient of z -> f(z) at theta, strip variable.

    Computed by composing the disk series with the series of m_theta at
    theta (finite triangular transform; only terms up to min(order, K)
    powers of the disk variable contribute).
    """
    if order < 0 or order > f.degree:
        raise StripError(f"order must lie in [0, {f.degree}]")
    if order == 0:
        return f.coeffs[0].copy()
    W = disk_variable_series(f.theta, order)  # W[0] = 0
    out = f.coeffs[0] * 0.0
    power = np.zeros(order + 1, dtype=complex)
    power[0] = 1.0
    for k in range(1, min(order, f.degree) + 1):
        power = np.convolve(power, W)[: order + 1]
        out = out + power[order] * f.coeffs[k]
    return out


def quadrature(f: AnalyticFn, grid: BoundaryGrid):
    """Side-wise quadrature values of f on the grid; rows are nodes."""
    B0 = fn_eval_circle(f, grid.angles0)
    B1 = fn_eval_circle(f, grid.angles1)
    return B0, B1


def fn_to_json(f: AnalyticFn) -> dict:
    return {
        "theta": f.theta,
        "dim": f.dim,
        "coeffs": [[{"re": c.real, "im": c.imag} for c in row] for row in f.coeffs],
    }


def fn_from_json(obj: dict) -> AnalyticFn:
    coeffs = np.array([[complex(c["re"], c["im"]) for c in row] for row in obj["coeffs"]])
    return AnalyticFn(theta=float(obj["theta"]), coeffs=coeffs)
