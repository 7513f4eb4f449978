"""Vertical homeomorphisms, orbit sampling and orbit classification.

The vertical map at level t sends a unit vector x of the interpolation
space to the value of its minimal function at theta + i t; the family
forms a one-parameter group on the unit sphere.  On diagonal l_p couples
the orbit is x |x|^{i t a} coordinatewise, which makes periodicity a
commensurability question about the logarithms of the moduli.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import interpolation as ip
from . import norms as nm
from . import strip as st
from .norms import norming_functional


class DynamicsError(ValueError):
    pass


#: unit-sphere membership guard; matches the accuracy of the minimal-function
#: solver so that vertical-map images can themselves be mapped again
UNIT_TOL = 2e-3


def _check_unit(couple, theta, x, K, M, tol=UNIT_TOL):
    x = np.asarray(x, dtype=complex)
    n = ip.theta_norm(couple, theta, x, K=K, M=M)
    if abs(n - 1.0) > tol:
        raise DynamicsError(f"x must be a unit vector of the interpolation space, got norm {n}")
    return x


def vertical_map(couple, theta, t, x, minimal=None, K=ip.DEFAULT_K, M=ip.DEFAULT_M):
    """phi_theta^t(x): value of the minimal function of x at theta + i t."""
    x = _check_unit(couple, theta, x, K, M)
    if minimal is None:
        minimal = ip.f2_minimal(couple, theta, x, K=K, M=M)
    return minimal(theta + 1j * t)


def orbit_sample(couple, theta, x, t_grid, K=ip.DEFAULT_K, M=ip.DEFAULT_M):
    """Orbit samples phi_theta^t(x) over t_grid from a single minimal solve."""
    x = _check_unit(couple, theta, x, K, M)
    minimal = ip.f2_minimal(couple, theta, x, K=K, M=M)
    return [minimal(theta + 1j * float(t)) for t in t_grid]


@dataclass(frozen=True)
class OrbitClass:
    kind: str  # Singular | Periodic | Aperiodic | Inconclusive
    period: float | None = None
    diagnostics: dict = field(default_factory=dict)


def rational_relation(r: float, max_den: int, tol: float):
    """Best continued-fraction rational p/q with q <= max_den, or None.

    Returns (p, q) when |r - p/q| <= tol; otherwise None (no relation
    within tolerance at the given denominator bound).
    """
    # continued-fraction convergents of r
    p_prev, q_prev = 1, 0
    p_cur, q_cur = int(np.floor(r)), 1
    rem = r - np.floor(r)
    best = (p_cur, q_cur)
    for _ in range(64):
        if abs(r - best[0] / best[1]) <= tol:
            return best
        if rem == 0:
            break
        rem = 1.0 / rem
        a = int(np.floor(rem))
        rem -= a
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
        if q_cur > max_den:
            break
        best = (p_cur, q_cur)
    if abs(r - best[0] / best[1]) <= tol:
        return best
    return None


def _commensurability(logs: np.ndarray, max_int: int = 64, tol: float = 1e-9):
    """Common C with C * log|x_n| all integers (bounded), or None."""
    base = logs[0]
    nums, dens = [], []
    for L in logs:
        r = L / base
        pq = rational_relation(float(r), max_int, tol)
        if pq is None:
            return None
        p, q = pq
        g = gcd(abs(p), q) or 1
        nums.append(p // g)
        dens.append(q // g)
    m1 = 1
    for d in dens:
        m1 = m1 * d // gcd(m1, d)
    ms = [p * (m1 // q) for p, q in zip(nums, dens)]
    if any(abs(m) > max_int for m in ms) or abs(m1) > max_int:
        return None
    return m1 / base, ms


def classify_orbit(couple, theta, x, tol: float = 1e-6, K=ip.DEFAULT_K, M=ip.DEFAULT_M,
                   rel_tol: float = 1e-9, max_int: int = 64, scan_horizon: float = 100.0) -> OrbitClass:
    """Classify the vertical orbit of a unit vector x.

    Singular when both endpoint norms are 1; on diagonal l_p couples
    periodicity is decided by a continued-fraction commensurability test
    on {log |x_n|}; general couples fall back to a recurrence scan with
    Inconclusive as a valid verdict.
    """
    x = _check_unit(couple, theta, x, K, M, tol=max(tol, UNIT_TOL))
    n0 = nm.norm_eval(couple.norm0, x)
    n1 = nm.norm_eval(couple.norm1, x)
    diag = {"norm0": n0, "norm1": n1}
    if abs(n0 - 1.0) <= tol and abs(n1 - 1.0) <= tol:
        return OrbitClass(kind="Singular", diagnostics=diag)

    spec = ip.diagonal_lp_spec(couple)
    if spec is not None:
        a = spec.vertical_rate(theta)
        absx = np.abs(x)
        active = absx[(absx > 0) & (np.abs(absx - 1.0) > 1e-14)]
        if active.size == 0 or a == 0.0:
            return OrbitClass(kind="Singular", diagnostics=diag)
        logs = np.log(active)
        rel = _commensurability(logs, max_int=max_int, tol=rel_tol)
        if rel is not None:
            C, ms = rel
            T = 2.0 * np.pi * abs(C) / abs(a)
            diag["C"] = C
            diag["integers"] = ms
            return OrbitClass(kind="Periodic", period=T, diagnostics=diag)
        return OrbitClass(kind="Aperiodic", diagnostics=diag)

    # general couple: recurrence scan along the orbit
    minimal = ip.f2_minimal(couple, theta, x, K=K, M=M)
    ts = np.linspace(0.05, scan_horizon, 2000)
    for t in ts:
        y = minimal(theta + 1j * float(t))
        res = ip.theta_norm(couple, theta, y - x, K=K, M=M)
        if res <= tol:
            diag["recurrence_residual"] = float(res)
            return OrbitClass(kind="Periodic", period=float(t), diagnostics=diag)
    return OrbitClass(kind="Inconclusive", diagnostics=diag)


# ---------------------------------------------------------------------------
# Fourier pairing checks for periodic points


@dataclass(frozen=True)
class FourierCheckReport:
    period: float
    reconstruction_residual: float
    functional_reconstruction_residual: float
    pairing_identity_gap: float          # |sum_n <d_{-n}, c_n> - 1|
    max_offdiagonal_pairing: float       # max_{k != 0} |sum_{n+m=k} <d_n, c_m>|
    functional_period_residual: float


def periodic_fourier_check(couple, theta, x, T: float, n_modes: int = 32,
                           n_samples: int = 256, K=ip.DEFAULT_K, M=ip.DEFAULT_M) -> FourierCheckReport:
    """Fourier expansion and duality-pairing identities for a T-periodic point.

    Samples the minimal function and the norming-functional path over one
    vertical period, extracts exponential-sum coefficients by DFT, and
    reports the reconstruction residuals together with the bilinear
    pairing sums (1 on the diagonal, 0 off it).
    """
    if T <= 0:
        raise DynamicsError("period must be positive")
    x = _check_unit(couple, theta, x, K, M)
    spec = ip.diagonal_lp_spec(couple)
    if spec is None:
        raise DynamicsError("norming-functional path supported for diagonal l_p couples only")
    p_theta = spec.p_theta(theta)
    theta_spec = nm.WeightedLp(p=p_theta, weights=(1.0,) * couple.dim)

    minimal = ip.f2_minimal(couple, theta, x, K=K, M=M)
    ts = np.arange(n_samples) * (T / n_samples)
    F = np.array([minimal(theta + 1j * float(t)) for t in ts])
    Phi = np.array([norming_functional(theta_spec, f) for f in F])

    # F(theta + it) = sum_n c_n exp(2 pi i n t / T): coefficients by DFT
    def dft_coeffs(samples):
        Chat = np.fft.fft(samples, axis=0) / n_samples
        idx = [(-k) % n_samples for k in range(-n_modes, n_modes + 1)]
        return Chat[idx]  # rows n = -n_modes .. n_modes

    c = dft_coeffs(F)
    d = dft_coeffs(Phi)

    def resample(coeffs, t):
        ns = np.arange(-n_modes, n_modes + 1)
        phases = np.exp(2j * np.pi * ns * t / T)
        return phases @ coeffs

    mid = ts + 0.5 * (T / n_samples)
    F_mid = np.array([minimal(theta + 1j * float(t)) for t in mid])
    Phi_mid = np.array([norming_functional(theta_spec, f) for f in F_mid])
    rec_F = max(np.linalg.norm(resample(c, t) - f, np.inf) for t, f in zip(mid, F_mid))
    rec_Phi = max(np.linalg.norm(resample(d, t) - f, np.inf) for t, f in zip(mid, Phi_mid))

    # pairing sums S_k = sum_{n+m=k} <d_n, c_m> with the bilinear pairing
    pair = d @ c.T  # pair[i, j] = <d_{n_i}, c_{n_j}>
    ns = np.arange(-n_modes, n_modes + 1)
    S = {}
    for i, n in enumerate(ns):
        for j, m in enumerate(ns):
            S[n + m] = S.get(n + m, 0.0) + pair[i, j]
    diag_gap = abs(S.get(0, 0.0) - 1.0)
    off = max((abs(v) for k, v in S.items() if k != 0), default=0.0)

    phi0 = norming_functional(theta_spec, np.asarray(x, dtype=complex))
    phiT = norming_functional(theta_spec, minimal(theta + 1j * T))
    return FourierCheckReport(
        period=float(T),
        reconstruction_residual=float(rec_F),
        functional_reconstruction_residual=float(rec_Phi),
        pairing_identity_gap=float(diag_gap),
        max_offdiagonal_pairing=float(off),
        functional_period_residual=float(np.linalg.norm(phiT - phi0, np.inf)),
    )
