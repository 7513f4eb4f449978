"""Vertical maps, orbit classification, and Fourier pairing checks."""

import numpy as np
import pytest

from interplab import Couple, WeightedLp
from interplab import dynamics as dy
from interplab import interpolation as ip
from interplab import oracles as orc


def diag_couple(p0, p1, n=2):
    return Couple(WeightedLp(p0, (1.0,) * n), WeightedLp(p1, (1.0,) * n))


COUPLE = diag_couple(4.0, 4.0 / 3.0)           # p_theta(0.5) = 2
SPEC = orc.LpCoupleSpec(4.0, 4.0 / 3.0)


def unit(vals):
    x = np.asarray(vals, dtype=complex)
    return x / orc.lp_interpolation_norm(SPEC, 0.5, x)


def test_vertical_map_matches_oracle():
    x = unit([0.8, 0.6])
    got = dy.vertical_map(COUPLE, 0.5, 0.2, x, K=32, M=256)
    want = orc.lp_vertical_map(SPEC, 0.5, x, 0.2)
    assert np.allclose(got, want, atol=5e-3)


def test_vertical_map_requires_unit_vector():
    with pytest.raises(dy.DynamicsError):
        dy.vertical_map(COUPLE, 0.5, 0.1, np.array([2.0, 0.0]), K=16, M=128)


def test_orbit_sample_single_solve_consistent_with_vertical_map():
    x = unit([0.8, 0.6])
    ts = [0.1, 0.3]
    samples = dy.orbit_sample(COUPLE, 0.5, x, ts, K=32, M=256)
    mf = ip.f2_minimal(COUPLE, 0.5, x, K=32, M=256)
    for t, s in zip(ts, samples):
        assert np.allclose(s, dy.vertical_map(COUPLE, 0.5, t, x, minimal=mf, K=32, M=256))


def test_rational_relation():
    assert dy.rational_relation(0.75, 16, 1e-9) == (3, 4)
    assert dy.rational_relation(2.0, 16, 1e-9) == (2, 1)
    assert dy.rational_relation(np.pi, 8, 1e-9) is None


def test_classify_singular():
    res = dy.classify_orbit(COUPLE, 0.5, np.array([1.0, 0.0]), K=16, M=128)
    assert res.kind == "Singular"


def test_classify_periodic_commensurable_logs():
    a2 = (np.sqrt(5.0) - 1.0) / 2.0   # a^2 + a^4 = 1, so (a, a^2) is a unit vector
    a = np.sqrt(a2)
    res = dy.classify_orbit(COUPLE, 0.5, np.array([a, a2]), K=16, M=128)
    assert res.kind == "Periodic"
    rate = abs(SPEC.vertical_rate(0.5))
    assert res.period == pytest.approx(2.0 * np.pi / (rate * abs(np.log(a))), rel=1e-6)
    # closed-form orbit recurrence at the reported period
    y = orc.lp_vertical_map(SPEC, 0.5, np.array([a, a2]), res.period)
    assert np.allclose(y, [a, a2], atol=1e-9)


def test_classify_aperiodic_incommensurable_logs():
    res = dy.classify_orbit(COUPLE, 0.5, unit([0.8, 0.6]), K=16, M=128)
    assert res.kind == "Aperiodic"


def test_periodic_fourier_check_pairing_identities():
    # fast-rotating couple so the period stays short and the truncated
    # series remains accurate over the whole vertical cell
    couple = diag_couple(40.0, 1.05, 3)
    spec = orc.LpCoupleSpec(40.0, 1.05)
    theta = 0.05
    x = np.array([1.0, np.exp(-1.0), np.exp(-2.0)])
    x = x / orc.lp_interpolation_norm(spec, theta, x)
    T = 2.0 * np.pi / abs(spec.vertical_rate(theta))
    rep = dy.periodic_fourier_check(couple, theta, x, T, n_modes=8, n_samples=64)
    assert rep.pairing_identity_gap <= 1e-3
    assert rep.max_offdiagonal_pairing <= 1e-3
    assert rep.functional_period_residual <= 1e-2
    with pytest.raises(dy.DynamicsError):
        dy.periodic_fourier_check(couple, theta, x, -1.0)
