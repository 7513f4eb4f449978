"""Closed-form diagonal l_p references and brute-force checks."""

import numpy as np
import pytest

from interplab import Couple, WeightedLp
from interplab import norms as nm
from interplab import oracles as orc


SPEC = orc.LpCoupleSpec(4.0, 4.0 / 3.0)


def test_p_theta_harmonic_interpolation():
    assert SPEC.p_theta(0.5) == pytest.approx(2.0)
    assert SPEC.p_theta(0.0) == pytest.approx(4.0)
    assert SPEC.p_theta(1.0) == pytest.approx(4.0 / 3.0)
    spec = orc.LpCoupleSpec(3.0, 6.0)
    assert 1.0 / spec.p_theta(0.25) == pytest.approx(0.75 / 3.0 + 0.25 / 6.0)


def test_interpolation_norm_is_lp_theta_norm():
    x = np.array([1.0, -0.5 + 0.2j, 0.3])
    for theta in (0.2, 0.5, 0.8):
        p = SPEC.p_theta(theta)
        assert orc.lp_interpolation_norm(SPEC, theta, x) == pytest.approx(
            np.linalg.norm(x, p))


def test_minimal_function_boundary_values():
    x = np.array([0.8, 0.6], dtype=complex)
    x = x / orc.lp_interpolation_norm(SPEC, 0.5, x)
    # at z = theta the minimal function returns x itself
    assert np.allclose(orc.lp_minimal_function(SPEC, 0.5, x, 0.5), x)
    # boundary values land on the endpoint unit spheres
    for z, side in ((0.0, 0), (1.0, 1)):
        v = orc.lp_minimal_function(SPEC, 0.5, x, z)
        p = SPEC.p0 if side == 0 else SPEC.p1
        assert np.linalg.norm(v, p) == pytest.approx(1.0, abs=1e-12)
    # vertical boundary points keep the boundary moduli
    v0 = np.abs(orc.lp_minimal_function(SPEC, 0.5, x, 0.7j))
    assert np.allclose(v0, np.abs(orc.lp_minimal_function(SPEC, 0.5, x, 0.0)))


def test_vertical_map_preserves_moduli_and_composes():
    x = np.array([0.8, 0.6], dtype=complex)
    x = x / orc.lp_interpolation_norm(SPEC, 0.5, x)
    y = orc.lp_vertical_map(SPEC, 0.5, x, 0.7)
    assert np.allclose(np.abs(y), np.abs(x))
    # group law: phi^{s} phi^{t} = phi^{s+t}
    z1 = orc.lp_vertical_map(SPEC, 0.5, y, 0.4)
    z2 = orc.lp_vertical_map(SPEC, 0.5, x, 1.1)
    assert np.allclose(z1, z2, atol=1e-12)
    # matches the minimal function along the vertical line
    assert np.allclose(y, orc.lp_minimal_function(SPEC, 0.5, x, 0.5 + 0.7j))


def test_vertical_rate_sign_convention():
    # a = p_theta (1/p1 - 1/p0): positive when p1 < p0, zero when equal
    assert SPEC.vertical_rate(0.5) == pytest.approx(2.0 * (0.75 - 0.25))
    assert orc.LpCoupleSpec(2.0, 4.0).vertical_rate(0.5) < 0
    assert orc.LpCoupleSpec(2.0, 2.0).vertical_rate(0.3) == pytest.approx(0.0)


def test_brute_force_k_functional_sanity():
    couple = Couple(WeightedLp(2.0, (1.0,)), WeightedLp(2.0, (1.0,)))
    x = np.array([1.0])
    # same norm on both sides: K(x, t) = min(1, t) ||x||
    for t in (0.5, 2.0):
        val, spacing = orc.brute_force_k_functional(couple, x, t)
        assert val == pytest.approx(min(1.0, t), abs=1e-3)
        assert spacing < 1e-2


def test_oracle_validation_errors():
    with pytest.raises(orc.OracleError):
        orc.LpCoupleSpec(1.0, 2.0)
    with pytest.raises(orc.OracleError):
        orc.lp_minimal_function(orc.LpCoupleSpec(4.0, 2.0, weights=(2.0, 1.0)),
                                0.5, np.array([1.0, 0.0]), 0.3)
    couple = Couple(WeightedLp(2.0, (1.0,) * 3), WeightedLp(4.0, (1.0,) * 3))
    with pytest.raises(orc.OracleError):
        orc.brute_force_k_functional(couple, np.ones(3), 1.0)
    couple2 = Couple(WeightedLp(2.0, (1.0,)), WeightedLp(4.0, (1.0,)))
    with pytest.raises(orc.OracleError):
        orc.brute_force_k_functional(couple2, np.array([1.0j]), 1.0)


def test_weighted_norm_spec_round_trip():
    spec = orc.LpCoupleSpec(3.0, 1.5, weights=(2.0, 1.0))
    x = np.array([1.0, -0.5])
    for side, p in ((0, 3.0), (1, 1.5)):
        ns = spec.norm_spec(2, side)
        want = float(np.sum(np.array([2.0, 1.0]) * np.abs(x) ** p) ** (1.0 / p))
        assert nm.norm_eval(ns, x) == pytest.approx(want)
