"""Strip geometry: conformal chart, harmonic measure, truncated series."""

import numpy as np
import pytest

from interplab import strip as st


def test_conformal_map_centers_theta():
    for theta in (0.2, 0.5, 0.8):
        assert st.conformal_map(theta, theta) == pytest.approx(0.0, abs=1e-14)


def test_conformal_map_round_trip():
    rng = np.random.default_rng(1)
    for theta in (0.3, 0.6):
        for _ in range(10):
            z = rng.uniform(0.05, 0.95) + 1j * rng.uniform(-2.0, 2.0)
            w = st.conformal_map(theta, z)
            assert abs(w) < 1.0
            assert st.inverse_conformal_map(theta, w) == pytest.approx(z, abs=1e-10)


def test_boundary_maps_to_circle():
    for side, t in ((0, 0.7), (1, -1.3)):
        w = st.conformal_map(0.4, side + 1j * t)
        assert abs(w) == pytest.approx(1.0, abs=1e-12)


def test_poisson_density_integrates_to_side_mass():
    theta = 0.35
    t = np.linspace(-40, 40, 400_001)
    for side, mass in ((0, 1.0 - theta), (1, theta)):
        total = np.trapezoid(st.poisson_density(theta, side, t), t)
        assert total == pytest.approx(mass, abs=1e-6)


def test_make_grid_masses_and_ordering():
    grid = st.make_grid(0.25, 64)
    m0, m1 = grid.masses()
    assert m0 == pytest.approx(0.75, abs=1e-12)
    assert m1 == pytest.approx(0.25, abs=1e-12)
    assert (np.diff(grid.nodes0) > 0).all()
    assert (np.diff(grid.nodes1) > 0).all()


def test_grid_angles_match_nodes():
    grid = st.make_grid(0.6, 32)
    for side in (0, 1):
        nodes, _, angles = grid.side(side)
        for t, ang in zip(nodes[:5], angles[:5]):
            w = st.conformal_map(0.6, side + 1j * t)
            assert np.exp(1j * ang) == pytest.approx(w, abs=1e-9)


def test_fn_eval_is_power_series():
    theta = 0.5
    coeffs = np.array([[1.0 + 0j], [2.0], [0.5]])
    f = st.AnalyticFn(theta=theta, coeffs=coeffs)
    z = 0.4 + 0.2j
    w = st.conformal_map(theta, z)
    assert f(z)[0] == pytest.approx(1.0 + 2.0 * w + 0.5 * w ** 2)
    assert f(theta)[0] == pytest.approx(1.0)


def test_fn_eval_circle_matches_vandermonde():
    rng = np.random.default_rng(2)
    coeffs = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    f = st.AnalyticFn(theta=0.3, coeffs=coeffs)
    angles = np.linspace(0, 2 * np.pi, 7, endpoint=False)
    direct = np.array([[np.polyval(coeffs[::-1, j], np.exp(1j * a)) for j in range(2)]
                       for a in angles])
    assert np.allclose(st.fn_eval_circle(f, angles), direct)


def test_taylor_coeff_by_finite_differences():
    rng = np.random.default_rng(3)
    theta = 0.45
    coeffs = rng.standard_normal((6, 1)) + 1j * rng.standard_normal((6, 1))
    f = st.AnalyticFn(theta=theta, coeffs=coeffs)
    h = 1e-5
    # first strip-variable Taylor coefficient = derivative at theta
    d1 = (f(theta + h) - f(theta - h)) / (2 * h)
    assert st.taylor_coeff(f, 1)[0] == pytest.approx(d1[0], abs=1e-6)
    assert np.allclose(st.taylor_coeff(f, 0), coeffs[0])


def test_quadrature_shapes():
    grid = st.make_grid(0.5, 16)
    f = st.AnalyticFn(theta=0.5, coeffs=np.ones((3, 2), dtype=complex))
    B0, B1 = st.quadrature(f, grid)
    assert B0.shape == (16, 2)
    assert B1.shape == (16, 2)


def test_fn_json_round_trip():
    rng = np.random.default_rng(4)
    coeffs = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    f = st.AnalyticFn(theta=0.7, coeffs=coeffs)
    back = st.fn_from_json(st.fn_to_json(f))
    assert back.theta == f.theta
    assert np.allclose(back.coeffs, f.coeffs)


def test_invalid_inputs_raise():
    with pytest.raises(st.StripError):
        st.conformal_map(0.0, 0.5)
    with pytest.raises(st.StripError):
        st.conformal_map(0.5, 1.5 + 0j)
    with pytest.raises(st.StripError):
        st.make_grid(0.5, 8)
    with pytest.raises(st.StripError):
        st.AnalyticFn(theta=0.5, coeffs=np.ones(3))
