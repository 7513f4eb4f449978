"""Norm specification algebra: values, gradients, duality, serialization."""

import numpy as np
import pytest

from interplab import norms as nm
from interplab.norms import MaxOf, Quadratic, Scaled, WeightedLp

RNG = np.random.default_rng(0)


def rand_vec(n=3):
    return RNG.standard_normal(n) + 1j * RNG.standard_normal(n)


def test_weighted_lp_matches_numpy():
    x = rand_vec()
    spec = WeightedLp(3.0, (1.0, 1.0, 1.0))
    assert nm.norm_eval(spec, x) == pytest.approx(np.linalg.norm(x, 3.0))


def test_weighted_lp_weights_scale_coordinates():
    x = np.array([1.0, 2.0])
    spec = WeightedLp(2.0, (4.0, 1.0))
    assert nm.norm_eval(spec, x) == pytest.approx(np.sqrt(4.0 * 1.0 + 4.0))


def test_sup_norm_via_infinite_p():
    x = np.array([1.0, -3.0, 2.0])
    spec = WeightedLp(np.inf, (1.0, 1.0, 1.0))
    assert nm.norm_eval(spec, x) == pytest.approx(3.0)


def test_quadratic_norm_value():
    A = np.array([[2.0, 0.5], [0.5, 1.0]])
    x = rand_vec(2)
    expected = np.sqrt(np.real(np.conj(x) @ A @ x))
    assert nm.norm_eval(Quadratic(A), x) == pytest.approx(expected)


def test_max_of_and_scaled():
    x = rand_vec(2)
    a = WeightedLp(1.0, (1.0, 1.0))
    b = WeightedLp(np.inf, (1.0, 1.0))
    assert nm.norm_eval(MaxOf((a, b)), x) == pytest.approx(
        max(nm.norm_eval(a, x), nm.norm_eval(b, x)))
    assert nm.norm_eval(Scaled(2.5, a), x) == pytest.approx(2.5 * nm.norm_eval(a, x))


def test_homogeneity_and_triangle_inequality():
    x, y = rand_vec(), rand_vec()
    for spec in (WeightedLp(1.7, (1.0, 0.5, 2.0)), Quadratic(np.eye(3) * 2.0)):
        n = nm.norm_eval(spec, x)
        assert nm.norm_eval(spec, 3.0 * x) == pytest.approx(3.0 * n)
        assert nm.norm_eval(spec, x + y) <= n + nm.norm_eval(spec, y) + 1e-12


def test_norm_batch_matches_norm_eval():
    X = RNG.standard_normal((5, 3)) + 1j * RNG.standard_normal((5, 3))
    spec = WeightedLp(2.5, (1.0, 2.0, 0.5))
    vals = nm.norm_batch(spec, X)
    for v, row in zip(vals, X):
        assert v == pytest.approx(nm.norm_eval(spec, row))


def test_gradients_match_finite_differences():
    h = 1e-7
    for spec in (WeightedLp(4.0, (1.0, 1.0)), WeightedLp(1.3, (2.0, 1.0)),
                 Quadratic(np.array([[3.0, 1.0], [1.0, 2.0]]))):
        x = rand_vec(2)
        _, G = nm.norm_grad_batch(spec, x[None, :])
        for j in range(2):
            for step, part in ((h, "real"), (1j * h, "imag")):
                e = np.zeros(2, dtype=complex)
                e[j] = step
                fd = (nm.norm_eval(spec, x + e) - nm.norm_eval(spec, x - e)) / (2 * h)
                got = G[0, j].real if part == "real" else G[0, j].imag
                assert got == pytest.approx(fd, abs=1e-5)


def test_normsq_grad_is_twice_norm_times_grad():
    spec = WeightedLp(3.0, (1.0, 1.0))
    X = rand_vec(2)[None, :]
    v, G = nm.norm_grad_batch(spec, X)
    v2, G2 = nm.normsq_grad_batch(spec, X)
    assert v2[0] == pytest.approx(v[0] ** 2)
    assert np.allclose(G2, 2.0 * v[0] * G, atol=1e-9)


def test_hessian_factors_reconstruct_hessian():
    spec = WeightedLp(2.5, (1.0, 1.0))
    x = rand_vec(2)
    vals, G, f = nm.norm_hessian_factors(spec, x[None, :])
    h = 1e-5

    def quad_form(s):
        dn = float(np.sum(np.real(np.conj(G[0]) * s)))
        out = float(np.sum(f["a1"][0] * np.abs(s) ** 2))
        out += float(np.sum(f["a2"][0] * np.real(np.conj(x) * s) ** 2))
        return out - f["b"][0] * dn ** 2

    s = rand_vec(2)
    sr = np.concatenate([s.real, s.imag])
    e = h * s
    second = (nm.norm_eval(spec, x + e) - 2 * nm.norm_eval(spec, x)
              + nm.norm_eval(spec, x - e)) / h ** 2
    assert quad_form(s) == pytest.approx(second, rel=1e-3, abs=1e-6)
    del sr


def test_norming_functional_pairs_to_norm():
    for spec in (WeightedLp(3.0, (1.0, 1.0, 1.0)), Quadratic(np.eye(3) * 1.5)):
        x = rand_vec()
        phi = nm.norming_functional(spec, x)
        pairing = np.sum(phi * x)  # bilinear pairing
        assert pairing.imag == pytest.approx(0.0, abs=1e-10)
        assert pairing.real == pytest.approx(nm.norm_eval(spec, x), rel=1e-8)
        assert nm.dual_norm_eval(spec, phi) == pytest.approx(1.0, abs=1e-6)


def test_dual_of_lp_is_lq():
    p = 3.0
    q = p / (p - 1.0)
    spec = WeightedLp(p, (1.0, 1.0, 1.0))
    phi = rand_vec()
    assert nm.dual_norm_eval(spec, phi) == pytest.approx(np.linalg.norm(phi, q), rel=1e-9)


def test_convexity_and_smoothness_flags():
    assert nm.strict_convexity(WeightedLp(2.0, (1.0,))) is nm.Convexity.STRICTLY_CONVEX
    assert nm.strict_convexity(WeightedLp(1.0, (1.0,))) is not nm.Convexity.STRICTLY_CONVEX
    assert nm.is_smooth(WeightedLp(2.0, (1.0, 1.0)))
    assert not nm.is_smooth(WeightedLp(np.inf, (1.0, 1.0)))


def test_json_round_trip():
    specs = [
        WeightedLp(2.5, (1.0, 2.0)),
        Quadratic(np.array([[2.0, 0.0], [0.0, 1.0]])),
        Scaled(3.0, WeightedLp(1.0, (1.0, 1.0))),
        MaxOf((WeightedLp(1.0, (1.0, 1.0)), WeightedLp(np.inf, (1.0, 1.0)))),
    ]
    x = rand_vec(2)
    for spec in specs:
        back = nm.norm_from_json(nm.norm_to_json(spec))
        assert nm.norm_eval(back, x) == pytest.approx(nm.norm_eval(spec, x))


def test_invalid_specs_raise():
    with pytest.raises(nm.NormError):
        WeightedLp(0.5, (1.0,))
    with pytest.raises(nm.NormError):
        WeightedLp(2.0, (-1.0,))
    with pytest.raises(nm.NormError):
        Quadratic(np.array([[0.0, 1.0], [1.0, 0.0]]))  # not positive definite


def test_dimension_mismatch_raises():
    with pytest.raises(nm.NormError):
        nm.norm_eval(WeightedLp(2.0, (1.0, 1.0)), np.array([1.0, 2.0, 3.0]))
