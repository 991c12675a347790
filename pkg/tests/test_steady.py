"""The equilibrium family inside the three-parameter class."""

import numpy as np
import pytest

from quadszego.dynamics import rhs
from quadszego.hardy import HardyCoefficients, conserved
from quadszego.steady import (
    SteadyV3Params,
    build_steady,
    family_constants,
    is_steady,
    explicit_example,
    steadiness_measure,
    suggested_trunc,
)


def test_theta_zero_is_monomial():
    u = build_steady(SteadyV3Params(scale=1.0, a=0.0, b_angle=0.0, theta=0.0), 8)
    expected = np.zeros(8, dtype=complex)
    expected[1] = 1.0
    assert np.allclose(u.coeffs, expected, atol=1e-15)


def test_family_constants_at_pi_over_six():
    mean, c, p = family_constants(np.pi / 6)
    assert mean == pytest.approx(-np.sqrt(3) / 3)
    assert c == pytest.approx(4 / (3 * np.sqrt(11)))
    assert p == pytest.approx(5 / np.sqrt(33))


def test_pole_stays_inside_disc_on_grid():
    for theta in np.linspace(0, np.pi / 3, 200, endpoint=False):
        _, _, p = family_constants(theta)
        assert 0 <= p < 1


def test_explicit_example_is_steady():
    u = explicit_example(512)
    assert abs(conserved(u).J) < 1e-13
    assert rhs(u).norm() < 1e-13
    assert is_steady(u, tol=1e-13)


def test_example_equals_family_point():
    u = explicit_example(512)
    v = build_steady(SteadyV3Params(scale=1.0, a=0.0, b_angle=0.0, theta=np.pi / 6), 512)
    assert np.max(np.abs(u.coeffs - v.coeffs)) < 1e-14


def test_generic_theta_point():
    meas = steadiness_measure(SteadyV3Params(scale=1.0, a=0.0, b_angle=0.0, theta=np.pi / 6))
    assert meas.abs_j < 1e-12
    assert meas.rhs_norm < 1e-12


def test_steadiness_invariant_under_symmetries():
    rng = np.random.default_rng(0)
    for _ in range(4):
        params = SteadyV3Params(
            scale=float(rng.uniform(0.5, 2.0)),
            a=float(rng.uniform(0, 2 * np.pi)),
            b_angle=float(rng.uniform(0, 2 * np.pi)),
            theta=float(rng.uniform(0, 0.9)),
        )
        u = build_steady(params, 2048)
        scale3 = params.scale**3
        assert abs(conserved(u).J) < 1e-12 * max(scale3, 1.0)
        assert is_steady(u, tol=1e-11 * max(scale3, 1.0))


def test_theta_grid_subset():
    # near the endpoint the family map is badly conditioned in double
    # precision; steadiness_measure escalates internally
    for theta in np.linspace(0, np.pi / 3, 50, endpoint=False)[[0, 13, 29, 41, 47]]:
        meas = steadiness_measure(SteadyV3Params(scale=1.0, a=0.0, b_angle=0.0, theta=float(theta)))
        assert meas.abs_j < 1e-11, theta
        assert meas.rhs_norm < 1e-11, theta


def test_suggested_trunc_monotone_and_capped():
    ts = [0.1, 0.8, 1.0, 1.02]
    truncs = [suggested_trunc(t) for t in ts]
    assert truncs == sorted(truncs)
    assert truncs[0] == 512
    assert all(t <= 6_000_000 for t in truncs)


def test_is_steady_rejects_ground_state():
    u = HardyCoefficients(0.5 ** np.arange(64))
    assert abs(conserved(u).J) == pytest.approx(16.0 / 9.0, abs=1e-12)
    assert not is_steady(u)


def test_is_steady_monomial_and_zero():
    z = np.zeros(8, dtype=complex)
    z[1] = 0.7
    assert is_steady(HardyCoefficients(z))
    assert is_steady(HardyCoefficients(np.zeros(4)))


def test_params_validation():
    with pytest.raises(ValueError):
        SteadyV3Params(scale=1.0, a=0.0, b_angle=0.0, theta=np.pi / 3)
