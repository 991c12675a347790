"""Core representation: projector, calculus, products, conserved quantities."""

import json

import numpy as np
import pytest

from quadszego.hardy import (
    HardyCoefficients,
    apply_D,
    conserved,
    coshift,
    inner_product,
    multiply,
    shift,
    sobolev_norm,
    szego_abs2,
    szego_project,
)


def geometric(lam, p, m):
    return HardyCoefficients(lam * np.asarray(p, dtype=complex) ** np.arange(m))


def random_state(rng, m=32, decay=None):
    decay = rng.uniform(0.3, 0.95) if decay is None else decay
    coeffs = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) * decay ** np.arange(m)
    return HardyCoefficients(coeffs)


# ---------------------------------------------------------------- projector


def test_project_drops_negative_modes():
    out = szego_project([5.0, 1.0, 2.0])  # indices -1, 0, 1
    assert out == HardyCoefficients([1.0, 2.0])


def test_project_zero():
    assert szego_project(np.zeros(7)) == HardyCoefficients(np.zeros(4))


def test_project_cosine():
    # 2cos(x) = e^{-ix} + e^{ix} -> e^{ix}
    out = szego_project([1.0, 0.0, 1.0])
    assert out == HardyCoefficients([0.0, 1.0])


def test_project_requires_odd_length():
    with pytest.raises(ValueError):
        szego_project([1.0, 2.0])


def test_projector_idempotent_and_self_adjoint():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = 9
        f = rng.standard_normal(2 * m + 1) + 1j * rng.standard_normal(2 * m + 1)
        g = rng.standard_normal(2 * m + 1) + 1j * rng.standard_normal(2 * m + 1)
        pf = np.concatenate([np.zeros(m), f[m:]])
        pg = np.concatenate([np.zeros(m), g[m:]])
        # idempotent
        assert np.array_equal(szego_project(pf).coeffs, szego_project(f).coeffs)
        # self-adjoint: (Pf|g) = (f|Pg) with the two-sided inner product
        lhs = np.vdot(g, pf)
        rhs = np.vdot(pg, f)
        assert abs(lhs - rhs) < 1e-12


# ---------------------------------------------------------------- inner product


def test_inner_product_parseval_simple():
    u = HardyCoefficients([1.0, 1.0])
    assert inner_product(u, u) == pytest.approx(2.0)


def test_inner_product_mode_orthogonality():
    assert inner_product(HardyCoefficients([0, 1]), HardyCoefficients([1, 0])) == 0


def test_inner_product_geometric_vs_quadrature():
    u = geometric(1.0, 0.5, 64)
    # oracle: 4096-point trapezoid quadrature of |u|^2 on the circle
    vals = u.boundary_values(4096)
    quad = np.mean(np.abs(vals) ** 2)
    assert inner_product(u, u).real == pytest.approx(1.0 / (1.0 - 0.25), abs=1e-12)
    assert inner_product(u, u).real == pytest.approx(quad, abs=1e-12)


def test_inner_product_conjugate_symmetric():
    rng = np.random.default_rng(1)
    u, v = random_state(rng), random_state(rng, m=20)
    assert inner_product(u, v) == pytest.approx(np.conj(inner_product(v, u)), abs=1e-14)


def test_parseval_quadrature_property():
    rng = np.random.default_rng(2)
    for _ in range(5):
        u = random_state(rng, m=256, decay=0.97)
        quad = np.mean(np.abs(u.boundary_values(4096)) ** 2)
        assert abs(inner_product(u, u).real - quad) < 1e-10


# ---------------------------------------------------------------- sobolev norm


def test_sobolev_constant():
    for s in (0.0, 0.5, 2.0):
        assert sobolev_norm(HardyCoefficients([1.0]), s) == 1.0


def test_sobolev_single_mode():
    assert sobolev_norm(HardyCoefficients([0.0, 1.0]), 0.5) == pytest.approx(np.sqrt(2))


def test_sobolev_direct_sum():
    assert sobolev_norm(HardyCoefficients([1, 1, 1]), 1.0) == pytest.approx(np.sqrt(14))


def test_sobolev_rejects_negative_s():
    with pytest.raises(ValueError):
        sobolev_norm(HardyCoefficients([1.0]), -0.5)


# ---------------------------------------------------------------- D, shift, coshift


def test_apply_D_kills_constants():
    assert apply_D(HardyCoefficients([1, 1])) == HardyCoefficients([0, 1])


def test_apply_D_multiplies_by_index():
    assert apply_D(HardyCoefficients([0, 0, 3])) == HardyCoefficients([0, 0, 6])


def test_apply_D_linear():
    rng = np.random.default_rng(3)
    u, v = random_state(rng), random_state(rng)
    lhs = apply_D(HardyCoefficients(u.coeffs + v.coeffs))
    assert np.allclose(lhs.coeffs, apply_D(u).coeffs + apply_D(v).coeffs, atol=1e-14)


def test_shift_grows_trunc():
    out = shift(HardyCoefficients([1.0, 2.0]))
    assert out.trunc == 3
    assert out == HardyCoefficients([0.0, 1.0, 2.0])


def test_coshift_drops_mean():
    assert coshift(HardyCoefficients([1.0, 2.0])) == HardyCoefficients([2.0])


def test_coshift_shift_identity():
    rng = np.random.default_rng(4)
    u = random_state(rng)
    assert coshift(shift(u)) == u


def test_shift_coshift_removes_mean():
    # S S* u = u - (u|1)
    rng = np.random.default_rng(5)
    u = random_state(rng)
    out = shift(coshift(u))
    expected = u.coeffs.copy()
    expected[0] = 0.0
    assert np.allclose(out.padded(u.trunc), expected, atol=1e-15)


# ---------------------------------------------------------------- products


def test_multiply_binomial():
    out = multiply(HardyCoefficients([1, 1]), HardyCoefficients([1, 1]))
    assert out == HardyCoefficients([1, 2, 1])


def test_multiply_by_zero():
    out = multiply(HardyCoefficients([0.0, 0.0]), HardyCoefficients([1.0, 2.0]))
    assert out.norm() == 0.0


def test_multiply_full_length_no_aliasing():
    u = HardyCoefficients([1.0, 1.0, 1.0])
    out = multiply(u, u)
    assert out.trunc == 5  # 3 + 3 - 1


def test_szego_abs2_ground_state_mass():
    u = geometric(1.0, 0.5, 64)
    # coefficient 0 of Pi(|u|^2) is Q = 1/(1-1/4); oracle: quadrature
    abs2 = szego_abs2(u)
    quad = np.mean(np.abs(u.boundary_values(4096)) ** 2)
    assert abs2.coeffs[0].real == pytest.approx(4.0 / 3.0, abs=1e-12)
    assert abs2.coeffs[0].real == pytest.approx(quad, abs=1e-12)


# ---------------------------------------------------------------- conserved


def test_conserved_single_mode():
    lam = 0.7 + 0.2j
    c = conserved(HardyCoefficients([lam]))
    assert c.Q == pytest.approx(abs(lam) ** 2)
    assert c.M == 0.0
    assert c.J == pytest.approx(abs(lam) ** 2 * lam)
    assert c.E == pytest.approx(0.5 * abs(lam) ** 6)


def test_conserved_ground_state_closed_forms():
    c = conserved(geometric(1.0, 0.5, 128))
    assert c.Q == pytest.approx(4.0 / 3.0, abs=1e-12)
    assert c.M == pytest.approx(4.0 / 9.0, abs=1e-12)
    assert c.E == pytest.approx(0.5 / 0.75**4, abs=1e-10)
    # oracle: direct double sum at M=128
    u = geometric(1.0, 0.5, 128).coeffs
    j_direct = sum(
        u[k] * u[l] * np.conj(u[k + l]) for k in range(64) for l in range(64)
    )
    assert c.J == pytest.approx(j_direct, abs=1e-12)


def test_conserved_translated_ground_state_values():
    # embedded b=-2/3, c=1/2, p=1/2 state at r=1/4
    r = 0.25
    m = 256
    coeffs = np.zeros(m, dtype=complex)
    coeffs[0] = -2 * r / (1 - r)
    coeffs[1:] = np.sqrt(r) * np.sqrt(r) ** np.arange(m - 1)
    c = conserved(HardyCoefficients(coeffs))
    assert c.Q == pytest.approx(0.777778, abs=1e-6)
    assert c.M == pytest.approx(0.444444, abs=1e-6)
    assert c.J.real == pytest.approx(-0.629630, abs=1e-6)
    assert abs(c.J.imag) < 1e-15
    assert c.E == pytest.approx(0.198216, abs=1e-6)


def test_conserved_phase_and_translation_invariance():
    rng = np.random.default_rng(6)
    u = random_state(rng, m=24)
    base = conserved(u)
    for _ in range(5):
        theta, alpha = rng.uniform(0, 2 * np.pi, 2)
        rotated = HardyCoefficients(
            np.exp(1j * theta) * u.coeffs * np.exp(1j * alpha * np.arange(u.trunc))
        )
        c = conserved(rotated)
        assert c.Q == pytest.approx(base.Q, rel=1e-13)
        assert c.M == pytest.approx(base.M, rel=1e-13)
        assert c.E == pytest.approx(base.E, rel=1e-12)


def test_energy_inequality_random_sweep():
    rng = np.random.default_rng(7)
    for _ in range(500):
        c = conserved(random_state(rng, m=int(rng.integers(2, 40))))
        bound = 0.5 * c.Q**2 * (c.Q + c.M)
        assert c.E <= bound * (1 + 1e-12)


def test_energy_equality_on_geometric_states():
    rng = np.random.default_rng(8)
    for _ in range(20):
        lam = rng.standard_normal() + 1j * rng.standard_normal()
        p = rng.uniform(0.0, 0.85) * np.exp(2j * np.pi * rng.uniform())
        c = conserved(geometric(lam, p, 256))
        bound = 0.5 * c.Q**2 * (c.Q + c.M)
        assert abs(c.E - bound) <= 1e-12 * bound


def test_e_is_half_j_squared():
    rng = np.random.default_rng(9)
    c = conserved(random_state(rng))
    assert c.E == 0.5 * abs(c.J) ** 2


# ---------------------------------------------------------------- value semantics


def test_equality_after_zero_padding():
    assert HardyCoefficients([1.0, 2.0]) == HardyCoefficients([1.0, 2.0, 0.0, 0.0])
    assert HardyCoefficients([1.0, 2.0]) != HardyCoefficients([1.0, 2.0, 3.0])


def test_isclose_per_mode_tolerance():
    u = HardyCoefficients([1.0, 2.0])
    v = HardyCoefficients([1.0 + 5e-13, 2.0])
    assert u.isclose(v)
    assert not u.isclose(HardyCoefficients([1.0 + 5e-11, 2.0]))


def test_coefficients_immutable():
    u = HardyCoefficients([1.0, 2.0])
    with pytest.raises(ValueError):
        u.coeffs[0] = 5.0


def test_json_round_trip_exact():
    rng = np.random.default_rng(10)
    u = random_state(rng, m=17)
    payload = json.loads(json.dumps(u.to_json()))
    back = HardyCoefficients.from_json(payload)
    assert np.array_equal(back.coeffs, u.coeffs)
    assert back.trunc == u.trunc


def test_json_rejects_mismatched_trunc():
    with pytest.raises(ValueError):
        HardyCoefficients.from_json({"trunc": 3, "re": [1.0], "im": [0.0]})
