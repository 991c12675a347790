"""Hankel/Toeplitz matrices, spectra, dominance, and the operator identities."""

import numpy as np
import pytest

from quadszego.errors import NotEigenvector, PoleCollision
from quadszego.hardy import HardyCoefficients, conserved, inner_product
from quadszego.operators import (
    a_u,
    hankel,
    shifted_hankel,
    spectral_report,
    squared_hankel_matrices,
    toeplitz,
    verify_au_minus_d,
    verify_lax,
    verify_profile_identities,
    verify_syst_pl,
)


def geometric(lam, p, m):
    return HardyCoefficients(lam * np.asarray(p, dtype=complex) ** np.arange(m))


def multi_pole(n, alpha, m):
    """Normalized profile N/(1 - alpha z^N)."""
    arr = np.zeros(m, dtype=complex)
    arr[::n] = n * np.asarray(alpha, dtype=complex) ** np.arange(len(arr[::n]))
    return HardyCoefficients(arr)


def random_state(rng, m=24):
    decay = rng.uniform(0.3, 0.9)
    return HardyCoefficients(
        (rng.standard_normal(m) + 1j * rng.standard_normal(m)) * decay ** np.arange(m)
    )


# ---------------------------------------------------------------- construction


def test_hankel_of_z():
    h = hankel(HardyCoefficients([0.0, 1.0]))
    expected = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.array_equal(h, expected)


def test_shifted_hankel_kills_constants():
    k = shifted_hankel(HardyCoefficients([3.0, 0.0]))
    assert np.all(k == 0)


def test_matrix_size_rejected_below_two():
    with pytest.raises(ValueError):
        hankel(HardyCoefficients([1.0]), size=1)


def test_hankel_structure_random():
    rng = np.random.default_rng(0)
    u = random_state(rng, m=12)
    h = hankel(u)
    k = shifted_hankel(u)
    for j in range(12):
        for l in range(12):
            expected = u.coeffs[j + l] if j + l < 12 else 0.0
            assert h[j, l] == expected
            expected_k = u.coeffs[j + l + 1] if j + l + 1 < 12 else 0.0
            assert k[j, l] == expected_k


def test_toeplitz_structure_and_hermitian_for_real_symbol():
    rng = np.random.default_rng(1)
    half = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    # real-valued symbol: b_hat(-k) = conj(b_hat(k))
    two_sided = np.concatenate([np.conj(half[::-1]), [rng.standard_normal() + 0j], half])
    t = toeplitz(two_sided, size=6)
    center = len(two_sided) // 2
    for j in range(6):
        for l in range(6):
            d = j - l
            expected = two_sided[center + d] if abs(d) <= 4 else 0.0
            assert t[j, l] == expected
    assert np.allclose(t, t.conj().T, atol=1e-15)


def test_a_u_hermitian_by_construction():
    rng = np.random.default_rng(2)
    a = a_u(random_state(rng))
    assert np.array_equal(a, a.conj().T)


# ---------------------------------------------------------------- squared operators


def test_h2_equals_k2_plus_rank_one():
    rng = np.random.default_rng(3)
    for _ in range(5):
        u = random_state(rng, m=20)
        h2, k2 = squared_hankel_matrices(u)
        diff = h2 - k2 - np.outer(u.coeffs, np.conj(u.coeffs))
        assert np.max(np.abs(diff)) < 1e-12


def test_h2_of_single_mode():
    h2, _ = squared_hankel_matrices(HardyCoefficients([0.0, 1.0, 0.0]))
    assert np.allclose(h2, np.diag([1.0, 1.0, 0.0]))
    # single positive eigenvalue 1 with multiplicity 2 is the z-symbol structure;
    # the report sees one distinct level
    rep = spectral_report(HardyCoefficients([0.0, 1.0, 0.0]))
    assert rep.h2_eigs[0] == pytest.approx(1.0)
    assert rep.rank_H == 2 and rep.rank_K == 1


# ---------------------------------------------------------------- ranks & dominance


def test_rank_of_ground_state():
    rep = spectral_report(geometric(1.0, 0.5, 64))
    assert rep.rank_H == 1 and rep.rank_K == 1


def test_rank_of_generic_three_parameter_state():
    coeffs = np.zeros(64, dtype=complex)
    coeffs[0] = 1.0
    coeffs[1:] = 1.0 * 0.5 ** np.arange(63)
    rep = spectral_report(HardyCoefficients(coeffs))
    assert rep.rank_H == 2 and rep.rank_K == 1


def test_multi_pole_multiplicity_structure():
    u = multi_pole(3, 0.4, 512)
    rep = spectral_report(u)
    assert rep.rank_H == 3 and rep.rank_K == 3
    k_levels = [d for d in rep.dominance if d.label == "K"]
    assert len(k_levels) == 1
    assert k_levels[0].dim_F == 3 and k_levels[0].dim_E == 2
    h_levels = [d for d in rep.dominance if d.label == "H"]
    assert len(h_levels) == 1 and h_levels[0].dim_E == 1


def test_dominance_dimension_offset_always_one():
    rng = np.random.default_rng(4)
    for _ in range(5):
        rep = spectral_report(random_state(rng, m=16))
        for d in rep.dominance:
            assert abs(d.dim_E - d.dim_F) == 1


def test_orthogonality_of_unit_to_dominant_h_eigenvectors():
    # vectors of E_u(sigma) for K-dominant sigma are orthogonal to constants
    u = multi_pole(2, 0.45, 256)
    h2, k2 = squared_hankel_matrices(u)
    rep = spectral_report(u)
    sigma2 = next(d.sigma2 for d in rep.dominance if d.label == "K")
    eigs, vecs = np.linalg.eigh(h2)
    sel = np.abs(eigs - sigma2) < 1e-8 * eigs[-1]
    assert sel.sum() == 1  # dim E = dim F - 1 = 1
    for v in vecs[:, sel].T:
        assert abs(v[0]) < 1e-8


def test_reconstruction_from_k_dominant_projections():
    rng = np.random.default_rng(5)
    for u in [multi_pole(2, 0.4, 128), geometric(1.0, 0.6, 128), random_state(rng, m=24)]:
        rep = spectral_report(u)
        total = np.zeros(u.trunc, dtype=complex)
        for proj in rep.projections.values():
            total += proj.padded(u.trunc)
        assert np.linalg.norm(total - u.coeffs) < 1e-10


def test_unresolved_flag_on_clustered_levels():
    # nearly-degenerate pair: a small asymmetry splits the doubled level of
    # the z^2 family into two distinct levels with a tiny gap
    q = 0.5
    coeffs = (1 + 1e-3) * q ** np.arange(64) + (-q + 0j) ** np.arange(64)
    u = HardyCoefficients(coeffs)
    fine = spectral_report(u, tol=1e-10)
    assert not fine.unresolved
    gap = float(fine.k2_eigs[0] - fine.k2_eigs[1])
    assert gap > 0
    # a tol for which the retained levels sit inside the 10*tol warning band
    # but outside the clustering band must raise the flag (bands scale with
    # the leading H^2 eigenvalue)
    coarse = spectral_report(u, tol=gap / (3 * fine.h2_eigs[0]))
    assert coarse.unresolved


def test_spectral_report_rejects_bad_tol():
    with pytest.raises(ValueError):
        spectral_report(HardyCoefficients([1.0, 0.0]), tol=0.0)


def test_report_json_schema():
    rep = spectral_report(geometric(1.0, 0.5, 32))
    payload = rep.to_json()
    assert set(payload) >= {"h2_eigs", "k2_eigs", "rank_H", "rank_K", "dominance", "unresolved"}
    assert all(d["label"] in ("H", "K", "?") for d in payload["dominance"])


# ---------------------------------------------------------------- Lax identities


def test_lax_zero_symbol():
    res_k, res_h = verify_lax(HardyCoefficients([0.0, 0.0, 0.0]))
    assert res_k == 0.0 and res_h == 0.0


def test_lax_constant_symbol():
    res_k, res_h = verify_lax(HardyCoefficients([0.3 + 0.4j, 0.0, 0.0, 0.0]))
    assert res_k < 1e-13 and res_h < 1e-13


def test_lax_rational_symbols_block_residual():
    u = HardyCoefficients(0.5 ** np.arange(256) + np.concatenate([[0], (1 / 3) ** np.arange(255)]))
    res_k, res_h = verify_lax(u, block=64)
    assert res_k < 1e-9 and res_h < 1e-9


def test_lax_full_residual_decays_with_truncation():
    # oracle: the full-matrix residual tracks the symbol tail, so it must
    # collapse as M doubles (128 -> 256 -> 512 for a pole at 0.9)
    prev = None
    for m in (128, 256, 512):
        res_k, res_h = verify_lax(geometric(1.0, 0.9, m))
        if prev is not None:
            assert res_k <= prev[0] / 4
            assert res_h <= prev[1] / 4
        prev = (res_k, res_h)


# ---------------------------------------------------------------- A_u - D


def test_au_minus_d_ground_state():
    p = 0.6
    u = geometric(1.0, p, 512)
    varpi = (3 - p**2) / (1 - p**2)
    assert varpi == pytest.approx(4.125)
    rep = verify_au_minus_d(u, varpi)
    assert rep.n_sigma == 1
    assert rep.eigen_residual < 1e-10
    assert rep.eigenvalue == pytest.approx((varpi + 1) / 2)
    assert rep.ladder == pytest.approx(((varpi + 1) / 2,))


def test_au_minus_d_two_pole_family():
    u = multi_pole(2, 0.3, 256)
    varpi = 2 * (3 - 0.09) / (1 - 0.09)
    rep = verify_au_minus_d(u, varpi)
    assert rep.n_sigma == 2
    assert abs(rep.zeta) > 0
    assert rep.parallel_residual < 1e-10
    # ladder of simple consecutive eigenvalues ending at (varpi + n)/2
    assert rep.ladder_residual < 1e-9
    assert rep.ladder[0] == pytest.approx((varpi + 2 - 2) / 2, abs=1e-9)


def test_au_minus_d_constant_degenerates():
    rep = verify_au_minus_d(HardyCoefficients([2.0, 0.0, 0.0]), varpi=3.0)
    assert rep.empty
    assert rep.ladder == ()


def test_au_minus_d_rejects_non_profile():
    rng = np.random.default_rng(6)
    u = HardyCoefficients(rng.standard_normal(32) * 0.5 ** np.arange(32))
    with pytest.raises(NotEigenvector):
        verify_au_minus_d(u, varpi=4.0)


def test_profile_identities_multi_pole():
    for n in (1, 2, 3):
        alpha = 0.4
        m = 512
        arr = np.zeros(m, dtype=complex)
        arr[::n] = n * alpha ** np.arange(len(arr[::n]))
        u = HardyCoefficients(arr)
        varpi = n * (3 - alpha**2) / (1 - alpha**2)
        ident = verify_profile_identities(u, varpi, n)
        assert ident["q_residual"] < 1e-10
        assert ident["mean_residual"] < 1e-12  # (u|1) = N
        for entry in ident["umvm"]:
            assert entry["residual"] < 1e-10
            assert entry["mean_positive"]


# ---------------------------------------------------------------- pole system


def test_syst_pl_single_pole():
    varpi = (3 - 0.36) / (1 - 0.36)
    assert verify_syst_pl([0.6], varpi) < 1e-14


def test_syst_pl_two_roots():
    alpha = 0.3
    varpi = 2 * (3 - alpha**2) / (1 - alpha**2)
    roots = np.sqrt(alpha) * np.array([1.0, -1.0])
    assert verify_syst_pl(roots, varpi) < 1e-13


def test_syst_pl_three_roots():
    alpha = 0.4
    varpi = 3 * (3 - alpha**2) / (1 - alpha**2)
    roots = alpha ** (1 / 3) * np.exp(2j * np.pi * np.arange(3) / 3)
    assert verify_syst_pl(roots, varpi) < 1e-13


def test_syst_pl_pole_collision():
    with pytest.raises(PoleCollision):
        verify_syst_pl([0.5, 0.5 + 1e-14], 4.0)


def test_syst_pl_rejects_poles_outside_disc():
    with pytest.raises(ValueError):
        verify_syst_pl([1.2], 4.0)


def test_mean_of_normalized_profile_is_pole_count():
    one = HardyCoefficients(np.ones(1))
    for n in (1, 2, 3):
        u = multi_pole(n, 0.4, 256)
        assert inner_product(u, one) == pytest.approx(n, abs=1e-13)
        # consistency: varpi N = 2Q + N^2
        q = conserved(u).Q
        varpi = n * (3 - 0.16) / (1 - 0.16)
        assert varpi * n == pytest.approx(2 * q + n**2, abs=1e-10)
