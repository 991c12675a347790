"""Matrix realizations of the Hankel/Toeplitz operator calculus.

The Hankel operator of symbol ``u`` is the antilinear map ``h -> Pi(u conj(h))``.
Antilinear operators are never materialized as doubled real-linear matrices;
instead a matrix ``H`` with entries ``H[j,k] = u_hat(j+k)`` acts as
``h -> H @ conj(h)``, and every composed identity below is expanded with the
conjugation placed explicitly.  With ``A`` the (Hermitian) Toeplitz matrix of
``u + conj(u)``, the operator identities of the flow's Lax pair become plain
matrix identities:

    ``K_X = A K + K A^T``          (antilinear K, X = 2 Pi(|u|^2) + u^2)
    ``H_X = A H + H A^T - u u^T``

because ``conj(A) = A^T`` for Hermitian ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import toeplitz as _toeplitz

from .errors import NotEigenvector, PoleCollision
from .hardy import (
    HardyCoefficients,
    conserved,
    inner_product,
    multiply,
    szego_abs2,
)

__all__ = [
    "hankel",
    "shifted_hankel",
    "toeplitz",
    "a_u",
    "apply_hankel",
    "SpectralReport",
    "spectral_report",
    "verify_lax",
    "AuDReport",
    "verify_au_minus_d",
    "verify_profile_identities",
    "verify_syst_pl",
]

#: relative eigenvalue threshold separating true finite-rank spectra from round-off
DEFAULT_RANK_TOL = 1e-10


def _symbol_matrix(u: HardyCoefficients, size: int | None, offset: int) -> np.ndarray:
    size = u.trunc if size is None else size
    if size < 2:
        raise ValueError("matrix size must be >= 2 (dominance undefined below that)")
    full = np.zeros(2 * size + offset, dtype=np.complex128)
    avail = min(len(full), u.trunc)
    full[:avail] = u.coeffs[:avail]
    j = np.arange(size)
    return full[j[:, None] + j[None, :] + offset]


def hankel(u: HardyCoefficients, size: int | None = None) -> np.ndarray:
    """Hankel matrix ``H[j,k] = u_hat(j+k)`` (zero beyond truncation).

    Realizes the antilinear map ``h -> Pi(u conj(h))`` as ``H @ conj(h)``.
    """
    return _symbol_matrix(u, size, offset=0)


def shifted_hankel(u: HardyCoefficients, size: int | None = None) -> np.ndarray:
    """Shifted Hankel matrix ``K[j,k] = u_hat(j+k+1)`` (symbol ``S* u``)."""
    return _symbol_matrix(u, size, offset=1)


def apply_hankel(mat: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Apply an antilinear Hankel-type matrix: ``mat @ conj(h)``."""
    return mat @ np.conj(h)


def toeplitz(symbol_two_sided: np.ndarray, size: int) -> np.ndarray:
    """Toeplitz matrix ``T[j,k] = b_hat(j-k)`` of a two-sided symbol.

    ``symbol_two_sided`` has odd length ``2m+1`` read as indices ``-m..m``.
    Hermitian whenever the symbol is real-valued on the circle.
    """
    arr = np.asarray(symbol_two_sided, dtype=np.complex128)
    if arr.ndim != 1 or arr.size % 2 == 0:
        raise ValueError("two-sided symbol must have odd length 2m+1")
    if size < 2:
        raise ValueError("matrix size must be >= 2")
    m = arr.size // 2
    col = np.zeros(size, dtype=np.complex128)  # b_hat(j), j >= 0
    row = np.zeros(size, dtype=np.complex128)  # b_hat(-k), k >= 0
    npos = min(size, m + 1)
    col[:npos] = arr[m : m + npos]
    row[:npos] = arr[m::-1][:npos]
    return _toeplitz(col, row)


def a_u(u: HardyCoefficients, size: int | None = None) -> np.ndarray:
    """Hermitian matrix of ``T_u + T_conj(u)``: ``A[j,k] = u_hat(j-k) + conj(u_hat(k-j))``."""
    size = u.trunc if size is None else size
    if size < 2:
        raise ValueError("matrix size must be >= 2")
    col = u.padded(max(size, u.trunc))[:size]
    t_u = _toeplitz(col, np.zeros(size, dtype=np.complex128))
    return t_u + t_u.conj().T


@dataclass(frozen=True)
class DominanceEntry:
    """One shared positive eigenvalue of the squared Hankel pair."""

    sigma2: float  # eigenvalue of the squared operators
    label: str  # "H" or "K"
    dim_E: int  # multiplicity in spec(H^2)
    dim_F: int  # multiplicity in spec(K^2)


@dataclass(frozen=True, eq=False)
class SpectralReport:
    """Eigen-structure of ``H_u^2`` and ``K_u^2`` with dominance labels.

    ``projections`` maps each K-dominant ``sigma`` (including 0 for the
    kernel part) to the projection ``u_sigma`` of ``u`` onto the
    corresponding eigenspace of ``K_u^2``; summing them reconstructs ``u``.
    """

    h2_eigs: np.ndarray  # descending, nonnegative
    k2_eigs: np.ndarray
    rank_H: int
    rank_K: int
    dominance: tuple[DominanceEntry, ...]
    projections: dict[float, HardyCoefficients]
    unresolved: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "h2_eigs": self.h2_eigs.tolist(),
            "k2_eigs": self.k2_eigs.tolist(),
            "rank_H": self.rank_H,
            "rank_K": self.rank_K,
            "dominance": [
                {
                    "sigma2": d.sigma2,
                    "label": d.label,
                    "dim_E": d.dim_E,
                    "dim_F": d.dim_F,
                }
                for d in self.dominance
            ],
            "unresolved": self.unresolved,
            "notes": list(self.notes),
        }


def _hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def squared_hankel_matrices(u: HardyCoefficients, size: int | None = None):
    """The linear PSD matrices ``H_u^2 = H conj(H)`` and ``K_u^2 = K conj(K)``."""
    h = hankel(u, size)
    k = shifted_hankel(u, size)
    return _hermitize(h @ np.conj(h)), _hermitize(k @ np.conj(k))


def spectral_report(u: HardyCoefficients, tol: float = DEFAULT_RANK_TOL) -> SpectralReport:
    """Eigen-decompose ``H_u^2`` and ``K_u^2`` and classify shared eigenvalues.

    ``tol`` is relative to the largest eigenvalue: numerical rank counts
    eigenvalues above ``tol * max_eig``; levels closer than ``10 * tol *
    max_eig`` set the ``unresolved`` flag (clustered spectrum, labels
    unreliable).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    h2, k2 = squared_hankel_matrices(u)
    h_eigs = np.linalg.eigvalsh(h2)
    k_eigs, k_vecs = np.linalg.eigh(k2)
    h_eigs = h_eigs[::-1].copy()
    k_eigs = k_eigs[::-1].copy()
    k_vecs = k_vecs[:, ::-1]

    scale = max(h_eigs[0] if len(h_eigs) else 0.0, 0.0)
    thresh = tol * scale
    cluster_gap = tol * scale
    warn_gap = 10 * tol * scale

    rank_h = int(np.sum(h_eigs > thresh))
    rank_k = int(np.sum(k_eigs > thresh))

    uvec = u.padded(h2.shape[0])
    unorm = np.linalg.norm(uvec)

    notes: list[str] = []
    unresolved = False

    # group positive levels of both spectra; values within cluster_gap merge
    tagged = sorted(
        [(float(v), "E") for v in h_eigs[:rank_h]] + [(float(v), "F") for v in k_eigs[:rank_k]],
        reverse=True,
    )
    clusters: list[dict] = []
    for value, tag in tagged:
        if clusters and clusters[-1]["lo"] - value <= cluster_gap:
            clusters[-1]["lo"] = value
            clusters[-1][tag] += 1
            clusters[-1]["values"].append(value)
        else:
            clusters.append({"lo": value, tag: 1, ("F" if tag == "E" else "E"): 0, "values": [value]})
    for a, b in zip(clusters, clusters[1:]):
        if min(a["values"]) - max(b["values"]) <= warn_gap:
            unresolved = True
            notes.append(
                f"levels {np.mean(a['values']):.6e} and {np.mean(b['values']):.6e} closer than 10*tol"
            )

    dominance: list[DominanceEntry] = []
    projections: dict[float, HardyCoefficients] = {}
    for cl in clusters:
        sigma2 = float(np.mean(cl["values"]))
        m_e, m_f = cl["E"], cl["F"]
        if m_e == m_f + 1:
            label = "H"
        elif m_f == m_e + 1:
            label = "K"
        else:
            label = "?"
            unresolved = True
            notes.append(f"level {sigma2:.6e}: multiplicities E={m_e}, F={m_f} not off by one")
        dominance.append(DominanceEntry(sigma2=sigma2, label=label, dim_E=m_e, dim_F=m_f))
        if label == "K":
            sel = np.abs(k_eigs[:rank_k] - sigma2) <= max(cluster_gap, 0.5 * warn_gap)
            basis = k_vecs[:, :rank_k][:, sel]
            coeffs = basis.conj().T @ uvec
            proj = basis @ coeffs
            # dominance requires u not orthogonal to F; corroborate
            if np.linalg.norm(proj) <= np.sqrt(tol) * unorm:
                unresolved = True
                notes.append(f"K-dominant level {sigma2:.6e} nearly orthogonal to u")
            projections[float(np.sqrt(max(sigma2, 0.0)))] = HardyCoefficients(proj)

    # kernel component: u minus its projections onto all positive K^2 levels
    pos_basis = k_vecs[:, :rank_k]
    kernel_part = uvec - pos_basis @ (pos_basis.conj().T @ uvec)
    projections[0.0] = HardyCoefficients(kernel_part)

    return SpectralReport(
        h2_eigs=h_eigs,
        k2_eigs=k_eigs,
        rank_H=rank_h,
        rank_K=rank_k,
        dominance=tuple(dominance),
        projections=projections,
        unresolved=unresolved,
        notes=tuple(notes),
    )


def lax_symbol(u: HardyCoefficients, trunc: int | None = None) -> HardyCoefficients:
    """The evolved symbol ``X(u) = 2 Pi(|u|^2) + u^2`` (truncated like ``u``)."""
    trunc = u.trunc if trunc is None else trunc
    x = 2.0 * szego_abs2(u, trunc=trunc).padded(trunc) + multiply(u, u, trunc=trunc).padded(trunc)
    return HardyCoefficients(x)


def verify_lax(u: HardyCoefficients, block: int | None = None) -> tuple[float, float]:
    """Operator-norm residuals of the two Lax-pair identities.

    Both sides are built from the same ``trunc``-mode data, with the symbol
    ``X(u)`` truncated back to the state dimension.  On a leading
    ``block x block`` corner the identities are algebraically exact for the
    truncated symbol, so the block residual measures round-off only; the full
    matrix residual additionally sees the symbol-tail truncation and decays
    geometrically as ``trunc`` grows.

    Returns ``(res_K, res_H)``.
    """
    m = u.trunc
    x = lax_symbol(u)
    h = hankel(u, m)
    k = shifted_hankel(u, m)
    a = a_u(u, m)
    uvec = u.coeffs
    kx = shifted_hankel(x, m)
    hx = hankel(x, m)
    res_k = kx - (a @ k + k @ a.T)
    res_h = hx - (a @ h + h @ a.T - np.outer(uvec, uvec))
    if block is not None:
        res_k = res_k[:block, :block]
        res_h = res_h[:block, :block]
    return float(np.linalg.norm(res_k, 2)), float(np.linalg.norm(res_h, 2))


@dataclass(frozen=True)
class AuDReport:
    """Check of the traveling-wave eigenstructure of ``A_u - D``.

    ``eigen_residual`` is the relative residual of
    ``(A_u - D) u_sigma = (varpi + n_sigma)/2 u_sigma``; ``zeta`` the
    proportionality constant in ``K_u(u_sigma) = zeta z^{n_sigma-1} u_sigma``
    with ``parallel_residual`` its relative defect; ``ladder`` the spectrum of
    ``A_u - D`` restricted to the dominant eigenspace, which must consist of
    simple consecutive values starting at ``(varpi + 2 - n_sigma)/2``.
    """

    n_sigma: int
    sigma: float
    eigen_residual: float
    eigenvalue: float
    zeta: complex
    parallel_residual: float
    ladder: tuple[float, ...]
    ladder_residual: float

    @property
    def empty(self) -> bool:
        return self.n_sigma == 0


def verify_au_minus_d(
    u: HardyCoefficients,
    varpi: float,
    tol: float = 1e-8,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> AuDReport:
    """Verify the ``A_u - D`` eigenvector identities for a profile ``u``.

    Raises :class:`NotEigenvector` when the eigen-residual exceeds ``tol``
    (the input is then not a traveling-wave profile for this ``varpi``).
    For constant ``u`` the report degenerates to the empty ladder.
    """
    m = u.trunc
    report = spectral_report(u, tol=rank_tol)
    if report.rank_K == 0:
        return AuDReport(
            n_sigma=0,
            sigma=0.0,
            eigen_residual=0.0,
            eigenvalue=0.5 * varpi,
            zeta=0j,
            parallel_residual=0.0,
            ladder=(),
            ladder_residual=0.0,
        )

    # dominant sigma: the largest K-dominant level
    k_levels = [d for d in report.dominance if d.label == "K"]
    if not k_levels:
        raise NotEigenvector("no K-dominant eigenvalue found")
    top = k_levels[0]
    sigma = float(np.sqrt(top.sigma2))
    n_sigma = top.dim_F
    u_sigma = report.projections[sigma].padded(m)

    a = a_u(u, m)
    aud = a - np.diag(np.arange(m, dtype=np.complex128))
    lam = 0.5 * (varpi + n_sigma)
    nrm = np.linalg.norm(u_sigma)
    eigen_residual = float(np.linalg.norm(aud @ u_sigma - lam * u_sigma) / nrm)
    if eigen_residual > tol:
        raise NotEigenvector(
            f"(A_u - D) residual {eigen_residual:.3e} exceeds {tol:.1e}; "
            "input is not a traveling-wave profile for this varpi"
        )

    # K_u(u_sigma) against z^{n_sigma - 1} u_sigma
    kmat = shifted_hankel(u, m)
    ku = kmat @ np.conj(u_sigma)
    shifted = np.zeros(m, dtype=np.complex128)
    shifted[n_sigma - 1 :] = u_sigma[: m - (n_sigma - 1)]
    zeta = complex(np.vdot(shifted, ku) / np.vdot(shifted, shifted))
    parallel_residual = float(np.linalg.norm(ku - zeta * shifted) / np.linalg.norm(ku))

    # ladder: spectrum of A_u - D restricted to F (eigenspace of K^2 at sigma^2)
    k2 = _hermitize(kmat @ np.conj(kmat))
    k_eigs, k_vecs = np.linalg.eigh(k2)
    scale = float(k_eigs[-1])
    sel = np.abs(k_eigs - top.sigma2) <= 10 * rank_tol * scale
    basis = k_vecs[:, sel]
    small = _hermitize(basis.conj().T @ aud @ basis)
    ladder = np.linalg.eigvalsh(small)
    expected = 0.5 * (varpi + 2 - n_sigma) + np.arange(n_sigma)
    ladder_residual = float(np.max(np.abs(np.sort(ladder) - expected))) if len(ladder) == n_sigma else np.inf

    return AuDReport(
        n_sigma=n_sigma,
        sigma=sigma,
        eigen_residual=eigen_residual,
        eigenvalue=lam,
        zeta=zeta,
        parallel_residual=parallel_residual,
        ladder=tuple(float(x) for x in np.sort(ladder)),
        ladder_residual=ladder_residual,
    )


def verify_profile_identities(u: HardyCoefficients, varpi: float, n_poles: int) -> dict:
    """Scalar identities satisfied by normalized multi-pole profiles.

    For ``u`` solving the profile equation with ``(u|1) = N = n_poles``:
    ``varpi N = 2Q + N^2`` and, per dominant level,
    ``(varpi + n_m - 2N)(u_m|1) = 2 ||u_m||^2`` with ``(u_m|1)`` real positive.
    """
    q = conserved(u).Q
    res_q = abs(varpi * n_poles - 2.0 * q - n_poles**2)
    report = spectral_report(u)
    one = HardyCoefficients(np.ones(1))
    umvm = []
    for d in report.dominance:
        if d.label != "K":
            continue
        sig = float(np.sqrt(d.sigma2))
        um = report.projections[sig]
        mean = inner_product(um, one)
        umvm.append(
            {
                "n_m": d.dim_F,
                "mean": mean,
                "residual": abs((varpi + d.dim_F - 2 * n_poles) * mean - 2.0 * um.norm() ** 2),
                "mean_positive": mean.real > 0 and abs(mean.imag) < 1e-8 * max(1.0, mean.real),
            }
        )
    return {"q_residual": res_q, "umvm": umvm, "mean_residual": abs(inner_product(u, one) - n_poles)}


def verify_syst_pl(p_points, varpi: float) -> float:
    """Max modulus of the pole-system residuals.

    For each pole ``p_l``:
    ``(varpi - 1)/2 - sum_kappa 1/(1 - p_l conj(p_kappa))
    - sum_{kappa != l} p_l/(p_l - p_kappa)``.
    """
    p = np.asarray(p_points, dtype=np.complex128)
    if np.any(np.abs(p) >= 1):
        raise ValueError("all poles must satisfy |p| < 1")
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(p[i] - p[j]) < 1e-12:
                raise PoleCollision(f"poles {i} and {j} coincide within 1e-12")
    worst = 0.0
    for l in range(n):
        s1 = np.sum(1.0 / (1.0 - p[l] * np.conj(p)))
        s2 = sum(p[l] / (p[l] - p[k]) for k in range(n) if k != l)
        worst = max(worst, abs(0.5 * (varpi - 1.0) - s1 - s2))
    return float(worst)
