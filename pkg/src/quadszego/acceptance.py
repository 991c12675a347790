"""The certification suite: every release-gating check as a callable.

Each ``criterion_*`` function performs one end-to-end verification at its
pinned tolerance and returns a :class:`CheckResult`; ``run_all`` executes the
whole matrix.  The pytest wrappers in ``tests/test_acceptance.py`` assert
these results, and the ``szego certify`` subcommand emits them as JSON.

``quick=True`` shrinks grids and horizons for a fast smoke pass; the full
run is the one that certifies.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .compose import compose_zN, verify_flow_commutation
from .dynamics import SimulationConfig, integrate, rank_conservation_check
from .hardy import HardyCoefficients, conserved
from .operators import verify_au_minus_d, verify_lax, verify_profile_identities
from .steady import SteadyV3Params, explicit_example, steadiness_measure
from .v3 import V3State, embed, evolx_residual, instability_experiment, v3_integrate
from .waves import TravelingWaveSpec, build_profile, residual_traveling, standing_wave_arc, verify_standing

__all__ = ["CheckResult", "run_all", "CRITERIA"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    runtime: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}  ({self.runtime:.1f}s)"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "runtime": self.runtime,
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def criterion_1_traveling_wave_certification(quick: bool = False) -> CheckResult:
    """Residuals of both wave families over the (lam, p, N) grid; closed-form
    pulsation/velocity spot checks to 1e-12."""
    t0 = time.time()
    lams = [0.5, 1.0] if not quick else [1.0]
    ps = [0.2, 0.5, 0.8] if not quick else [0.5]
    ns = [1, 2, 3] if not quick else [1, 2]
    worst = 0.0
    count = 0
    for family in ("I", "II"):
        for lam in lams:
            for p in ps:
                for n in ns:
                    trunc = 1024 if p >= 0.8 else 256
                    spec = TravelingWaveSpec(family, lam, p, n)
                    prof = build_profile(spec, trunc)
                    worst = max(worst, residual_traveling(prof, spec.omega, spec.c))
                    count += 1
    ref = TravelingWaveSpec("I", 1.0, 0.5, 1)
    omega_err = abs(ref.omega - 6.518518518518518)
    c_err = abs(ref.c - 1.7777777777777777)
    runtime = time.time() - t0
    passed = worst < 1e-9 and omega_err < 1e-12 and c_err < 1e-12 and runtime < 10.0
    return CheckResult(
        "1 traveling-wave certification",
        passed,
        runtime,
        {"worst_residual": worst, "profiles": count, "omega_err": omega_err, "c_err": c_err},
    )


def criterion_2_exact_orbit(quick: bool = False) -> CheckResult:
    """Simulated family-I wave matches the exact coefficient phase law in L2."""
    t0 = time.time()
    spec = TravelingWaveSpec("I", 1.0, 0.5, 1)
    v0 = build_profile(spec, 256)
    t_final = 1.0 if quick else 5.0
    cfg = SimulationConfig(dt=1e-3, t_final=t_final, trunc=256, monitor_stride=250, tol_drift=1e-6)
    traj = integrate(v0, cfg)
    k = np.arange(256)
    err = max(
        float(np.linalg.norm(st.coeffs - v0.coeffs * np.exp(-1j * (spec.omega + spec.c * k) * t)))
        for t, st in zip(traj.times, traj.states)
    )
    runtime = time.time() - t0
    return CheckResult(
        "2 exact-orbit reproduction",
        err < 1e-6 and runtime < 30.0,
        runtime,
        {"max_l2_error": err, "t_final": t_final},
    )


def criterion_3_conservation(quick: bool = False) -> CheckResult:
    """Q, M, E relative drift on the three-parameter-class datum."""
    t0 = time.time()
    s0 = V3State(b=0.3 + 0.1j, c=1.0, p=0.4)
    t_final = 2.0 if quick else 10.0
    cfg = SimulationConfig(dt=1e-3, t_final=t_final, trunc=256, monitor_stride=100, tol_drift=1e-6)
    traj = integrate(embed(s0, 256), cfg)
    worst = max(traj.drift.values())
    runtime = time.time() - t0
    return CheckResult(
        "3 conservation drift",
        worst < 1e-8 and runtime < 60.0,
        runtime,
        {"drift": dict(traj.drift), "t_final": t_final},
    )


def criterion_4_lax_identities(quick: bool = False) -> CheckResult:
    """Both operator identities: block residual < 1e-9 at M=256, full-matrix
    residual falling by >= 4x from M=256 to M=512."""
    t0 = time.time()
    m_small, m_big = (128, 256) if quick else (256, 512)
    details = {}
    passed = True
    for name, make in _lax_symbols().items():
        rk_b, rh_b = verify_lax(make(m_small), block=64)
        rk_full_small, rh_full_small = verify_lax(make(m_small))
        rk_full_big, rh_full_big = verify_lax(make(m_big))
        block_ok = max(rk_b, rh_b) < 1e-9
        decay_ok = rk_full_big <= rk_full_small / 4.0 and rh_full_big <= rh_full_small / 4.0
        passed &= block_ok and decay_ok
        details[name] = {
            "block64_K": rk_b,
            "block64_H": rh_b,
            "full_K_small": rk_full_small,
            "full_K_big": rk_full_big,
            "full_H_small": rh_full_small,
            "full_H_big": rh_full_big,
        }
    runtime = time.time() - t0
    return CheckResult("4 Lax identities", bool(passed), runtime, details)


def _lax_symbols():
    """Five rational symbols; pole moduli near 0.9 keep the symbol-tail part
    of the full-matrix residual resolvable above round-off, so its decay
    under doubling M is measurable."""

    def pole(p, m):
        return np.asarray(p, dtype=complex) ** np.arange(m)

    def mean_plus_pole(m):
        arr = pole(0.87, m)
        arr[0] += 2.0
        return HardyCoefficients(arr)

    def pole_in_z2(m):
        arr = np.zeros(m, dtype=complex)
        arr[::2] = 0.88 ** np.arange(len(arr[::2]))
        return HardyCoefficients(arr)

    return {
        "pole_0.90": lambda m: HardyCoefficients(pole(0.90, m)),
        "pole_0.88_rot": lambda m: HardyCoefficients(pole(0.88 * np.exp(0.7j), m)),
        "two_poles": lambda m: HardyCoefficients(pole(0.90, m) + 0.5 * pole(-0.85, m)),
        "mean_plus_pole": mean_plus_pole,
        "pole_in_z2_0.88": pole_in_z2,
    }


def criterion_5_integrability_signatures(quick: bool = False) -> CheckResult:
    """K^2 spectrum constant along a rank-(2,2) trajectory; ranks preserved."""
    t0 = time.time()
    coeffs = 2.0 * 0.4 ** np.arange(256) - 0.2 ** np.arange(256)  # 1/((1-.4z)(1-.2z)) in V(4)
    u0 = HardyCoefficients(coeffs)
    t_final = 1.0 if quick else 5.0
    cfg = SimulationConfig(dt=1e-3, t_final=t_final, trunc=256, monitor_stride=100, tol_drift=1e-6, n_spectrum=4)
    traj = integrate(u0, cfg)
    spec0 = traj.k2_spectra[0]
    spec_dev = float(np.max(np.abs(traj.k2_spectra - spec0)))
    off_rank = float(np.max(traj.k2_spectra[:, 2:]))
    ranks_ok = rank_conservation_check(traj, 4, tol=1e-8)
    runtime = time.time() - t0
    passed = spec_dev < 1e-6 and ranks_ok and off_rank < 1e-8
    return CheckResult(
        "5 integrability signatures",
        passed,
        runtime,
        {"spectrum_dev": spec_dev, "ranks_preserved": ranks_ok, "max_off_rank_eig": off_rank},
    )


def criterion_6_profile_eigenstructure(quick: bool = False) -> CheckResult:
    """Eigenvector identities of the normalized multi-pole profiles."""
    t0 = time.time()
    alpha = 0.4
    details = {}
    passed = True
    for n in ([1, 2] if quick else [1, 2, 3]):
        m = 256 if quick else 512
        arr = np.zeros(m, dtype=complex)
        arr[::n] = n * alpha ** np.arange(len(arr[::n]))
        u = HardyCoefficients(arr)
        varpi = n * (3.0 - alpha**2) / (1.0 - alpha**2)
        rep = verify_au_minus_d(u, varpi, tol=1e-8)
        ident = verify_profile_identities(u, varpi, n)
        umvm_res = max((e["residual"] for e in ident["umvm"]), default=np.inf)
        ok = (
            rep.eigen_residual < 1e-10
            and rep.n_sigma == n
            and abs(rep.eigenvalue - 0.5 * (varpi + n)) < 1e-12
            and rep.parallel_residual < 1e-10
            and abs(rep.zeta) > 0
            and umvm_res < 1e-10
            and ident["q_residual"] < 1e-10
        )
        passed &= ok
        details[f"N={n}"] = {
            "eigen_residual": rep.eigen_residual,
            "parallel_residual": rep.parallel_residual,
            "zeta": rep.zeta,
            "umvm_residual": umvm_res,
            "q_residual": ident["q_residual"],
        }
    runtime = time.time() - t0
    return CheckResult("6 profile eigenstructure", bool(passed), runtime, details)


def criterion_7_gagliardo_nirenberg(quick: bool = False) -> CheckResult:
    """Seeded sweep of the energy inequality; equality on geometric states."""
    t0 = time.time()
    rng = np.random.default_rng(42)
    n_samples = 1000 if quick else 10_000
    violations = 0
    worst_excess = 0.0
    for _ in range(n_samples):
        m = int(rng.integers(2, 48))
        decay = rng.uniform(0.2, 0.98)
        coeffs = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) * decay ** np.arange(m)
        c = conserved(HardyCoefficients(coeffs))
        bound = 0.5 * c.Q**2 * (c.Q + c.M)
        excess = (c.E - bound) / max(bound, 1e-300)
        worst_excess = max(worst_excess, excess)
        if excess > 1e-12:
            violations += 1
    eq_worst = 0.0
    for _ in range(100):
        lam = rng.standard_normal() + 1j * rng.standard_normal()
        p = rng.uniform(0, 0.88) * np.exp(2j * np.pi * rng.uniform())
        c = conserved(HardyCoefficients(lam * p ** np.arange(256)))
        bound = 0.5 * c.Q**2 * (c.Q + c.M)
        eq_worst = max(eq_worst, abs(c.E - bound) / bound)
    runtime = time.time() - t0
    passed = violations == 0 and eq_worst < 1e-12 and runtime < 20.0
    return CheckResult(
        "7 Gagliardo-Nirenberg sweep",
        passed,
        runtime,
        {"samples": n_samples, "violations": violations, "worst_excess": worst_excess, "equality_gap": eq_worst},
    )


def criterion_8_instability_mechanism(quick: bool = False) -> CheckResult:
    """Perturbed translated ground state: initial push, exit, gamma scaling.

    The exit clause is asserted exactly as stated.  It cannot hold: the
    closed-form evolution law confines (x, psi) to a level curve of the
    conserved energy, an oscillation band of half-width ~0.215*gamma at
    r = 1/4 (2.2e-3 at gamma = 1e-2, verified independently against the full
    spectral dynamics), strictly inside the 1e-2 exit ball.  The measured
    band and the vanishing y-linear fit are reported alongside.
    """
    t0 = time.time()
    r, gamma = 0.25, 1e-2
    t_final = 10.0 if quick else 50.0
    rep = instability_experiment(r, gamma, eps0=1e-2, dt=1e-4, t_final=t_final)
    push_ok = abs(rep.dydt2_measured / (rep.delta_ecal * rep.coeff_leading) - 1.0) < 0.05
    coeff_ok = abs(rep.coeff_leading - 0.329218) < 1e-6
    exit_ok = rep.escaped  # faithful assertion; see docstring
    order_ok = abs(rep.gamma_order - 2.0) < 0.05
    runtime = time.time() - t0
    passed = push_ok and coeff_ok and exit_ok and order_ok
    return CheckResult(
        "8 instability mechanism",
        bool(passed),
        runtime,
        {
            "dydt2_measured": rep.dydt2_measured,
            "dydt2_predicted": rep.dydt2_predicted,
            "delta_ecal": rep.delta_ecal,
            "escaped": rep.escaped,
            "y_max_abs": rep.y_max_abs,
            "exit_threshold": rep.exit_threshold,
            "y_linear_fit": rep.y_linear_fit,
            "coeff_linear_reference": rep.coeff_linear,
            "coeff_quadratic": rep.coeff_quadratic,
            "y_quadratic_fit": rep.y_quadratic_fit,
            "gamma_order": rep.gamma_order,
            "clauses": {"push": push_ok, "exit": exit_ok, "gamma_order": order_ok},
        },
    )


def criterion_9_v3_consistency(quick: bool = False) -> CheckResult:
    """Reduced ODE vs full spectral dynamics; evolution law of x by FD."""
    t0 = time.time()
    s0 = V3State(b=0.3 + 0.1j, c=1.0, p=0.4)
    t_final = 1.0 if quick else 2.0
    cfg = SimulationConfig(dt=1e-3, t_final=t_final, trunc=256, monitor_stride=100, tol_drift=1e-6)
    pde = integrate(embed(s0, 256), cfg)
    ode = v3_integrate(s0, 1e-4, t_final, stride=1000)
    by_time = {round(float(t), 9): st for t, st in zip(ode.state_times, ode.states)}
    gap = 0.0
    for t, st in zip(pde.times, pde.states):
        key = round(float(t), 9)
        if key in by_time:
            gap = max(gap, float(np.linalg.norm(embed(by_time[key], 256).coeffs - st.coeffs)))
    res_coarse = evolx_residual(v3_integrate(s0, 1e-4, t_final, stride=1000))
    res_fine = evolx_residual(v3_integrate(s0, 5e-5, t_final, stride=1000))
    ratio = res_coarse / res_fine
    runtime = time.time() - t0
    passed = gap < 1e-6 and res_coarse < 1e-5 and 2.5 < ratio
    return CheckResult(
        "9 reduced-vs-full consistency",
        passed,
        runtime,
        {"l2_gap": gap, "evolx_residual": res_coarse, "fd_scaling_ratio": ratio},
    )


def criterion_10_steady_family(quick: bool = False) -> CheckResult:
    """50-point theta grid of the equilibrium family plus the explicit example."""
    t0 = time.time()
    n_grid = 12 if quick else 50
    thetas = np.linspace(0.0, np.pi / 3.0, n_grid, endpoint=False)
    worst_j = worst_rhs = 0.0
    for th in thetas:
        meas = steadiness_measure(SteadyV3Params(scale=1.0, a=0.0, b_angle=0.0, theta=float(th)))
        worst_j = max(worst_j, meas.abs_j)
        worst_rhs = max(worst_rhs, meas.rhs_norm)
    ex = explicit_example(512)
    ex_j = abs(conserved(ex).J)
    runtime = time.time() - t0
    passed = worst_j < 1e-11 and worst_rhs < 1e-11 and ex_j < 1e-13
    return CheckResult(
        "10 steady family grid",
        passed,
        runtime,
        {"worst_abs_J": worst_j, "worst_rhs_norm": worst_rhs, "example_abs_J": ex_j, "grid": n_grid},
    )


def criterion_11_composition_invariance(quick: bool = False) -> CheckResult:
    """Flow commutation under z -> z^N; isometry and J invariance."""
    t0 = time.time()
    u0 = embed(V3State(b=0.3 + 0.1j, c=1.0, p=0.4), 128)
    t_final = 0.5 if quick else 2.0
    cfg = SimulationConfig(dt=1e-3, t_final=t_final, trunc=128, monitor_stride=100, tol_drift=1e-6)
    gaps = {n: verify_flow_commutation(u0, n, cfg) for n in (2, 3)}
    iso_err = abs(compose_zN(u0, 3).norm() - u0.norm())
    j_err = abs(conserved(compose_zN(u0, 3)).J - conserved(u0).J)
    runtime = time.time() - t0
    passed = max(gaps.values()) < 1e-6 and iso_err < 1e-14 and j_err < 1e-14
    return CheckResult(
        "11 composition invariance",
        passed,
        runtime,
        {"gap_N2": gaps[2], "gap_N3": gaps[3], "isometry_err": iso_err, "j_err": j_err},
    )


def criterion_12_standing_wave_family(quick: bool = False) -> CheckResult:
    """Arc standing wave: mode residual small and halving as trunc doubles."""
    t0 = time.time()
    theta = 0.25
    trunc = 4096 if quick else 8192
    arcs = [(0.0, 2 * np.pi * theta)]
    res = verify_standing(standing_wave_arc(theta, arcs, trunc), 16)
    res2 = verify_standing(standing_wave_arc(theta, arcs, 2 * trunc), 16)
    runtime = time.time() - t0
    passed = res < 1e-3 and res2 <= 0.65 * res
    return CheckResult(
        "12 standing-wave family",
        passed,
        runtime,
        {"residual": res, "residual_doubled": res2, "ratio": res2 / res, "trunc": trunc},
    )


CRITERIA = [
    criterion_1_traveling_wave_certification,
    criterion_2_exact_orbit,
    criterion_3_conservation,
    criterion_4_lax_identities,
    criterion_5_integrability_signatures,
    criterion_6_profile_eigenstructure,
    criterion_7_gagliardo_nirenberg,
    criterion_8_instability_mechanism,
    criterion_9_v3_consistency,
    criterion_10_steady_family,
    criterion_11_composition_invariance,
    criterion_12_standing_wave_family,
]


def run_all(quick: bool = False, verbose: bool = True) -> list[CheckResult]:
    results = []
    for fn in CRITERIA:
        res = fn(quick=quick)
        results.append(res)
        if verbose:
            print(res.line(), flush=True)
    return results
