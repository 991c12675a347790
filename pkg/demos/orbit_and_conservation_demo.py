"""Integrate the flow and watch its exact structure.

A traveling wave evolves by pure phases: u_hat(k)(t) = u_hat(k)(0)
exp(-i (omega + c k) t).  The RK4 integrator reproduces that orbit to
~1e-9 in L2 over five time units, while mass Q, momentum M and energy E
drift at the 1e-11 level.
"""

import numpy as np

from quadszego import SimulationConfig, TravelingWaveSpec, build_profile, integrate

spec = TravelingWaveSpec("I", 1.0, 0.5, 1)
v0 = build_profile(spec, 256)
cfg = SimulationConfig(dt=1e-3, t_final=5.0, trunc=256, monitor_stride=500, tol_drift=1e-6)
traj = integrate(v0, cfg)

k = np.arange(256)
print("t      orbit error      Q")
for t, state, inv in zip(traj.times, traj.states, traj.invariants):
    exact = v0.coeffs * np.exp(-1j * (spec.omega + spec.c * k) * t)
    err = np.linalg.norm(state.coeffs - exact)
    print(f"{t:4.1f}   {err:.3e}     {inv.Q:.12f}")

print("\nmax relative drift:", {k: f"{v:.2e}" for k, v in traj.drift.items()})
print("monitored K^2 eigenvalues stay constant:")
print("  t=0:", traj.k2_spectra[0][:3])
print("  t=5:", traj.k2_spectra[-1][:3])
