"""The flow restricted to u = b + c z/(1 - p z) closes as three complex ODEs.

Integrating those ODEs and embedding back must match the full spectral
integration of the same datum; the deviation stays below 1e-6 in L2.  The
modulus x = |c| sqrt(M) obeys a closed evolution law in conserved
quantities only, checked here by finite differences.
"""

import numpy as np

from quadszego import SimulationConfig, V3State, embed, evolx_residual, integrate, v3_integrate

s0 = V3State(b=0.3 + 0.1j, c=1.0, p=0.4)

ode = v3_integrate(s0, 1e-4, 2.0, stride=2000)
cfg = SimulationConfig(dt=1e-3, t_final=2.0, trunc=256, monitor_stride=200, tol_drift=1e-6)
pde = integrate(embed(s0, 256), cfg)

by_time = {round(float(t), 9): st for t, st in zip(ode.state_times, ode.states)}
print("t     reduced-vs-full L2 gap")
for t, st in zip(pde.times, pde.states):
    key = round(float(t), 9)
    if key in by_time:
        gap = np.linalg.norm(embed(by_time[key], 256).coeffs - st.coeffs)
        print(f"{t:4.1f}  {gap:.3e}")

print("\nreduced-system drift:", {k: f"{v:.2e}" for k, v in ode.drift.items()})
print("pole trajectory: |p(0)| = 0.4 ->",
      " -> ".join(f"{abs(st.p):.3f}" for st in ode.states[::4]))

res = evolx_residual(v3_integrate(s0, 1e-4, 2.0, stride=1000))
res_half = evolx_residual(v3_integrate(s0, 5e-5, 2.0, stride=1000))
print(f"\nclosed evolution law of x, FD residual: {res:.2e} at dt=1e-4, "
      f"{res_half:.2e} at dt=5e-5 (ratio {res/res_half:.2f}, second order)")
