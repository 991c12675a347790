"""Build the two traveling-wave families and certify them against the
defining equation.

Every smooth traveling wave (besides constants) is rational: either
lam/(1 - p z^N) or the mean-shifted variant.  The pulsation and velocity
come in closed form from (lam, p, N); plugging the profile back into
    omega v0 + c D v0 = 2 J Pi(|v0|^2) + conj(J) v0^2
must leave a residual at truncation-error level.
"""

import numpy as np

from quadszego import TravelingWaveSpec, build_profile, residual_traveling, residual_profile
from quadszego.hardy import HardyCoefficients

print("=== family I: lam/(1 - p z^N) ===")
for lam, p, n in [(1.0, 0.5, 1), (0.5, 0.8, 2), (1.0, 0.2, 3)]:
    spec = TravelingWaveSpec("I", lam, p, n)
    trunc = 1024 if p >= 0.8 else 256
    prof = build_profile(spec, trunc)
    res = residual_traveling(prof, spec.omega, spec.c)
    print(f"lam={lam} p={p} N={n}:  omega={spec.omega:.6f}  c={spec.c:.6f}  residual={res:.2e}")

print("\n=== family II: mean-shifted ===")
for lam, p, n in [(1.0, 0.5, 1), (1.0, 0.8, 2)]:
    spec = TravelingWaveSpec("II", lam, p, n)
    trunc = 1024 if p >= 0.8 else 256
    prof = build_profile(spec, trunc)
    res = residual_traveling(prof, spec.omega, spec.c)
    print(f"lam={lam} p={p} N={n}:  omega={spec.omega:.6f}  c={spec.c:.6f}  residual={res:.2e}")

print("\n=== the normalized profile equation ===")
# u = 1/(1 - p z) solves varpi u + D u = 2 Pi(|u|^2) + u^2 with
# varpi = (3 - |p|^2)/(1 - |p|^2)
p = 0.6
u = HardyCoefficients(p ** np.arange(256))
varpi = (3 - p**2) / (1 - p**2)
print(f"ground state p={p}: varpi={varpi}  residual={residual_profile(u, varpi):.2e}")

# generic data is NOT a traveling wave: the residual is order one
rng = np.random.default_rng(0)
junk = HardyCoefficients((rng.standard_normal(64) + 1j * rng.standard_normal(64)) * 0.7 ** np.arange(64))
print(f"generic data: residual={residual_traveling(junk, 2.0, 1.0):.3f}  (sanity anti-test)")
