"""Acceptance gate: every criterion at its stated tolerance, one line each.

Criterion 8 is asserted exactly as stated and is expected to fail on its
exit clause: the closed-form evolution law confines the perturbed orbit to
an energy level curve whose oscillation band (half-width ~0.215*gamma at
r = 1/4, i.e. 2.2e-3 at gamma = 1e-2) lies strictly inside the prescribed
exit ball.  The failure is deliberate and documented; the band value and the
vanishing y-linear fit in the reported details carry the evidence.
"""

import pytest

from quadszego import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    result = criterion(quick=False)
    print(result.line())
    detail = ", ".join(f"{k}={v}" for k, v in result.details.items())
    assert result.passed, f"{result.name} failed: {detail}"
