"""Truncated Hardy-space representation on the torus.

A state is a finite vector of Fourier coefficients ``u_hat(0..M-1)``; all
negative modes are identically zero (Hardy constraint).  Everything here is a
pure function over immutable values: the coefficient buffer of a
:class:`HardyCoefficients` is frozen at construction, so instances are safe to
share across threads.

Conventions
-----------
* inner product ``(u|v) = sum_k u_hat(k) * conj(v_hat(k))`` (normalized
  Lebesgue measure on the circle, Parseval);
* products are exact full-length convolutions (never modulo wraparound);
  callers truncate afterwards when they need a fixed state dimension;
* conjugation maps the coefficient at index ``k`` to its conjugate at ``-k``
  on a two-sided scratch buffer; the projector then re-extracts indices
  ``>= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.signal import fftconvolve

__all__ = [
    "HardyCoefficients",
    "ConservedTriple",
    "szego_project",
    "inner_product",
    "sobolev_norm",
    "apply_D",
    "shift",
    "coshift",
    "multiply",
    "szego_abs2",
    "conserved",
    "conv_full",
]

# Direct convolution below this output length, FFT above.  Both are exact
# full-length (alias-free) products; the FFT path only trades a few ulps of
# round-off for the O(n log n) cost needed by near-boundary poles.
_FFT_CONV_THRESHOLD = 8192

#: default truncation for experiments (escalate to 1024 when |p| >= 0.8)
DEFAULT_TRUNC = 256


def conv_full(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact full-length linear convolution of two coefficient vectors."""
    n = len(a) + len(b) - 1
    if n <= _FFT_CONV_THRESHOLD:
        return np.convolve(a, b)
    return fftconvolve(a, b)


@dataclass(frozen=True)
class HardyCoefficients:
    """Truncated sequence of nonnegative-frequency Fourier coefficients.

    Parameters
    ----------
    coeffs : sequence of complex
        ``u_hat(k)`` for ``k = 0 .. M-1``.  Stored as a read-only
        ``complex128`` array; ``trunc`` is its length.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def trunc(self) -> int:
        return len(self.coeffs)

    def padded(self, m: int) -> np.ndarray:
        """Coefficient vector zero-padded (or identical) to length ``m``."""
        if m < self.trunc:
            raise ValueError(f"cannot pad {self.trunc} modes down to {m}")
        if m == self.trunc:
            return self.coeffs
        out = np.zeros(m, dtype=np.complex128)
        out[: self.trunc] = self.coeffs
        return out

    def truncated(self, m: int) -> "HardyCoefficients":
        """Copy restricted (or zero-padded) to exactly ``m`` modes."""
        if m <= self.trunc:
            return HardyCoefficients(self.coeffs[:m])
        return HardyCoefficients(self.padded(m))

    def norm(self) -> float:
        """L2 norm ``sqrt((u|u))``."""
        return float(np.linalg.norm(self.coeffs))

    def evaluate(self, z) -> np.ndarray:
        """Evaluate ``sum_k u_hat(k) z^k`` for ``|z| <= 1`` (vectorized)."""
        z = np.asarray(z, dtype=np.complex128)
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def boundary_values(self, n: int) -> np.ndarray:
        """Values on the equispaced grid ``exp(2 pi i j / n)``, ``j = 0..n-1``."""
        return self.evaluate(np.exp(2j * np.pi * np.arange(n) / n))

    # Two values with different trunc compare equal iff they agree after
    # zero-padding to the larger trunc.
    def __eq__(self, other) -> bool:
        if not isinstance(other, HardyCoefficients):
            return NotImplemented
        m = max(self.trunc, other.trunc)
        return bool(np.array_equal(self.padded(m), other.padded(m)))

    def isclose(self, other: "HardyCoefficients", tol: float = 1e-12) -> bool:
        """Per-mode comparison with absolute tolerance (default 1e-12)."""
        m = max(self.trunc, other.trunc)
        return bool(np.max(np.abs(self.padded(m) - other.padded(m))) <= tol)

    def __hash__(self):
        # strip trailing zeros so padded-equal values hash alike
        arr = self.coeffs
        nz = np.nonzero(arr)[0]
        key = arr[: nz[-1] + 1].tobytes() if nz.size else b""
        return hash(key)

    def to_json(self) -> dict:
        """JSON-ready payload ``{"trunc": M, "re": [...], "im": [...]}``."""
        return {
            "trunc": self.trunc,
            "re": self.coeffs.real.tolist(),
            "im": self.coeffs.imag.tolist(),
        }

    @staticmethod
    def from_json(payload: dict) -> "HardyCoefficients":
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
        if len(re) != payload["trunc"] or len(im) != payload["trunc"]:
            raise ValueError("trunc does not match coefficient arrays")
        return HardyCoefficients(re + 1j * im)


@dataclass(frozen=True)
class ConservedTriple:
    """Conserved quantities of a state: mass Q, momentum M, energy E and the
    cubic functional J with ``E = |J|^2 / 2``."""

    Q: float
    M: float
    E: float
    J: complex


def szego_project(full: Sequence[complex]) -> HardyCoefficients:
    """Project a two-sided coefficient sequence onto nonnegative modes.

    ``full`` must have odd length ``2M+1`` and is read as indices
    ``-M .. M``; the output keeps indices ``0 .. M``.
    """
    arr = np.asarray(full, dtype=np.complex128)
    if arr.ndim != 1 or arr.size % 2 == 0:
        raise ValueError("two-sided input must have odd length 2M+1")
    center = arr.size // 2
    return HardyCoefficients(arr[center:])


def inner_product(u: HardyCoefficients, v: HardyCoefficients) -> complex:
    """``(u|v) = sum_k u_hat(k) conj(v_hat(k))`` after zero-padding."""
    m = max(u.trunc, v.trunc)
    return complex(np.vdot(v.padded(m), u.padded(m)))


def sobolev_norm(u: HardyCoefficients, s: float) -> float:
    """``sqrt(sum_k (1+k)^{2s} |u_hat(k)|^2)`` for ``s >= 0``.

    At ``s = 1/2`` the weight is ``1 + k``, the energy-space norm.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    k = np.arange(u.trunc, dtype=float)
    return float(np.sqrt(np.sum((1.0 + k) ** (2 * s) * np.abs(u.coeffs) ** 2)))


def apply_D(u: HardyCoefficients) -> HardyCoefficients:
    """Frequency multiplier ``u_hat(k) -> k u_hat(k)`` (D = -i d/dx = z d/dz)."""
    k = np.arange(u.trunc)
    return HardyCoefficients(k * u.coeffs)


def shift(u: HardyCoefficients) -> HardyCoefficients:
    """Multiply by z: coefficients move up one index; trunc grows by one so
    the top mode is never dropped."""
    out = np.zeros(u.trunc + 1, dtype=np.complex128)
    out[1:] = u.coeffs
    return HardyCoefficients(out)


def coshift(u: HardyCoefficients) -> HardyCoefficients:
    """Adjoint shift S*: drops ``u_hat(0)`` and moves everything down.

    ``coshift(shift(u)) == u`` and ``shift(coshift(u)) == u - (u|1)``.
    """
    if u.trunc == 1:
        return HardyCoefficients(np.zeros(1, dtype=np.complex128))
    return HardyCoefficients(u.coeffs[1:])


def multiply(u: HardyCoefficients, v: HardyCoefficients, trunc: int | None = None) -> HardyCoefficients:
    """Pointwise product on the circle = exact coefficient convolution.

    The result has full length ``trunc_u + trunc_v - 1`` (no aliasing); pass
    ``trunc`` to cut back to a fixed state dimension afterwards.
    """
    prod = conv_full(u.coeffs, v.coeffs)
    if trunc is not None:
        prod = prod[:trunc] if trunc <= len(prod) else np.concatenate(
            [prod, np.zeros(trunc - len(prod), dtype=np.complex128)]
        )
    return HardyCoefficients(prod)


def szego_abs2(u: HardyCoefficients, trunc: int | None = None) -> HardyCoefficients:
    """``Pi(|u|^2)`` computed alias-free.

    The two-sided coefficients of ``|u|^2`` at offset ``d`` are
    ``sum_k u_hat(k+d) conj(u_hat(k))``; only ``d >= 0`` is kept.
    """
    c = u.coeffs
    two_sided = conv_full(c, np.conj(c[::-1]))  # index j corresponds to d = j-(M-1)
    nonneg = two_sided[u.trunc - 1 :]
    if trunc is not None:
        nonneg = nonneg[:trunc]
    return HardyCoefficients(nonneg)


def conserved(u: HardyCoefficients) -> ConservedTriple:
    """Mass, momentum, energy and the functional J of a state.

    ``Q = sum |u_hat|^2``, ``M = sum k |u_hat|^2``,
    ``J = sum_{k,l} u_hat(k) u_hat(l) conj(u_hat(k+l)) = (u^2|u)`` and
    ``E = |J|^2 / 2``.
    """
    c = u.coeffs
    absq = np.abs(c) ** 2
    q = float(np.sum(absq))
    mom = float(np.sum(np.arange(u.trunc) * absq))
    u2 = conv_full(c, c)
    j = complex(np.vdot(c, u2[: u.trunc]))
    return ConservedTriple(Q=q, M=mom, E=0.5 * abs(j) ** 2, J=j)
