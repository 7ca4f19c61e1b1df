"""Spectral mode algebra on a Hermite-Gauss basis.

A Gaussian mean-field envelope

    u(omega) = Delta_omega^{-1/2} (2 pi)^{-1/4} exp(-(omega-omega0)^2 / (4 Delta_omega^2))

defines the orthonormal basis

    v_n(omega) = i (2^n n!)^{-1/2} H_n((omega-omega0) / (sqrt(2) Delta_omega)) u(omega)

with H_n the physicists' Hermite polynomials.  The global phase factor i is
kept inside the basis, so every local-oscillator mode built later has a real
coefficient vector and homodyne signals are plain real parts.

Modes are represented primarily by their (complex) coefficients on {v_n};
every mode of interest is a low-degree polynomial times u, so inner products
and Gram-Schmidt are exact in coefficient space.  Sampling onto a frequency
grid is derived from the coefficients, and a trapezoid quadrature over
omega0 +/- 8 Delta_omega (Gaussian tails < 1e-14 there) serves as the
independent oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial.hermite import hermval

from .errors import DomainError, ValidationError

MAX_ORDER_DEFAULT = 8

# Default quadrature grid: half-width in units of Delta_omega and point count.
GRID_HALF_WIDTH = 8.0
GRID_POINTS = 4096

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class GaussianPulse:
    """Mean frequency and spectral standard deviation of |u|^2, both rad/s.

    delta_omega must stay narrowband (<= omega0/2) for the second-order
    spectral-phase expansion downstream to make sense.
    """

    omega0: float
    delta_omega: float

    def __post_init__(self) -> None:
        if not self.omega0 > 0.0:
            raise ValidationError(f"omega0={self.omega0} must be > 0")
        if not self.delta_omega > 0.0:
            raise ValidationError(f"delta_omega={self.delta_omega} must be > 0")
        if self.delta_omega > 0.5 * self.omega0:
            raise ValidationError(
                f"delta_omega={self.delta_omega} exceeds omega0/2; "
                "too broadband for the narrowband expansion"
            )

    @classmethod
    def from_wavelength(cls, wavelength_m: float, relative_bandwidth: float = 1.0 / 6.0) -> "GaussianPulse":
        from .air_model import SPEED_OF_LIGHT

        if not wavelength_m > 0.0:
            raise ValidationError(f"wavelength_m={wavelength_m} must be > 0")
        omega0 = 2.0 * math.pi * SPEED_OF_LIGHT / wavelength_m
        return cls(omega0, relative_bandwidth * omega0)


@dataclass(frozen=True)
class SpectralMode:
    """A spectral amplitude as coefficients c_0..c_n on the {v_n} basis.

    Coefficients beyond the stored order are implicitly zero.  Instances are
    immutable; all algebra returns new modes.
    """

    pulse: GaussianPulse
    coefficients: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(complex(c) for c in self.coefficients))
        if len(self.coefficients) == 0:
            raise ValidationError("mode needs at least one coefficient")
        if not np.all(np.isfinite(self.vector.view(float))):
            raise ValidationError("mode coefficients must be finite")

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def is_normalized(self, tol: float = _NORM_TOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tol

    def normalized(self) -> "SpectralMode":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize the zero mode")
        return SpectralMode(self.pulse, tuple(self.vector / n))

    def padded(self, order: int) -> np.ndarray:
        """Coefficient vector zero-padded out to the given order.

        Shortening is only allowed when the dropped tail is exactly zero.
        """
        vec = self.vector
        if order + 1 >= vec.size:
            out = np.zeros(order + 1, dtype=complex)
            out[: vec.size] = vec
            return out
        if np.any(vec[order + 1 :] != 0):
            raise ValidationError(
                f"cannot truncate order-{self.order} mode to order {order}: "
                "nonzero coefficients would be dropped"
            )
        return vec[: order + 1].copy()


def _require_same_pulse(f: SpectralMode, g: SpectralMode) -> None:
    if f.pulse != g.pulse:
        raise ValidationError(
            "modes live on different pulse bases "
            f"({f.pulse} vs {g.pulse}); no implicit basis change"
        )


def gaussian_mode(pulse: GaussianPulse) -> SpectralMode:
    """The mean-field mode u itself: u = -i v_0 (unit norm)."""
    return SpectralMode(pulse, (-1j,))


def hermite_gauss(n: int, pulse: GaussianPulse, max_order: int = MAX_ORDER_DEFAULT) -> SpectralMode:
    """Basis mode v_n as the coefficient unit vector e_n."""
    if not 0 <= n <= max_order:
        raise ValidationError(f"order n={n} outside [0, {max_order}]")
    coeffs = [0j] * (n + 1)
    coeffs[n] = 1.0 + 0j
    return SpectralMode(pulse, tuple(coeffs))


def inner_product(f: SpectralMode, g: SpectralMode) -> complex:
    """L2 inner product <f, g> = integral f* g, exact on coefficients.

    Conjugate-linear in the first argument.
    """
    _require_same_pulse(f, g)
    order = max(f.order, g.order)
    return complex(np.vdot(f.padded(order), g.padded(order)))


def gaussian_envelope(pulse: GaussianPulse, omega: np.ndarray) -> np.ndarray:
    """u(omega) sampled on a grid (real positive values)."""
    x = (np.asarray(omega, dtype=float) - pulse.omega0) / pulse.delta_omega
    return (
        pulse.delta_omega**-0.5
        * (2.0 * math.pi) ** -0.25
        * np.exp(-0.25 * x * x)
    )


def hermite_envelope(n: int, pulse: GaussianPulse, omega: np.ndarray) -> np.ndarray:
    """Real envelope h_n(omega) with v_n = i h_n; orthonormal under quadrature."""
    x = (np.asarray(omega, dtype=float) - pulse.omega0) / (math.sqrt(2.0) * pulse.delta_omega)
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return hermval(x, coeffs) / math.sqrt(2.0**n * math.factorial(n)) * gaussian_envelope(pulse, omega)


def sample(mode: SpectralMode, omega: np.ndarray) -> np.ndarray:
    """Complex spectral amplitude of the mode on a frequency grid."""
    out = np.zeros(np.shape(omega), dtype=complex)
    for n, c in enumerate(mode.coefficients):
        if c != 0:
            out += c * 1j * hermite_envelope(n, mode.pulse, omega)
    return out


def real_profile(mode: SpectralMode, omega: np.ndarray) -> np.ndarray:
    """Real spectral profile of a single-global-phase mode.

    Rotates the coefficient vector by the phase of its largest entry and
    drops the basis factor i; the result is the signed amplitude one would
    plot.  Raises if the mode has no common global phase.
    """
    vec = mode.vector
    k = int(np.argmax(np.abs(vec)))
    phase = vec[k] / abs(vec[k])
    rotated = vec / phase
    if np.max(np.abs(rotated.imag)) > 1e-9 * np.linalg.norm(vec):
        raise DomainError("mode coefficients do not share a global phase")
    out = np.zeros(np.shape(omega), dtype=float)
    for n, c in enumerate(rotated.real):
        if c != 0.0:
            out += c * hermite_envelope(n, mode.pulse, omega)
    return out


def sampling_grid(
    pulse: GaussianPulse,
    points: int = GRID_POINTS,
    half_width: float = GRID_HALF_WIDTH,
) -> np.ndarray:
    """Uniform frequency grid omega0 +/- half_width * delta_omega."""
    if points < 2048:
        raise ValidationError(f"points={points} below the 2048 minimum")
    if half_width < GRID_HALF_WIDTH:
        raise ValidationError(f"half_width={half_width} below the +/-{GRID_HALF_WIDTH} sigma minimum")
    return np.linspace(
        pulse.omega0 - half_width * pulse.delta_omega,
        pulse.omega0 + half_width * pulse.delta_omega,
        points,
    )


def quadrature_inner_product(
    f_sampled: np.ndarray,
    g_sampled: np.ndarray,
    omega: np.ndarray,
    pulse: GaussianPulse | None = None,
) -> complex:
    """Trapezoid integral of f* g on a shared grid.

    Oracle-grade only: used by tests and for modes that are not polynomials
    times u.  When a pulse is given, the grid must cover at least
    omega0 +/- 8 delta_omega with >= 2048 points.
    """
    f = np.asarray(f_sampled)
    g = np.asarray(g_sampled)
    w = np.asarray(omega, dtype=float)
    if f.shape != g.shape or f.shape != w.shape:
        raise ValidationError("sampled modes and grid have mismatched shapes")
    if pulse is not None:
        lo = pulse.omega0 - GRID_HALF_WIDTH * pulse.delta_omega
        hi = pulse.omega0 + GRID_HALF_WIDTH * pulse.delta_omega
        if w.size < 2048 or w[0] > lo or w[-1] < hi:
            raise ValidationError(
                "grid does not cover omega0 +/- 8 delta_omega with >= 2048 points"
            )
    return complex(np.trapezoid(np.conj(f) * g, w))


def gram_schmidt(modes: Sequence[SpectralMode], tol: float = 1e-12) -> list[SpectralMode]:
    """Sequential Gram-Schmidt orthonormalization in coefficient space.

    The k-th output depends only on the first k inputs.  A residual whose
    squared norm falls below `tol` (relative to the normalized input) marks
    the offending mode as linearly dependent on its predecessors.
    """
    if len(modes) == 0:
        return []
    pulse = modes[0].pulse
    for m in modes[1:]:
        _require_same_pulse(modes[0], m)
    order = max(m.order for m in modes)
    basis: list[np.ndarray] = []
    for idx, m in enumerate(modes):
        vec = m.padded(order)
        n0 = np.linalg.norm(vec)
        if n0 == 0.0:
            raise DomainError(f"mode {idx} is zero")
        vec = vec / n0
        # two projection passes: classical "twice is enough" reorthogonalization
        for _ in range(2):
            for q in basis:
                vec = vec - np.vdot(q, vec) * q
        res2 = float(np.real(np.vdot(vec, vec)))
        if res2 <= tol:
            raise DomainError(
                f"mode {idx} is linearly dependent on its predecessors "
                f"(residual norm^2 {res2:.3e} <= {tol})"
            )
        basis.append(vec / math.sqrt(res2))
    return [SpectralMode(pulse, tuple(q)) for q in basis]


def export_profile(mode: SpectralMode, path, points: int = 513, half_width: float = 4.0) -> None:
    """Two-column text export: x = (omega-omega0)/delta_omega, amplitude.

    The amplitude column is scaled by sqrt(delta_omega) so that the squared
    profile integrates to one over x.
    """
    pulse = mode.pulse
    x = np.linspace(-half_width, half_width, points)
    omega = pulse.omega0 + x * pulse.delta_omega
    amp = real_profile(mode, omega) * math.sqrt(pulse.delta_omega)
    data = np.column_stack([x, amp])
    np.savetxt(path, data, fmt="%.12e")
