"""Momentum-space photon wavefunctions and elementary state constructors.

A photon state is a pair of helicity amplitudes (f+, f-), each an evaluable
map from wave vectors to complex numbers. States are immutable; constructors
return new objects wrapping the old amplitudes with unimodular factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import InvalidParameterError

Amplitude = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system. Natural units by default; fidelities never depend on these."""

    hbar_c: float = 1.0
    c: float = 1.0
    epsilon0: float = 1.0
    mu0: float = 1.0

    def __post_init__(self):
        for name in ("hbar_c", "c", "epsilon0", "mu0"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be strictly positive")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True, eq=False)
class HelicityDoublet:
    """Pair of momentum-space amplitudes, one per helicity.

    f_plus / f_minus take three same-shaped arrays (kx, ky, kz) and return a
    complex array; None means the component is identically zero. Amplitudes
    must be finite for |k| > 0; behavior at k = 0 is never sampled.

    The remaining fields are metadata: length_scale is the e^{-k l} decay
    length of the amplitude; translation, time_offset and anisotropy
    accumulate what the constructors below did to the state, and are used
    only to pre-size quadrature (integration refines until converged either
    way). axial_symmetry declares that |amplitude| depends on (|k|, k_z)
    only, which lets azimuthal integrals collapse to a single node.
    """

    f_plus: Optional[Amplitude]
    f_minus: Optional[Amplitude]
    axial_symmetry: bool
    length_scale: float
    translation: tuple[float, float, float] = (0.0, 0.0, 0.0)
    time_offset: float = 0.0
    anisotropy: float = 1.0

    def __post_init__(self):
        if self.length_scale <= 0:
            raise InvalidParameterError("length_scale must be strictly positive")
        if self.anisotropy < 1.0:
            raise InvalidParameterError("anisotropy factor cannot be below 1")

    def component(self, helicity: str) -> Optional[Amplitude]:
        if helicity == "+":
            return self.f_plus
        if helicity == "-":
            return self.f_minus
        raise InvalidParameterError(f"helicity must be '+' or '-', got {helicity!r}")

    def evaluate(self, helicity: str, kx, ky, kz):
        """Amplitude values at the given wave vectors (zeros if the component is absent)."""
        amp = self.component(helicity)
        kx = np.asarray(kx, dtype=float)
        if amp is None:
            return np.zeros(np.broadcast(kx, ky, kz).shape, dtype=complex)
        return np.asarray(amp(kx, ky, kz), dtype=complex)


def example_state(l: float) -> HelicityDoublet:
    """Built-in exponential family: f+(k) = e^{-k l/2} / sqrt(4 pi k / l), f- = 0.

    Normalized to 1 under the relativistic (d^3k/k) inner product.
    """
    if not (l > 0) or not math.isfinite(l):
        raise InvalidParameterError(f"length scale must be positive and finite, got {l}")

    def f_plus(kx, ky, kz):
        k = np.sqrt(kx * kx + ky * ky + kz * kz)
        return np.exp(-k * l / 2) / np.sqrt(4 * np.pi * k / l)

    return HelicityDoublet(
        f_plus=f_plus, f_minus=None, axial_symmetry=True, length_scale=l
    )


def _wrap(amp: Optional[Amplitude], factor) -> Optional[Amplitude]:
    if amp is None:
        return None

    def wrapped(kx, ky, kz):
        return amp(kx, ky, kz) * factor(kx, ky, kz)

    return wrapped


def translate(f: HelicityDoublet, r0) -> HelicityDoublet:
    """Shift the state by r0: both components gain e^{-i k . r0}, which
    moves the synthesized position wavefunction to be centered on r0."""
    x0, y0, z0 = (float(v) for v in r0)
    if x0 == y0 == z0 == 0.0:
        return f

    def phase(kx, ky, kz):
        return np.exp(-1j * (kx * x0 + ky * y0 + kz * z0))

    new_translation = (
        f.translation[0] + x0,
        f.translation[1] + y0,
        f.translation[2] + z0,
    )
    # shifts off the z axis break the axial symmetry of |amplitude| phases
    still_axial = f.axial_symmetry and x0 == 0.0 and y0 == 0.0
    return replace(
        f,
        f_plus=_wrap(f.f_plus, phase),
        f_minus=_wrap(f.f_minus, phase),
        translation=new_translation,
        axial_symmetry=still_axial,
    )


def time_shift(
    f: HelicityDoublet, t0: float, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> HelicityDoublet:
    """Shift the state in time: both components gain e^{i omega t0}, omega = c|k|."""
    t0 = float(t0)
    if t0 == 0.0:
        return f
    c = constants.c

    def phase(kx, ky, kz):
        k = np.sqrt(kx * kx + ky * ky + kz * kz)
        return np.exp(1j * c * k * t0)

    return replace(
        f,
        f_plus=_wrap(f.f_plus, phase),
        f_minus=_wrap(f.f_minus, phase),
        time_offset=f.time_offset + t0,
    )


def global_phase(f: HelicityDoublet, phi: float) -> HelicityDoublet:
    """Multiply the whole state by e^{i phi}."""
    phi = float(phi)
    if phi == 0.0:
        return f
    factor = complex(np.exp(1j * phi))

    def phase(kx, ky, kz):
        return np.full(np.shape(kx), factor)

    return replace(
        f,
        f_plus=_wrap(f.f_plus, phase),
        f_minus=_wrap(f.f_minus, phase),
    )
