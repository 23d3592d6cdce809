"""Inner product, momentum fidelity, phase difference, coherent-state fidelity."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import DegenerateStateError, InvalidParameterError, UndefinedPhaseError
from .quadrature import QuadratureSpec, integrate_spherical
from .wavefunctions import HelicityDoublet

ZERO_NORM_TOL = 1e-12


@dataclass(frozen=True)
class FidelityReport:
    """Result of a fidelity computation.

    value is the fidelity itself; numerical_error is a propagated estimate
    from the underlying quadratures (value may exceed 1 by at most that).
    """

    value: float
    measure: str
    numerical_error: float
    norm1: float
    norm2: float
    note: str = ""


@dataclass(frozen=True)
class CoherentStateSpec:
    """A coherent state of the quantized field: mode wavefunction, mean
    photon number, and an overall phase."""

    wavefunction: HelicityDoublet
    mean_photons: float
    overall_phase: float = 0.0

    def __post_init__(self):
        if self.mean_photons < 0:
            raise InvalidParameterError("mean_photons must be nonnegative")


def _pair_hints(f1: HelicityDoublet, f2: HelicityDoublet) -> dict:
    dx = f1.translation[0] - f2.translation[0]
    dy = f1.translation[1] - f2.translation[1]
    dz = f1.translation[2] - f2.translation[2]
    dt = f1.time_offset - f2.time_offset
    transverse = math.hypot(dx, dy)
    return {
        "oscillation": math.sqrt(dx * dx + dy * dy + dz * dz) + abs(dt),
        "azimuthal_oscillation": transverse,
        "anisotropy": max(f1.anisotropy, f2.anisotropy),
        "axial": f1.axial_symmetry and f2.axial_symmetry,
    }


def _pair_integral(f1, f2, spec, p=1):
    """Sum over helicities of int d^3k k^{-p} conj(f1) f2, with error estimate."""
    value = 0.0 + 0.0j
    error = 0.0
    hints = _pair_hints(f1, f2)
    for helicity in "+-":
        a1 = f1.component(helicity)
        a2 = f2.component(helicity)
        if a1 is None or a2 is None:
            continue

        def g(kx, ky, kz):
            return np.conj(a1(kx, ky, kz)) * a2(kx, ky, kz)

        scaled = replace(spec, radial_scale=min(f1.length_scale, f2.length_scale))
        result = integrate_spherical(g, p, scaled, **hints)
        value += result.value
        error += result.error
    return value, error


def inner_product_m(f1: HelicityDoublet, f2: HelicityDoublet,
                    spec: QuadratureSpec) -> complex:
    """Relativistic inner product: sum over helicities of int d^3k/k conj(f1) f2."""
    value, _ = _pair_integral(f1, f2, spec, p=1)
    return value


@lru_cache(maxsize=512)
def _norm_sq(f: HelicityDoublet, spec: QuadratureSpec) -> tuple[float, float]:
    # |f|^2 is phase-free pointwise, so the norm integrand never oscillates;
    # bypass the pair hints and integrate with oscillation 0
    value = 0.0
    error = 0.0
    for helicity in "+-":
        amp = f.component(helicity)
        if amp is None:
            continue

        def g(kx, ky, kz):
            v = amp(kx, ky, kz)
            return (np.conj(v) * v).real

        scaled = replace(spec, radial_scale=f.length_scale)
        result = integrate_spherical(
            g, 1, scaled, anisotropy=f.anisotropy, axial=f.axial_symmetry)
        value += result.value.real
        error += result.error
    return value, error


def norm_m(f: HelicityDoublet, spec: QuadratureSpec) -> float:
    """Norm squared under the relativistic measure (1 for normalized states)."""
    return _norm_sq(f, spec)[0]


def fidelity_m(f1: HelicityDoublet, f2: HelicityDoublet,
               spec: QuadratureSpec) -> FidelityReport:
    """Momentum fidelity |<f1|f2>|^2 / (<f1|f1><f2|f2>); inputs may be unnormalized."""
    n1, e1 = _norm_sq(f1, spec)
    n2, e2 = _norm_sq(f2, spec)
    if n1 < ZERO_NORM_TOL or n2 < ZERO_NORM_TOL:
        raise DegenerateStateError("fidelity of a zero-norm state is undefined")
    ip, eip = _pair_integral(f1, f2, spec, p=1)
    value = abs(ip) ** 2 / (n1 * n2)
    rel = 0.0
    if abs(ip) > 0:
        rel += 2 * eip / abs(ip)
    rel += e1 / n1 + e2 / n2
    return FidelityReport(
        value=value, measure="m", numerical_error=rel * value, norm1=n1, norm2=n2)


def phase_diff(f1: HelicityDoublet, f2: HelicityDoublet,
               spec: QuadratureSpec) -> float:
    """arg <f1|f2> in (-pi, pi]."""
    n1, _ = _norm_sq(f1, spec)
    n2, _ = _norm_sq(f2, spec)
    if n1 < ZERO_NORM_TOL or n2 < ZERO_NORM_TOL:
        raise DegenerateStateError("phase of a zero-norm state is undefined")
    ip, _ = _pair_integral(f1, f2, spec, p=1)
    if abs(ip) / math.sqrt(n1 * n2) < 1e-10:
        raise UndefinedPhaseError("overlap is numerically zero; phase undefined")
    return math.atan2(ip.imag, ip.real)


def fidelity_c(c1: CoherentStateSpec, c2: CoherentStateSpec,
               spec: QuadratureSpec) -> FidelityReport:
    """Squared overlap of two coherent states.

    For equal mean photon numbers this is exp[-2<N>(1 - cos(phi) sqrt(F_m))]
    with phi the total phase difference (overall phases plus the overlap
    phase). Unequal mean photon numbers use the exact generalization
    exp[-N1 - N2 + 2 sqrt(N1 N2) Re(e^{i dphi} <f1|f2>)], which reduces to
    the former at N1 = N2; the report notes when that path was taken.
    """
    f1, f2 = c1.wavefunction, c2.wavefunction
    n1_sq, err1 = _norm_sq(f1, spec)
    n2_sq, err2 = _norm_sq(f2, spec)
    if n1_sq < ZERO_NORM_TOL or n2_sq < ZERO_NORM_TOL:
        raise DegenerateStateError("coherent fidelity of a zero-norm mode is undefined")

    if f1 is f2:
        overlap = 1.0 + 0.0j
        overlap_err = 0.0
    else:
        ip, eip = _pair_integral(f1, f2, spec, p=1)
        overlap = ip / math.sqrt(n1_sq * n2_sq)
        overlap_err = eip / math.sqrt(n1_sq * n2_sq) \
            + abs(overlap) * 0.5 * (err1 / n1_sq + err2 / n2_sq)

    dphi = c2.overall_phase - c1.overall_phase
    n1, n2 = c1.mean_photons, c2.mean_photons
    rotated = np.exp(1j * dphi) * overlap
    note = ""
    if math.isclose(n1, n2, rel_tol=0.0, abs_tol=1e-12):
        # cos(phi) sqrt(F_m) is exactly Re of the rotated normalized overlap
        exponent = -2.0 * n1 * (1.0 - rotated.real)
        sensitivity = 2.0 * n1
    else:
        exponent = -n1 - n2 + 2.0 * math.sqrt(n1 * n2) * rotated.real
        sensitivity = 2.0 * math.sqrt(n1 * n2)
        note = "generalized formula for unequal mean photon numbers"
    value = math.exp(exponent)
    error = value * sensitivity * overlap_err
    return FidelityReport(
        value=value, measure="c", numerical_error=error,
        norm1=n1_sq, norm2=n2_sq, note=note)
