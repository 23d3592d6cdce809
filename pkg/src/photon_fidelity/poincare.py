"""Rotations and boosts acting on momentum wavefunctions.

A transformation carries its momentum map, the inverse map, and the 3x3
complex matrices O(+), O(-) that act on the field vector at fixed helicity.
The induced action on the scalar amplitudes is a pure phase, Theta(k), read
off from u = (|k'|/|k|) e*(k) . O^T e(k'), which is unimodular whenever map
and matrices belong to the same transformation.

Conventions pinned here and certified by that unimodularity:
  rotation about y by alpha: R = [[cos a, 0, -sin a], [0, 1, 0],
  [sin a, 0, cos a]] used both as the momentum map and as O(+/-);
  boost along y with rapidity xi = atanh(v/c): the momentum map is
  k'_y = gamma (k_y + beta |k|), k'_{x,z} unchanged, and O(+) is the
  complex rotation about y by +i*xi (so cos -> cosh, sin -> i sinh),
  with O(-) its complex conjugate.

Amplitudes transform as f'(k') = e^{i lambda Theta} f(k) with Theta = -arg u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Tuple

import numpy as np

from .errors import (
    BranchUndefinedError,
    InconsistentTransformError,
    InvalidParameterError,
)
from .position_space import polarization_vector
from .wavefunctions import DEFAULT_CONSTANTS, HelicityDoublet, PhysicalConstants

MomentumMap = Callable[[np.ndarray, np.ndarray, np.ndarray],
                       Tuple[np.ndarray, np.ndarray, np.ndarray]]

ORTHO_TOL = 1e-12
UNIMODULAR_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class PoincareTransform:
    """One transformation: momentum map, its inverse, and the field matrices."""

    kind: str  # "rotation-y", "boost-y", or "general"
    parameter: float
    momentum_map: MomentumMap
    inverse_map: MomentumMap
    o_plus: np.ndarray
    o_minus: np.ndarray
    constants: PhysicalConstants = field(default=DEFAULT_CONSTANTS)

    def __post_init__(self):
        for name, o in (("o_plus", self.o_plus), ("o_minus", self.o_minus)):
            o = np.asarray(o, dtype=complex)
            if o.shape != (3, 3):
                raise InvalidParameterError(f"{name} must be a 3x3 matrix")
            dev = np.abs(o.T @ o - np.eye(3)).max()
            if dev > ORTHO_TOL:
                raise InvalidParameterError(
                    f"{name} is not complex orthogonal (O^T O deviates by {dev:.2e})")

    def field_matrix(self, helicity: str) -> np.ndarray:
        if helicity == "+":
            return self.o_plus
        if helicity == "-":
            return self.o_minus
        raise InvalidParameterError(f"helicity must be '+' or '-', got {helicity!r}")


def rotation_about_y(alpha: float,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS,
                     ) -> PoincareTransform:
    ca, sa = math.cos(alpha), math.sin(alpha)
    R = np.array([[ca, 0.0, -sa], [0.0, 1.0, 0.0], [sa, 0.0, ca]])

    def fwd(kx, ky, kz, R=R):
        return (R[0, 0] * kx + R[0, 2] * kz, ky, R[2, 0] * kx + R[2, 2] * kz)

    Ri = R.T

    def inv(kx, ky, kz, R=Ri):
        return (R[0, 0] * kx + R[0, 2] * kz, ky, R[2, 0] * kx + R[2, 2] * kz)

    O = R.astype(complex)
    return PoincareTransform(kind="rotation-y", parameter=alpha,
                             momentum_map=fwd, inverse_map=inv,
                             o_plus=O, o_minus=O, constants=constants)


def boost_along_y(v: float,
                  constants: PhysicalConstants = DEFAULT_CONSTANTS,
                  ) -> PoincareTransform:
    c = constants.c
    if not abs(v) < c:
        raise InvalidParameterError(f"boost speed |{v}| must be below c={c}")
    beta = v / c
    gamma = 1.0 / math.sqrt(1.0 - beta * beta)
    xi = math.atanh(beta)

    def fwd(kx, ky, kz, beta=beta, gamma=gamma):
        k = np.sqrt(kx * kx + ky * ky + kz * kz)
        return (kx, gamma * (ky + beta * k), kz)

    def inv(kx, ky, kz, beta=beta, gamma=gamma):
        k = np.sqrt(kx * kx + ky * ky + kz * kz)
        return (kx, gamma * (ky - beta * k), kz)

    ch, sh = math.cosh(xi), math.sinh(xi)
    # complex rotation about y by +i*xi
    o_plus = np.array([[ch, 0.0, 1j * sh], [0.0, 1.0, 0.0], [-1j * sh, 0.0, ch]],
                      dtype=complex)
    return PoincareTransform(kind="boost-y", parameter=v,
                             momentum_map=fwd, inverse_map=inv,
                             o_plus=o_plus, o_minus=np.conj(o_plus),
                             constants=constants)


def _branch_check(num, den):
    tiny = 1e-300
    if abs(num) < tiny and abs(den) < tiny:
        raise BranchUndefinedError(
            "phase branch undefined: numerator and denominator both vanish")


def theta_rotation_y(alpha: float, theta: float, phi: float) -> float:
    """Phase picked up at direction (theta, phi) under a rotation about y.

    Theta = atan2(sin(alpha) sin(phi),
                  cos(alpha) sin(theta) - sin(alpha) cos(phi) cos(theta)).
    Keeping sin(alpha) inside both atan2 arguments (rather than dividing
    through to a cotangent) keeps the branch right for negative alpha.
    """
    if alpha == 0.0:
        return 0.0
    sa = math.sin(alpha)
    num = sa * math.sin(phi)
    den = math.cos(alpha) * math.sin(theta) - sa * math.cos(phi) * math.cos(theta)
    _branch_check(num, den)
    return math.atan2(num, den)


def theta_boost_y(v: float, theta: float, phi: float,
                  constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Phase picked up at direction (theta, phi) under a boost along y.

    Theta = atan2(v cos(phi) cos(theta), c sin(theta) + v sin(phi)).
    """
    c = constants.c
    if not abs(v) < c:
        raise InvalidParameterError(f"boost speed |{v}| must be below c={c}")
    if v == 0.0:
        return 0.0
    num = v * math.cos(phi) * math.cos(theta)
    den = c * math.sin(theta) + v * math.sin(phi)
    _branch_check(num, den)
    return math.atan2(num, den)


def _theta_rotation_cartesian(alpha, kx, ky, kz):
    k = np.sqrt(kx * kx + ky * ky + kz * kz)
    sa, ca = math.sin(alpha), math.cos(alpha)
    # atan2 is invariant under the positive rescale by (w k)
    return np.arctan2(sa * ky * k, ca * (kx * kx + ky * ky) - sa * kx * kz)


def _theta_boost_cartesian(v, c, kx, ky, kz):
    k = np.sqrt(kx * kx + ky * ky + kz * kz)
    w2 = kx * kx + ky * ky
    return np.arctan2(v * kx * kz, c * w2 + v * ky * k)


def theta_general(transform: PoincareTransform, k) -> np.ndarray:
    """Phase from the defining product u = (|k'|/|k|) e*(k) . O^T e(k').

    Works for any transform whose map and matrices are mutually consistent;
    |u| = 1 is checked and certifies exactly that. k has shape (3,) or
    (3, n); the result is a scalar or length-n array of Theta = -arg u.
    """
    arr = np.asarray(k, dtype=float)
    scalar = arr.ndim == 1
    pts = arr.reshape(3, -1)
    kx, ky, kz = pts
    kmag = np.sqrt(kx * kx + ky * ky + kz * kz)
    kpx, kpy, kpz = transform.momentum_map(kx, ky, kz)
    kpmag = np.sqrt(kpx * kpx + kpy * kpy + kpz * kpz)
    e = polarization_vector(pts, "+")
    ep = polarization_vector(np.stack([kpx, kpy, kpz]), "+")
    O = transform.field_matrix("+")
    u = (kpmag / kmag) * np.einsum("im,ij,jm->m", np.conj(e), O.T, ep)
    dev = np.abs(np.abs(u) - 1.0).max()
    if dev > UNIMODULAR_TOL:
        raise InconsistentTransformError(
            f"momentum map and field matrix disagree: |u| deviates from 1 "
            f"by {dev:.2e}")
    theta = -np.angle(u)
    return float(theta[0]) if scalar else theta


def _theta_cartesian(transform: PoincareTransform, kx, ky, kz):
    if transform.kind == "rotation-y":
        if transform.parameter == 0.0:
            return np.zeros(np.broadcast(kx, ky, kz).shape)
        return _theta_rotation_cartesian(transform.parameter, kx, ky, kz)
    if transform.kind == "boost-y":
        if transform.parameter == 0.0:
            return np.zeros(np.broadcast(kx, ky, kz).shape)
        return _theta_boost_cartesian(transform.parameter, transform.constants.c,
                                      kx, ky, kz)
    return theta_general(transform, np.stack(np.broadcast_arrays(kx, ky, kz)))


def apply_transform(transform: PoincareTransform,
                    f: HelicityDoublet) -> HelicityDoublet:
    """Transformed doublet: f'_lambda(k') = e^{i lambda Theta(k)} f_lambda(k)
    with k the preimage of k' under the momentum map.

    The result samples the original amplitudes at inverse-mapped momenta, so
    repeated application composes maps without nesting error.
    """
    inv = transform.inverse_map

    def make(amp, sign):
        def transformed(kx, ky, kz, amp=amp, sign=sign):
            bx, by, bz = inv(kx, ky, kz)
            theta = _theta_cartesian(transform, bx, by, bz)
            return amp(bx, by, bz) * np.exp(1j * sign * theta)
        return transformed

    new_plus = make(f.f_plus, +1.0) if f.f_plus is not None else None
    new_minus = make(f.f_minus, -1.0) if f.f_minus is not None else None

    aniso = f.anisotropy
    if transform.kind == "boost-y":
        beta = abs(transform.parameter) / transform.constants.c
        aniso *= math.sqrt((1.0 + beta) / (1.0 - beta))
    is_identity = transform.parameter == 0.0 \
        and transform.kind in ("rotation-y", "boost-y")
    return replace(f, f_plus=new_plus, f_minus=new_minus,
                   axial_symmetry=f.axial_symmetry and is_identity,
                   anisotropy=aniso)
