"""Spherical quadrature for integrals of the form int d^3k |k|^{-p} g(k).

The radial rule is composite Gauss-Legendre on geometrically growing panels
in units of the integrand's decay length, with panels subdivided to resolve
both oscillation (e^{i k a} factors) and directional decay sharpening
(boosted states). The polar rule is Gauss-Legendre in cos(theta) by default
(optimal for polynomial amplitudes with linear phases) and Gauss-Legendre
in theta with the sin jacobian in the weights when the integrand declares
half-integer polar factors; azimuth uses a uniform midpoint rule, and
axially symmetric integrands use a single azimuth node. Refinement doubles every node count and pushes the radial
cutoff out until two successive levels agree to the requested relative
tolerance, so a truncated tail cannot masquerade as convergence.

Node placement is deterministic for a fixed spec, no node ever lands on the
k_z axis (Gauss nodes are interior, azimuth nodes are offset by half a
step), and reductions use numpy's pairwise summation over a fixed block
structure, so results are bit-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, InvalidParameterError


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 16
    polar_nodes: int = 16
    azimuth_nodes: int = 8
    rel_tol: float = 1e-8
    max_refinements: int = 12
    radial_scale: float = 1.0

    def __post_init__(self):
        if self.radial_nodes < 8:
            raise InvalidParameterError("radial_nodes must be at least 8")
        if self.polar_nodes < 4:
            raise InvalidParameterError("polar_nodes must be at least 4")
        if self.azimuth_nodes < 4:
            raise InvalidParameterError("azimuth_nodes must be at least 4")
        if not (0.0 < self.rel_tol < 1.0):
            raise InvalidParameterError("rel_tol must lie strictly between 0 and 1")
        if self.max_refinements < 1:
            raise InvalidParameterError("max_refinements must be at least 1")
        if not (self.radial_scale > 0):
            raise InvalidParameterError("radial_scale must be strictly positive")


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    error: float
    refinements: int


@lru_cache(maxsize=128)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _panel_edges(rel_tol: float, extension: float) -> list[float]:
    # cut where e^{-u} is far below anything the tolerance can see; each
    # refinement pushes the cut out so an integrand decaying slower than the
    # hint shows up in the successive difference instead of hiding in the
    # truncated tail
    u_cut = max(32.0, -math.log(rel_tol * 1e-5)) + extension
    edges = [0.0]
    e = 1.0
    while e < u_cut:
        edges.append(e)
        e *= 2.0
    edges.append(u_cut)
    return edges


def _radial_rule(n: int, edges, scale_eff: float, phase_rate: float, decay_rate: float):
    """Nodes/weights in k for int_0^inf dk, panels in units u = k * scale_eff.

    The subpanel touching u = 0 uses the substitution u = t^2, which keeps
    half-integer endpoint powers (amplitudes carrying 1/sqrt(k)) spectrally
    convergent; elsewhere plain Gauss-Legendre.
    """
    x, w = _leggauss(n)
    ks = []
    ws = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        width = hi - lo
        m = max(
            1,
            math.ceil(width * phase_rate * 1.2 / n),
            math.ceil(width * decay_rate * 2.5 / n),
        )
        sub = width / m
        for j in range(m):
            a = lo + j * sub
            if a == 0.0:
                t = (x + 1.0) * (math.sqrt(sub) / 2.0)
                u = t * t
                wj = w * math.sqrt(sub) * t
            else:
                u = a + (x + 1.0) * (sub / 2.0)
                wj = np.full(n, sub / 2.0) * w
            ks.append(u / scale_eff)
            ws.append(wj / scale_eff)
    return np.concatenate(ks), np.concatenate(ws)


def _level_nodes(spec: QuadratureSpec, level: int, oscillation, azimuthal_oscillation,
                 anisotropy, axial, polar_half_integer):
    double = 1 << level
    scale_eff = spec.radial_scale / anisotropy
    phase_rate = oscillation / scale_eff  # radians per unit u
    decay_rate = anisotropy * anisotropy
    edges = _panel_edges(spec.rel_tol, 16.0 * level)
    k_r, w_r = _radial_rule(spec.radial_nodes * double, edges, scale_eff,
                            phase_rate, decay_rate)

    osc_units = oscillation * anisotropy / spec.radial_scale
    n_mu = spec.polar_nodes * double + math.ceil(11 * osc_units) \
        + math.ceil(8 * (anisotropy - 1))
    if polar_half_integer:
        # odd powers of sin(theta) are endpoint-singular in mu = cos(theta),
        # where Gauss-Legendre stalls; integrate in theta instead, with the
        # sin jacobian folded into the weights
        x_th, w_th = _leggauss(n_mu)
        th = (x_th + 1.0) * (math.pi / 2.0)
        mu = np.cos(th)
        w_mu = w_th * (math.pi / 2.0) * np.sin(th)
    else:
        # polynomial amplitudes with e^{i a k mu} phases: plain Gauss-Legendre
        # in mu keeps the phase linear (no endpoint stationary points)
        mu, w_mu = _leggauss(n_mu)

    if axial:
        phi = np.array([math.pi])
        w_phi = np.array([2 * math.pi])
    else:
        n_phi = spec.azimuth_nodes * double \
            + math.ceil(11 * azimuthal_oscillation * anisotropy / spec.radial_scale) \
            + math.ceil(8 * (anisotropy - 1))
        phi = (np.arange(n_phi) + 0.5) * (2 * math.pi / n_phi)
        w_phi = np.full(n_phi, 2 * math.pi / n_phi)
    return k_r, w_r, mu, w_mu, phi, w_phi


def _evaluate_level(g, p, nodes):
    """Returns (integral, integral of |g| d^3k |k|^{-p}); the latter sets the
    absolute resolution below which a value is indistinguishable from zero."""
    k_r, w_r, mu, w_mu, phi, w_phi = nodes
    sin_th = np.sqrt(1.0 - mu * mu)
    cos_phi = np.cos(phi)
    sin_phi = np.sin(phi)
    w_rad = w_r * k_r ** (2 - p)

    total = 0.0 + 0.0j
    total_abs = 0.0
    block = max(1, int(3e6) // max(1, mu.size * phi.size))
    for i0 in range(0, k_r.size, block):
        k = k_r[i0:i0 + block]
        kxy = k[:, None, None] * sin_th[None, :, None]
        kx = kxy * cos_phi[None, None, :]
        ky = kxy * sin_phi[None, None, :]
        kz = np.broadcast_to(
            k[:, None, None] * mu[None, :, None], kx.shape)
        vals = np.asarray(g(kx, ky, kz), dtype=complex)
        w = (w_rad[i0:i0 + block, None, None]
             * w_mu[None, :, None] * w_phi[None, None, :])
        total += np.sum(vals * w)
        total_abs += float(np.sum(np.abs(vals) * w))
    return total, total_abs


def integrate_spherical(g, p: int, spec: QuadratureSpec, *,
                        oscillation: float = 0.0,
                        azimuthal_oscillation: float = 0.0,
                        anisotropy: float = 1.0,
                        axial: bool = False,
                        polar_half_integer: bool = False) -> IntegralResult:
    """Integrate g over momentum space with measure d^3k |k|^{-p}.

    g maps three broadcast-compatible arrays (kx, ky, kz) to complex values
    and must decay like e^{-k * radial_scale} (up to the anisotropy factor)
    for the panel rule to converge. The keyword hints pre-size the node
    counts for oscillatory factors e^{i k . a} (oscillation = |a|, with the
    transverse part repeated in azimuthal_oscillation) and for directionally
    squeezed decay; they only set the starting resolution, convergence is
    still established by comparing successive refinements. Set
    polar_half_integer when g carries an odd power of sin(theta) (single
    polarization components do): that factor is endpoint-singular in
    cos(theta) and needs the polar rule taken in the angle itself.
    """
    if p not in (0, 1, 2):
        raise InvalidParameterError(f"p must be 0, 1 or 2, got {p}")
    if anisotropy < 1.0:
        raise InvalidParameterError("anisotropy hint cannot be below 1")
    if oscillation < 0 or azimuthal_oscillation < 0:
        raise InvalidParameterError("oscillation hints cannot be negative")

    previous = None
    value = 0.0 + 0.0j
    diff = math.inf
    for level in range(spec.max_refinements + 1):
        nodes = _level_nodes(spec, level, oscillation, azimuthal_oscillation,
                             anisotropy, axial, polar_half_integer)
        value, mass = _evaluate_level(g, p, nodes)
        if previous is not None:
            diff = abs(value - previous)
            # a value below the rule's own resolution (rel_tol of the total
            # integrated magnitude) is a converged zero, not a failure to
            # meet a relative tolerance no zero can ever meet
            floor = spec.rel_tol * max(mass, 1e-300)
            if diff <= spec.rel_tol * abs(value) or \
                    (abs(value) <= floor and diff <= floor):
                return IntegralResult(value=value, error=diff, refinements=level)
        previous = value
    raise ConvergenceError(
        f"spherical integral did not converge after {spec.max_refinements} refinements "
        f"(last change {diff:.3e})",
        best_value=value,
        error_estimate=diff,
    )
