"""Position-space photon fields: polarization vector, synthesis, inner
products (local and nonlocal), position fidelity, Whittaker construction,
and Maxwell-equation residuals.

Fields are complex 3-vector samples on a regular cubic grid at fixed time.
Synthesis evaluates Psi_lambda(r,t) = sqrt(hbar c) int d^3k/(2pi)^{3/2}
e_lambda(k) f_lambda(k) e^{i(k.r - omega t)}. The default evaluation path
shares one uniform k-lattice across all grid points and uses FFTs (a
rectangle-rule quadrature of the same integral, zero-padded so the state's
support fits the periodic box); a direct per-point spherical-quadrature
path exists for validation and tiny grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import (
    AxisSingularityError,
    IncompatibleGridError,
    InvalidParameterError,
    ResourceLimitError,
)
from .momentum_fidelity import ZERO_NORM_TOL, FidelityReport, _pair_integral
from .quadrature import QuadratureSpec, integrate_spherical
from .wavefunctions import DEFAULT_CONSTANTS, HelicityDoublet, PhysicalConstants

AXIS_TOL_SQ = 1e-24
MAX_NONLOCAL_POINTS = 24
MAX_SYNTH_LATTICE = 360


def polarization_vector(k, helicity: str):
    """Transverse circular polarization vector e(k) (helicity +) or its
    conjugate (helicity -). k is a 3-vector or a (3, ...) array; the result
    has the same shape. Unit norm, orthogonal to k, null (e.e = 0).

    Raises AxisSingularityError if any requested k lies on the k_z axis,
    where the phase convention is undefined.
    """
    if helicity not in ("+", "-"):
        raise InvalidParameterError(f"helicity must be '+' or '-', got {helicity!r}")
    arr = np.asarray(k, dtype=float)
    if arr.shape[0] != 3:
        raise InvalidParameterError("k must have leading dimension 3")
    kx, ky, kz = arr[0], arr[1], arr[2]
    w2 = kx * kx + ky * ky
    k2 = w2 + kz * kz
    if np.any(w2 <= AXIS_TOL_SQ * np.maximum(k2, 1e-300)) or np.any(k2 == 0):
        raise AxisSingularityError("polarization vector undefined on the k_z axis")
    norm = np.sqrt(2.0 * k2 * w2)
    kmag = np.sqrt(k2)
    ex = (-kx * kz + 1j * ky * kmag) / norm
    ey = (-ky * kz - 1j * kx * kmag) / norm
    ez = w2 / norm
    e = np.stack([ex, ey, ez])
    return np.conj(e) if helicity == "-" else e


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform cubic grid: points per axis, full extent per axis, fixed time."""

    points: int
    extent: float
    time: float = 0.0

    def __post_init__(self):
        if self.points < 8:
            raise InvalidParameterError("grid needs at least 8 points per axis")
        if not (self.extent > 0):
            raise InvalidParameterError("grid extent must be positive")

    @property
    def h(self) -> float:
        return self.extent / (self.points - 1)

    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent / 2, self.extent / 2, self.points)


@dataclass(frozen=True, eq=False)
class PositionField:
    grid: SpatialGrid
    values: np.ndarray  # complex, shape (3, n, n, n)
    helicity: str  # "+", "-", or "RS"


FieldEnsemble = Union[PositionField, Sequence[PositionField]]


def _as_ensemble(p: FieldEnsemble) -> tuple[PositionField, ...]:
    if isinstance(p, PositionField):
        return (p,)
    fields = tuple(p)
    if not fields:
        raise InvalidParameterError("empty field ensemble")
    return fields


def _check_grids(fields1, fields2):
    grids = [f.grid for f in fields1 + fields2]
    g0 = grids[0]
    for g in grids[1:]:
        if (g.points, g.extent, g.time) != (g0.points, g0.extent, g0.time):
            raise IncompatibleGridError("fields live on different grids")
    tags1 = sorted(f.helicity for f in fields1)
    tags2 = sorted(f.helicity for f in fields2)
    if tags1 != tags2:
        raise InvalidParameterError(
            f"ensembles carry mismatched helicity tags {tags1} vs {tags2}")


def _lattice_size(extent, h, oversample, pad):
    dr = h / oversample
    n = int(math.ceil(pad / dr))
    if n % 2:
        n += 1
    return n, dr


def _synth_lattice(f: HelicityDoublet, grid: SpatialGrid, oversample: int,
                   pad_factor: float, constants: PhysicalConstants):
    ls = f.length_scale * f.anisotropy
    travel = math.sqrt(sum(v * v for v in f.translation)) \
        + constants.c * (abs(f.time_offset) + abs(grid.time))
    pad = max(pad_factor * ls, 2.2 * grid.extent, 2.0 * travel + 24.0 * ls)
    n, dr = _lattice_size(grid.extent, grid.h, oversample, pad)
    if n > MAX_SYNTH_LATTICE:
        raise ResourceLimitError(
            f"synthesis lattice {n}^3 exceeds the {MAX_SYNTH_LATTICE}^3 budget; "
            "reduce oversample or the grid resolution")
    return n, dr


def _synthesize_fft(f, helicity, grid, oversample, pad_factor, constants,
                    omega_factor, k_cutoff=None):
    amp = f.component(helicity)
    n = grid.points
    if amp is None:
        return np.zeros((3, n, n, n), dtype=complex)

    N, dr = _synth_lattice(f, grid, oversample, pad_factor, constants)
    dk = 2 * math.pi / (N * dr)
    kk = (np.arange(N) - N // 2) * dk
    KX = kk[:, None, None]
    KY = kk[None, :, None]
    KZ = kk[None, None, :]
    K = np.sqrt(KX * KX + KY * KY + KZ * KZ)

    with np.errstate(divide="ignore", invalid="ignore"):
        A = np.asarray(amp(KX, KY, KZ), dtype=complex)
    w2 = KX * KX + KY * KY
    # measure-zero lattice lines: the k=0 cell and the polarization axis
    bad = (K == 0) | (w2 <= AXIS_TOL_SQ * np.maximum(K * K, 1e-300))
    if k_cutoff is not None:
        bad |= K > k_cutoff
    A[bad] = 0.0

    c = constants.c
    t = grid.time
    if t != 0.0:
        A *= np.exp(-1j * c * K * t)
    if omega_factor:
        A *= -1j * c * K

    # corner-anchored lattice: fold the corner offset into 1D phases
    r0 = -grid.extent / 2
    ph = np.exp(1j * kk * r0)
    A *= ph[:, None, None]
    A *= ph[None, :, None]
    A *= ph[None, None, :]

    with np.errstate(divide="ignore", invalid="ignore"):
        pref_e = 1.0 / np.sqrt(2.0 * K * K * w2)
    pref_e[bad] = 0.0

    pref = math.sqrt(constants.hbar_c) * dk**3 / (2 * math.pi) ** 1.5 * N**3
    idx = oversample * np.arange(n)
    tw = np.where(idx % 2 == 0, 1.0, -1.0)

    out = np.empty((3, n, n, n), dtype=complex)
    sign = 1.0 if helicity == "+" else -1.0
    for comp in range(3):
        if comp == 0:
            ec = pref_e * (-KX * KZ + sign * 1j * KY * K)
        elif comp == 1:
            ec = pref_e * (-KY * KZ - sign * 1j * KX * K)
        else:
            ec = pref_e * w2
        B = A * ec
        del ec
        psi = np.fft.ifftn(B)
        del B
        sub = pref * psi[np.ix_(idx, idx, idx)]
        del psi
        sub *= tw[:, None, None]
        sub *= tw[None, :, None]
        sub *= tw[None, None, :]
        out[comp] = sub
    return out


def synthesize_at_points(f: HelicityDoublet, helicity: str, points, time: float,
                         spec: QuadratureSpec,
                         constants: PhysicalConstants = DEFAULT_CONSTANTS,
                         omega_factor: bool = False) -> np.ndarray:
    """Direct spherical-quadrature synthesis at arbitrary points (3, M).

    One full quadrature per point and component; meant for validation, not
    for filling grids.
    """
    pts = np.asarray(points, dtype=float).reshape(3, -1)
    amp = f.component(helicity)
    out = np.zeros((3, pts.shape[1]), dtype=complex)
    if amp is None:
        return out
    c = constants.c
    # a single amplitude decays at half the rate of the pair integrands
    scaled = replace(spec, radial_scale=0.5 * f.length_scale)
    for m in range(pts.shape[1]):
        r = pts[:, m]
        osc = float(np.linalg.norm(r)) \
            + math.hypot(f.translation[0], f.translation[1], f.translation[2]) \
            + c * (abs(f.time_offset) + abs(time))
        for comp in range(3):
            def g(kx, ky, kz, comp=comp, r=r):
                k = np.sqrt(kx * kx + ky * ky + kz * kz)
                w2 = kx * kx + ky * ky
                norm = np.sqrt(2.0 * k * k * w2)
                if comp == 0:
                    e = -kx * kz + 1j * ky * k
                elif comp == 1:
                    e = -ky * kz - 1j * kx * k
                else:
                    e = w2 + 0j
                e = e / norm
                if helicity == "-":
                    e = np.conj(e)
                phase = np.exp(1j * (kx * r[0] + ky * r[1] + kz * r[2] - c * k * time))
                val = amp(kx, ky, kz) * e * phase
                if omega_factor:
                    val = val * (-1j * c * k)
                return val

            res = integrate_spherical(
                g, 0, scaled, oscillation=osc,
                azimuthal_oscillation=osc, anisotropy=f.anisotropy, axial=False,
                polar_half_integer=True)
            out[comp, m] = res.value
    return out * (math.sqrt(constants.hbar_c) / (2 * math.pi) ** 1.5)


def synthesize_position(f: HelicityDoublet, helicity: str, grid: SpatialGrid,
                        spec: QuadratureSpec, *, method: str = "auto",
                        oversample: int = 1, pad_factor: float = 36.0,
                        k_cutoff: Optional[float] = None,
                        constants: PhysicalConstants = DEFAULT_CONSTANTS,
                        ) -> PositionField:
    """Position wavefunction of one helicity component on a grid.

    k_cutoff discards spectral modes with |k| above the given radius; a
    band-limited field is still an exact wave solution, which makes it the
    right reference for grid-convergence studies.
    """
    if helicity not in ("+", "-"):
        raise InvalidParameterError(f"helicity must be '+' or '-', got {helicity!r}")
    if method not in ("auto", "fft", "direct"):
        raise InvalidParameterError(f"unknown synthesis method {method!r}")
    if method == "direct":
        ax = grid.axis()
        X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
        pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()])
        vals = synthesize_at_points(f, helicity, pts, grid.time, spec, constants)
        values = vals.reshape(3, grid.points, grid.points, grid.points)
    else:
        values = _synthesize_fft(f, helicity, grid, oversample, pad_factor,
                                 constants, omega_factor=False, k_cutoff=k_cutoff)
    return PositionField(grid=grid, values=values, helicity=helicity)


def rs_field(f: HelicityDoublet, grid: SpatialGrid, spec: QuadratureSpec,
             **kwargs) -> PositionField:
    """Complex electromagnetic field F = Psi_+ + conj(Psi_-)."""
    plus = synthesize_position(f, "+", grid, spec, **kwargs)
    if f.f_minus is None:
        values = plus.values
    else:
        minus = synthesize_position(f, "-", grid, spec, **kwargs)
        values = plus.values + np.conj(minus.values)
    return PositionField(grid=grid, values=values, helicity="RS")


def rs_field_time_derivative(f: HelicityDoublet, grid: SpatialGrid,
                             spec: QuadratureSpec, *, oversample: int = 1,
                             pad_factor: float = 36.0,
                             k_cutoff: Optional[float] = None,
                             constants: PhysicalConstants = DEFAULT_CONSTANTS,
                             ) -> PositionField:
    """Time derivative of the field, computed spectrally (-i omega under the
    synthesis integral), not by time stepping."""
    dplus = _synthesize_fft(f, "+", grid, oversample, pad_factor, constants,
                            omega_factor=True, k_cutoff=k_cutoff)
    if f.f_minus is None:
        values = dplus
    else:
        dminus = _synthesize_fft(f, "-", grid, oversample, pad_factor, constants,
                                 omega_factor=True, k_cutoff=k_cutoff)
        values = dplus + np.conj(dminus)
    return PositionField(grid=grid, values=values, helicity="RS")


def inner_product_p(p1: FieldEnsemble, p2: FieldEnsemble) -> complex:
    """Local inner product: sum over helicities of int d^3r conj(Psi1).Psi2,
    by the grid's composite rule (uniform weights, pairwise summation)."""
    fields1 = _as_ensemble(p1)
    fields2 = _as_ensemble(p2)
    _check_grids(fields1, fields2)
    by_tag2 = {f.helicity: f for f in fields2}
    h3 = fields1[0].grid.h ** 3
    total = 0.0 + 0.0j
    for f1 in fields1:
        f2 = by_tag2[f1.helicity]
        total += h3 * np.vdot(f1.values, f2.values)
    return complex(total)


@lru_cache(maxsize=512)
def _norm_sq_p0(f: HelicityDoublet, spec: QuadratureSpec) -> tuple[float, float]:
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
        res = integrate_spherical(
            g, 0, scaled, anisotropy=f.anisotropy, axial=f.axial_symmetry)
        value += res.value.real
        error += res.error
    return value, error


def fidelity_p(f1: HelicityDoublet, f2: HelicityDoublet, spec: QuadratureSpec,
               constants: PhysicalConstants = DEFAULT_CONSTANTS) -> FidelityReport:
    """Position fidelity |<Psi1|Psi2>|^2 / (<Psi1|Psi1><Psi2|Psi2>).

    Primary path is momentum-side: the local d^3r product equals hbar*c
    times the plain-measure d^3k overlap of the momentum amplitudes, so no
    grid enters. The grid path (grid_fidelity_p) exists to validate this
    reduction.
    """
    from .errors import DegenerateStateError

    n1, e1 = _norm_sq_p0(f1, spec)
    n2, e2 = _norm_sq_p0(f2, spec)
    if n1 < ZERO_NORM_TOL or n2 < ZERO_NORM_TOL:
        raise DegenerateStateError("fidelity of a zero-norm state is undefined")
    ip, eip = _pair_integral(f1, f2, spec, p=0)
    value = abs(ip) ** 2 / (n1 * n2)
    rel = e1 / n1 + e2 / n2
    if abs(ip) > 0:
        rel += 2 * eip / abs(ip)
    hc = constants.hbar_c
    return FidelityReport(value=value, measure="p", numerical_error=rel * value,
                          norm1=hc * n1, norm2=hc * n2)


def momentum_side_overlap(f1: HelicityDoublet, f2: HelicityDoublet,
                          spec: QuadratureSpec,
                          constants: PhysicalConstants = DEFAULT_CONSTANTS) -> complex:
    """The local inner product evaluated on the momentum side (exact path)."""
    ip, _ = _pair_integral(f1, f2, spec, p=0)
    return constants.hbar_c * ip


def grid_fidelity_p(f1: HelicityDoublet, f2: HelicityDoublet, grid: SpatialGrid,
                    spec: QuadratureSpec, *, oversample: int = 1,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> FidelityReport:
    """Position fidelity from synthesized fields on the given grid.

    Subject to box truncation: mass outside the grid is simply not seen.
    """
    ensembles = []
    for f in (f1, f2):
        tags = [h for h in "+-" if f.component(h) is not None]
        ensembles.append(tuple(
            synthesize_position(f, h, grid, spec, oversample=oversample,
                                constants=constants)
            for h in tags))
    ip12 = inner_product_p(ensembles[0], ensembles[1])
    n1 = inner_product_p(ensembles[0], ensembles[0]).real
    n2 = inner_product_p(ensembles[1], ensembles[1]).real
    value = abs(ip12) ** 2 / (n1 * n2)
    return FidelityReport(value=value, measure="p", numerical_error=float("nan"),
                          norm1=n1, norm2=n2, note="grid path")


def _kernel_apply(pts: np.ndarray, F: np.ndarray, diag: float) -> np.ndarray:
    """(K @ F) with K_ij = 1/|r_i - r_j|^2 and K_ii = diag, in row chunks."""
    n = pts.shape[0]
    out = np.empty_like(F)
    rr = np.sum(pts * pts, axis=1)
    step = max(1, int(2e7) // n)
    for s in range(0, n, step):
        e = min(n, s + step)
        d2 = rr[s:e, None] + rr[None, :] - 2.0 * (pts[s:e] @ pts.T)
        np.maximum(d2, 0.0, out=d2)
        with np.errstate(divide="ignore"):
            Kc = 1.0 / d2
        for i in range(s, e):
            Kc[i - s, i] = diag
        out[s:e] = Kc @ F
    return out


def nonlocal_inner_product(p1: FieldEnsemble, p2: FieldEnsemble) -> complex:
    """Double-sum inner product with the 1/|r-r'|^2 kernel.

    (1/2pi^2) sum_lambda int int d^3r d^3r' conj(Psi1).Psi2 / |r-r'|^2,
    evaluated by direct double summation; the r = r' cell uses the kernel
    value at a half-cell offset (the kernel is integrable, so any
    consistent regularization converges). Restricted to coarse grids:
    this is an oracle, not a production path.
    """
    fields1 = _as_ensemble(p1)
    fields2 = _as_ensemble(p2)
    _check_grids(fields1, fields2)
    grid = fields1[0].grid
    if grid.points > MAX_NONLOCAL_POINTS:
        raise ResourceLimitError(
            f"nonlocal product limited to {MAX_NONLOCAL_POINTS}^3 grids, "
            f"got {grid.points}^3")
    ax = grid.axis()
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1)
    h = grid.h
    diag = 4.0 / (h * h)
    by_tag2 = {f.helicity: f for f in fields2}
    total = 0.0 + 0.0j
    for f1 in fields1:
        f2 = by_tag2[f1.helicity]
        A1 = np.stack([c.ravel() for c in f1.values], axis=1)
        A2 = np.stack([c.ravel() for c in f2.values], axis=1)
        M2 = _kernel_apply(pts, A2, diag)
        total += np.sum(np.conj(A1) * M2)
    return complex(total * h**6 / (2 * math.pi**2))


def photon_number_norm(p: FieldEnsemble,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Total photon number of a field ensemble via the nonlocal kernel."""
    return nonlocal_inner_product(p, p).real / constants.hbar_c


class PlaneWaveSolution:
    """chi(r,t) = e^{i(k.r - omega t)}, omega = c|k|: a d'Alembert solution
    with analytic derivatives of every order."""

    def __init__(self, k, constants: PhysicalConstants = DEFAULT_CONSTANTS):
        self.k = np.asarray(k, dtype=float)
        if self.k.shape != (3,):
            raise InvalidParameterError("wave vector must be a 3-vector")
        self.omega = constants.c * float(np.linalg.norm(self.k))
        self._factors = {
            "x": 1j * self.k[0],
            "y": 1j * self.k[1],
            "z": 1j * self.k[2],
            "t": -1j * self.omega,
        }

    def __call__(self, x, y, z, t):
        return np.exp(1j * (self.k[0] * x + self.k[1] * y + self.k[2] * z
                            - self.omega * t))

    def second_derivative(self, axes: str, x, y, z, t):
        fac = self._factors[axes[0]] * self._factors[axes[1]]
        return fac * self(x, y, z, t)


def _fd_second(chi, axes, X, Y, Z, t, h, ht):
    def sh(axis, s):
        dx = dy = dz = 0.0
        dt = 0.0
        if axis == "x":
            dx = s * h
        elif axis == "y":
            dy = s * h
        elif axis == "z":
            dz = s * h
        else:
            dt = s * ht
        return np.asarray(chi(X + dx, Y + dy, Z + dz, t + dt), dtype=complex)

    a, b = axes[0], axes[1]
    sa = h if a != "t" else ht
    sb = h if b != "t" else ht
    if a == b:
        return (sh(a, 1) - 2.0 * np.asarray(chi(X, Y, Z, t), dtype=complex)
                + sh(a, -1)) / (sa * sa)

    def sh2(s1, s2):
        dx = dy = dz = 0.0
        dt = 0.0
        for axis, s in ((a, s1), (b, s2)):
            if axis == "x":
                dx += s * h
            elif axis == "y":
                dy += s * h
            elif axis == "z":
                dz += s * h
            else:
                dt += s * ht
        return np.asarray(chi(X + dx, Y + dy, Z + dz, t + dt), dtype=complex)

    return (sh2(1, 1) - sh2(1, -1) - sh2(-1, 1) + sh2(-1, -1)) / (4.0 * sa * sb)


def whittaker_field(chi, grid: SpatialGrid,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> PositionField:
    """Field from a scalar d'Alembert solution via the fixed second-derivative
    matrix: F = (dx dz + (i/c) dy dt, dy dz - (i/c) dx dt, -(dx^2 + dy^2)) chi.

    Uses chi.second_derivative(axes, x, y, z, t) when available; otherwise
    falls back to O(h^2) central differences (time step h/c).
    """
    ax = grid.axis()
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    t = grid.time
    c = constants.c
    if hasattr(chi, "second_derivative"):
        d = lambda axes: np.asarray(chi.second_derivative(axes, X, Y, Z, t),
                                    dtype=complex)
    else:
        h = grid.h
        d = lambda axes: _fd_second(chi, axes, X, Y, Z, t, h, h / c)
    fx = d("xz") + (1j / c) * d("yt")
    fy = d("yz") - (1j / c) * d("xt")
    fz = -(d("xx") + d("yy"))
    return PositionField(grid=grid, values=np.stack([fx, fy, fz]), helicity="RS")


def _central_diff(v: np.ndarray, axis: int, h: float) -> np.ndarray:
    sl_p = [slice(1, -1)] * 3
    sl_m = [slice(1, -1)] * 3
    sl_p[axis] = slice(2, None)
    sl_m[axis] = slice(None, -2)
    return (v[tuple(sl_p)] - v[tuple(sl_m)]) / (2.0 * h)


def maxwell_residual_parts(p: PositionField, dF_dt: PositionField,
                           constants: PhysicalConstants = DEFAULT_CONSTANTS,
                           ) -> tuple[float, float]:
    """(max |i dF/dt - c curl F|, max |div F|) over interior points."""
    if (p.grid.points, p.grid.extent, p.grid.time) != \
            (dF_dt.grid.points, dF_dt.grid.extent, dF_dt.grid.time):
        raise IncompatibleGridError("field and its time derivative use different grids")
    h = p.grid.h
    c = constants.c
    F = p.values
    core = (slice(None), slice(1, -1), slice(1, -1), slice(1, -1))
    curl = np.stack([
        _central_diff(F[2], 1, h) - _central_diff(F[1], 2, h),
        _central_diff(F[0], 2, h) - _central_diff(F[2], 0, h),
        _central_diff(F[1], 0, h) - _central_diff(F[0], 1, h),
    ])
    schro = np.max(np.abs(1j * dF_dt.values[core] - c * curl))
    div = np.abs(_central_diff(F[0], 0, h) + _central_diff(F[1], 1, h)
                 + _central_diff(F[2], 2, h)).max()
    return float(schro), float(div)


def maxwell_residual(p: PositionField, dF_dt: PositionField,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Combined residual: Schrodinger-form part plus divergence part."""
    schro, div = maxwell_residual_parts(p, dF_dt, constants)
    return schro + div


def field_to_csv(p: PositionField, stream) -> None:
    """Write the field as CSV rows x,y,z + Re/Im of the three components."""
    stream.write("x,y,z,re_fx,im_fx,re_fy,im_fy,re_fz,im_fz\n")
    ax = p.grid.axis()
    v = p.values
    for i, x in enumerate(ax):
        for j, y in enumerate(ax):
            for l, z in enumerate(ax):
                row = [x, y, z]
                for comp in range(3):
                    row.append(v[comp, i, j, l].real)
                    row.append(v[comp, i, j, l].imag)
                stream.write(",".join(f"{val:.9g}" for val in row) + "\n")
