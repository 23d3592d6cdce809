"""Localization extension: how far a state must be displaced before a chosen
fidelity measure drops to a threshold, plus bulk curve evaluation.

The displacement is always along z, in the same length units as the state's
scale l. Fidelity-versus-shift is monotone decreasing for the states of
interest; the solver brackets the crossing by doubling and then bisects,
flagging non-monotone behaviour instead of silently returning one of several
roots.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import AmbiguousRootError, InvalidParameterError, NoCrossingError
from .momentum_fidelity import (
    CoherentStateSpec,
    FidelityReport,
    fidelity_c,
    fidelity_m,
)
from .position_space import fidelity_p
from .quadrature import QuadratureSpec
from .wavefunctions import HelicityDoublet, translate

MEASURES = ("m", "p", "c")
BRACKET_START_FRACTION = 1.0 / 16.0
ROOT_TOL_FRACTION = 1e-6


@dataclass(frozen=True)
class ExtensionQuery:
    """Threshold crossing to locate, and how."""

    measure: str = "c"
    threshold: float = 0.15
    mean_photons: float = 1.0
    bracket_max: float = 200.0  # in units of the state's length scale

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise InvalidParameterError(f"measure must be one of {MEASURES}")
        if not (0.0 < self.threshold < 1.0):
            raise InvalidParameterError("threshold must lie strictly in (0, 1)")
        if self.mean_photons < 0:
            raise InvalidParameterError("mean photon number must be nonnegative")
        if not (self.bracket_max > BRACKET_START_FRACTION):
            raise InvalidParameterError("bracket_max too small to search")


@dataclass(frozen=True)
class CurveRequest:
    """A sampled fidelity curve: shift sweep or coherent phase sweep."""

    measure: str = "m"
    start: float = 0.0
    stop: float = 5.0
    steps: int = 101
    mean_photons: float = 1.0
    sweep: str = "shift"  # "shift" (x = a/l) or "phase" (x = phi)

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise InvalidParameterError(f"measure must be one of {MEASURES}")
        if self.steps < 2:
            raise InvalidParameterError("a curve needs at least 2 steps")
        if not (self.stop > self.start):
            raise InvalidParameterError("stop must exceed start")
        if self.sweep not in ("shift", "phase"):
            raise InvalidParameterError("sweep must be 'shift' or 'phase'")
        if self.sweep == "phase" and self.measure != "c":
            raise InvalidParameterError("phase sweep is defined for measure 'c' only")
        if self.sweep == "shift" and self.start < 0:
            raise InvalidParameterError("shift sweep starts at a nonnegative value")


def fidelity_of_shift(f: HelicityDoublet, a: float, measure: str,
                      spec: QuadratureSpec, *, mean_photons: float = 1.0,
                      ) -> FidelityReport:
    """Fidelity between the state and its copy displaced by a along z."""
    if measure not in MEASURES:
        raise InvalidParameterError(f"measure must be one of {MEASURES}")
    shifted = translate(f, (0.0, 0.0, float(a)))
    if measure == "m":
        return fidelity_m(f, shifted, spec)
    if measure == "p":
        return fidelity_p(f, shifted, spec)
    s1 = CoherentStateSpec(wavefunction=f, mean_photons=mean_photons)
    s2 = CoherentStateSpec(wavefunction=shifted, mean_photons=mean_photons)
    return fidelity_c(s1, s2, spec)


def coherent_phase_fidelity(f: HelicityDoublet, phi: float, mean_photons: float,
                            spec: QuadratureSpec) -> FidelityReport:
    """Coherent fidelity between a state and itself with shifted overall phase."""
    s1 = CoherentStateSpec(wavefunction=f, mean_photons=mean_photons)
    s2 = CoherentStateSpec(wavefunction=f, mean_photons=mean_photons,
                           overall_phase=float(phi))
    return fidelity_c(s1, s2, spec)


def extension(f: HelicityDoublet, query: ExtensionQuery, spec: QuadratureSpec,
              *, _fidelity_fn: Optional[Callable[[float], float]] = None) -> float:
    """Displacement at which the fidelity falls to the query threshold.

    Brackets by doubling from l/16, bisects to 1e-6 * l, and checks each
    midpoint value against the bracket values: a midpoint outside them means
    the curve is not monotone on the bracket and the crossing is ambiguous.
    """
    l = f.length_scale
    if _fidelity_fn is not None:
        fid = _fidelity_fn
    else:
        def fid(a: float) -> float:
            return fidelity_of_shift(f, a, query.measure, spec,
                                     mean_photons=query.mean_photons).value

    thr = query.threshold
    a = BRACKET_START_FRACTION * l
    fa = fid(a)
    if fa <= thr:
        lo, flo = 0.0, 1.0  # zero shift is an identical copy
        hi, fhi = a, fa
    else:
        lo, flo = a, fa
        while True:
            a *= 2.0
            if a > query.bracket_max * l:
                raise NoCrossingError(
                    f"fidelity stays above {thr} out to {query.bracket_max} "
                    "length scales")
            fa = fid(a)
            if fa <= thr:
                hi, fhi = a, fa
                break
            lo, flo = a, fa

    slack = 1e-9
    while hi - lo > ROOT_TOL_FRACTION * l:
        mid = 0.5 * (lo + hi)
        fm = fid(mid)
        if fm > flo + slack or fm < fhi - slack:
            raise AmbiguousRootError(
                "fidelity is not monotone on the bracket; multiple threshold "
                "crossings are possible")
        if fm > thr:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def _curve_workers() -> int:
    env = os.environ.get("PHOTON_FIDELITY_THREADS", "")
    if env.strip():
        try:
            n = int(env)
        except ValueError:
            raise InvalidParameterError(
                f"PHOTON_FIDELITY_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise InvalidParameterError("PHOTON_FIDELITY_THREADS must be >= 1")
        return n
    return min(4, os.cpu_count() or 1)


def emit_curve(f: HelicityDoublet, request: CurveRequest, spec: QuadratureSpec,
               stream=None) -> List[Tuple[float, float]]:
    """Evaluate the requested curve; optionally write it as CSV.

    Rows are (a/l, fidelity) for shift sweeps and (phi, fidelity) for phase
    sweeps, in sweep order. Evaluation is spread over a small thread pool
    (capped by PHOTON_FIDELITY_THREADS); row order is preserved regardless.
    """
    xs = np.linspace(request.start, request.stop, request.steps)
    if request.sweep == "shift":
        l = f.length_scale

        def job(x: float) -> float:
            return fidelity_of_shift(f, x * l, request.measure, spec,
                                     mean_photons=request.mean_photons).value
        header = "a_over_l,fidelity"
    else:
        def job(x: float) -> float:
            return coherent_phase_fidelity(f, x, request.mean_photons, spec).value
        header = "phi,fidelity"

    with ThreadPoolExecutor(max_workers=_curve_workers()) as pool:
        values = list(pool.map(job, xs))
    rows = list(zip((float(x) for x in xs), values))
    if stream is not None:
        stream.write(header + "\n")
        for x, v in rows:
            stream.write(f"{x:.9g},{v:.9g}\n")
    return rows
