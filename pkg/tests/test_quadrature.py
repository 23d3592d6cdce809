import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_fidelity import (
    ConvergenceError,
    InvalidParameterError,
    QuadratureSpec,
    integrate_spherical,
)


def test_spec_validation():
    with pytest.raises(InvalidParameterError):
        QuadratureSpec(radial_nodes=4)
    with pytest.raises(InvalidParameterError):
        QuadratureSpec(polar_nodes=2)
    with pytest.raises(InvalidParameterError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(InvalidParameterError):
        QuadratureSpec(max_refinements=0)


@pytest.mark.parametrize("p,exact", [(0, 8 * math.pi), (1, 4 * math.pi),
                                     (2, 4 * math.pi)])
def test_exponential_moments(spec, p, exact):
    # int d^3k k^{-p} e^{-k} = 4 pi Gamma(3 - p)
    res = integrate_spherical(lambda kx, ky, kz:
                              np.exp(-np.sqrt(kx**2 + ky**2 + kz**2)),
                              p, spec, axial=True)
    assert res.error < abs(res.value) * 1e-6
    assert abs(res.value - exact) <= 1e-10 * exact


def test_invalid_weight_power(spec):
    with pytest.raises(InvalidParameterError):
        integrate_spherical(lambda kx, ky, kz: kx * 0 + 1.0, 3, spec)


def test_negative_hint_rejected(spec):
    with pytest.raises(InvalidParameterError):
        integrate_spherical(lambda kx, ky, kz: kx * 0 + 1.0, 0, spec,
                            oscillation=-1.0)


@pytest.mark.parametrize("a", [0.5, 10.0])
def test_oscillatory_axial_integral(spec, a):
    # int d^3k k^{-2} e^{-k} e^{i a k mu} = 4 pi atan(a) / a
    def g(kx, ky, kz):
        k = np.sqrt(kx**2 + ky**2 + kz**2)
        return np.exp(-k) * np.exp(1j * a * kz)

    res = integrate_spherical(g, 2, spec, oscillation=a, axial=True)
    exact = 4 * math.pi * math.atan(a) / a
    assert abs(res.value - exact) <= 1e-8 * exact
    assert abs(res.value.imag) <= 1e-10


def test_zero_integrand_is_exact(spec):
    res = integrate_spherical(lambda kx, ky, kz: kx * 0.0, 1, spec)
    assert res.value == 0
    assert res.refinements <= 1


def test_unhinted_oscillation_raises_with_best_value():
    # a fast phase the node-allocation is told nothing about, with little
    # room to refine: the failure must carry the best estimate seen
    spec = QuadratureSpec(radial_nodes=8, polar_nodes=4, azimuth_nodes=4,
                          rel_tol=1e-12, max_refinements=2)

    def g(kx, ky, kz):
        k = np.sqrt(kx**2 + ky**2 + kz**2)
        return np.exp(-k) * np.exp(60j * kz)

    with pytest.raises(ConvergenceError) as err:
        integrate_spherical(g, 2, spec, axial=True)
    assert err.value.best_value is not None
    assert err.value.error_estimate > 0


@settings(max_examples=15, deadline=None)
@given(st.floats(0.4, 2.5))
def test_error_estimate_covers_true_error(scale):
    spec = QuadratureSpec()

    def g(kx, ky, kz):
        k = np.sqrt(kx**2 + ky**2 + kz**2)
        return np.exp(-k / scale)

    res = integrate_spherical(g, 1, spec, axial=True)
    exact = 4 * math.pi * scale**2
    assert abs(res.value - exact) <= max(10 * res.error, 1e-11 * exact)


def test_radial_scale_hint_changes_nothing_material(spec):
    def g(kx, ky, kz):
        k = np.sqrt(kx**2 + ky**2 + kz**2)
        return np.exp(-2.0 * k)

    from dataclasses import replace
    a = integrate_spherical(g, 1, spec, axial=True)
    b = integrate_spherical(g, 1, replace(spec, radial_scale=0.5), axial=True)
    assert abs(a.value - b.value) <= 1e-9 * abs(a.value)
