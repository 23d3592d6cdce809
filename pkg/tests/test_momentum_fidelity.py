import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_fidelity import (
    CoherentStateSpec,
    DegenerateStateError,
    HelicityDoublet,
    InvalidParameterError,
    UndefinedPhaseError,
    example_state,
    fidelity_c,
    fidelity_m,
    global_phase,
    inner_product_m,
    norm_m,
    phase_diff,
    time_shift,
    translate,
)

ABSCISSAS = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)


def closed_form_fm(x: float) -> float:
    return (math.atan(x) / x) ** 2


@pytest.mark.parametrize("l", [0.5, 1.0, 2.0, 5.0])
def test_example_state_normalized(spec, l):
    assert abs(norm_m(example_state(l), spec) - 1.0) <= 1e-10


@pytest.mark.parametrize("x", ABSCISSAS)
def test_momentum_fidelity_closed_form(spec, unit_state, x):
    shifted = translate(unit_state, (0.0, 0.0, x))
    rep = fidelity_m(unit_state, shifted, spec)
    assert rep.measure == "m"
    assert abs(rep.value - closed_form_fm(x)) <= 1e-9 * closed_form_fm(x)


def test_self_fidelity_is_one(spec, unit_state):
    assert abs(fidelity_m(unit_state, unit_state, spec).value - 1.0) <= 1e-12


def test_fidelity_symmetric(spec, unit_state):
    shifted = translate(unit_state, (0.2, -0.4, 0.9))
    a = fidelity_m(unit_state, shifted, spec).value
    b = fidelity_m(shifted, unit_state, spec).value
    assert abs(a - b) <= 1e-12


@settings(max_examples=10, deadline=None)
@given(st.floats(0.3, 3.0))
def test_fidelity_depends_on_ratio_only(l):
    from photon_fidelity import QuadratureSpec
    spec = QuadratureSpec()
    f = example_state(l)
    rep = fidelity_m(f, translate(f, (0.0, 0.0, l)), spec)
    assert abs(rep.value - closed_form_fm(1.0)) <= 1e-8


def test_time_shift_fidelity(spec, unit_state):
    # l^2 / (l^2 + (c t0)^2): 0.5 at t0 = l, 0.2 at t0 = 2l
    for t0, want in ((1.0, 0.5), (2.0, 0.2)):
        rep = fidelity_m(unit_state, time_shift(unit_state, t0), spec)
        assert abs(rep.value - want) <= 1e-9


def test_phase_diff_recovers_global_phase(spec, unit_state):
    for phi in (math.pi / 3, -2.5):
        assert abs(phase_diff(unit_state, global_phase(unit_state, phi), spec)
                   - phi) <= 1e-10
    shifted = translate(unit_state, (0.0, 0.0, 1.0))
    assert abs(phase_diff(unit_state, shifted, spec)) <= 1e-10


def test_phase_undefined_for_orthogonal_states(spec, unit_state):
    # opposite-helicity components never overlap in the helicity sum
    minus_only = HelicityDoublet(f_plus=None, f_minus=unit_state.f_plus,
                                 axial_symmetry=True, length_scale=1.0)
    assert abs(inner_product_m(unit_state, minus_only, spec)) <= 1e-15
    with pytest.raises(UndefinedPhaseError):
        phase_diff(unit_state, minus_only, spec)


def test_zero_state_degenerate(spec, unit_state):
    zero = HelicityDoublet(f_plus=lambda kx, ky, kz: 0.0 * kx, f_minus=None,
                           axial_symmetry=True, length_scale=1.0)
    with pytest.raises(DegenerateStateError):
        fidelity_m(unit_state, zero, spec)


def test_both_helicities_contribute(spec, unit_state):
    both = HelicityDoublet(f_plus=unit_state.f_plus, f_minus=unit_state.f_plus,
                           axial_symmetry=True, length_scale=1.0)
    assert abs(norm_m(both, spec) - 2.0) <= 1e-9


class TestCoherentFidelity:
    def test_pi_anchor(self, spec, unit_state):
        c1 = CoherentStateSpec(wavefunction=unit_state, mean_photons=1.0)
        c2 = CoherentStateSpec(wavefunction=unit_state, mean_photons=1.0,
                               overall_phase=math.pi)
        rep = fidelity_c(c1, c2, spec)
        assert rep.measure == "c"
        assert abs(rep.value - math.exp(-4.0)) <= 1e-12

    def test_displaced_pair(self, spec, unit_state):
        # exp(-2 N (1 - atan(x)/x)) for the shifted copy at x = 0.3, N = 10
        shifted = translate(unit_state, (0.0, 0.0, 0.3))
        c1 = CoherentStateSpec(wavefunction=unit_state, mean_photons=10.0)
        c2 = CoherentStateSpec(wavefunction=shifted, mean_photons=10.0)
        want = math.exp(-20.0 * (1.0 - math.atan(0.3) / 0.3))
        assert abs(fidelity_c(c1, c2, spec).value - want) <= 1e-8

    def test_unequal_photon_numbers(self, spec, unit_state):
        # exp(-N1 - N2 + 2 sqrt(N1 N2) Re<f1|f2>)
        shifted = translate(unit_state, (0.0, 0.0, 0.5))
        c1 = CoherentStateSpec(wavefunction=unit_state, mean_photons=1.0)
        c2 = CoherentStateSpec(wavefunction=shifted, mean_photons=2.0)
        rep = fidelity_c(c1, c2, spec)
        ov = math.atan(0.5) / 0.5
        want = math.exp(-3.0 + 2.0 * math.sqrt(2.0) * ov)
        assert abs(rep.value - want) <= 1e-8
        assert rep.note  # the generalized path identifies itself

    def test_vacuum_limit(self, spec, unit_state):
        c0 = CoherentStateSpec(wavefunction=unit_state, mean_photons=0.0)
        rep = fidelity_c(c0, c0, spec)
        assert abs(rep.value - 1.0) <= 1e-12

    def test_negative_photon_number_rejected(self, unit_state):
        with pytest.raises(InvalidParameterError):
            CoherentStateSpec(wavefunction=unit_state, mean_photons=-1.0)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0.1, 20.0), st.floats(0.05, 4.0))
    def test_bounds_and_monotonicity_in_photon_number(self, n, x):
        # closed forms only; no integration inside the property
        ov = math.atan(x) / x
        lo = math.exp(-2 * n * (1 - ov))
        hi = math.exp(-2 * (n / 2) * (1 - ov))
        assert 0.0 < lo <= hi <= 1.0


def test_report_norms_filled(spec, unit_state):
    rep = fidelity_m(unit_state, translate(unit_state, (0, 0, 1.0)), spec)
    assert abs(rep.norm1 - 1.0) <= 1e-9
    assert abs(rep.norm2 - 1.0) <= 1e-9
    assert rep.numerical_error >= 0.0
