import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_fidelity import (
    BranchUndefinedError,
    InconsistentTransformError,
    InvalidParameterError,
    PoincareTransform,
    apply_transform,
    boost_along_y,
    polarization_vector,
    rotation_about_y,
    theta_boost_y,
    theta_general,
    theta_rotation_y,
)


def off_axis_directions(seed, n=100):
    rng = np.random.default_rng(seed)
    theta = np.arccos(rng.uniform(-0.97, 0.97, n))
    phi = rng.uniform(0.0, 2 * math.pi, n)
    k = rng.uniform(0.2, 5.0, n)
    return theta, phi, np.stack([k * np.sin(theta) * np.cos(phi),
                                 k * np.sin(theta) * np.sin(phi),
                                 k * np.cos(theta)])


def test_rotation_phase_example():
    assert abs(theta_rotation_y(math.pi / 2, math.pi / 2, math.pi / 2)
               - math.pi / 2) <= 1e-14


def test_boost_phase_example():
    assert abs(theta_boost_y(0.5, math.pi / 4, 0.0) - math.atan(0.5)) <= 1e-14


def test_zero_parameter_phases_vanish():
    assert theta_rotation_y(0.0, 1.0, 2.0) == 0.0
    assert theta_boost_y(0.0, 1.0, 2.0) == 0.0


@pytest.mark.parametrize("alpha", [0.7, -0.7, 2.9, -1.3])
def test_rotation_closed_form_matches_matrix_product(alpha):
    theta, phi, pts = off_axis_directions(11)
    general = theta_general(rotation_about_y(alpha), pts)
    closed = np.array([theta_rotation_y(alpha, t, p) for t, p in zip(theta, phi)])
    dev = np.abs(np.angle(np.exp(1j * (general - closed)))).max()
    assert dev <= 1e-9


@pytest.mark.parametrize("v", [0.6, -0.6, 0.9, 0.05])
def test_boost_closed_form_matches_matrix_product(v):
    theta, phi, pts = off_axis_directions(12)
    general = theta_general(boost_along_y(v), pts)
    closed = np.array([theta_boost_y(v, t, p) for t, p in zip(theta, phi)])
    dev = np.abs(np.angle(np.exp(1j * (general - closed)))).max()
    assert dev <= 1e-9


def test_defining_product_unimodular():
    _, _, pts = off_axis_directions(13)
    for tr in (rotation_about_y(1.1), boost_along_y(0.8)):
        kx, ky, kz = pts
        kmag = np.sqrt(kx**2 + ky**2 + kz**2)
        kp = np.stack(tr.momentum_map(kx, ky, kz))
        kpmag = np.sqrt((kp**2).sum(axis=0))
        e = polarization_vector(pts, "+")
        ep = polarization_vector(kp, "+")
        u = (kpmag / kmag) * np.einsum("im,ij,jm->m", np.conj(e),
                                       tr.field_matrix("+").T, ep)
        assert np.abs(np.abs(u) - 1.0).max() <= 1e-12


def test_minus_matrix_is_conjugate_for_boost():
    tr = boost_along_y(0.4)
    assert np.allclose(tr.o_minus, np.conj(tr.o_plus))
    rot = rotation_about_y(0.4)
    assert np.allclose(rot.o_minus, rot.o_plus)  # real matrix serves both


def test_light_cone_preserved_by_boost_map():
    tr = boost_along_y(0.77)
    _, _, pts = off_axis_directions(14)
    kx, ky, kz = pts
    k = np.sqrt(kx**2 + ky**2 + kz**2)
    kpx, kpy, kpz = tr.momentum_map(kx, ky, kz)
    kp = np.sqrt(kpx**2 + kpy**2 + kpz**2)
    gamma = 1.0 / math.sqrt(1 - 0.77**2)
    assert np.allclose(kp, gamma * (k + 0.77 * ky), rtol=1e-12)


def test_inconsistent_transform_detected():
    good = boost_along_y(0.6)
    bad = PoincareTransform(kind="general", parameter=0.6,
                            momentum_map=good.momentum_map,
                            inverse_map=good.inverse_map,
                            o_plus=np.conj(good.o_plus),
                            o_minus=good.o_plus)
    _, _, pts = off_axis_directions(15, n=5)
    with pytest.raises(InconsistentTransformError):
        theta_general(bad, pts)


def test_non_orthogonal_matrix_rejected():
    good = rotation_about_y(0.3)
    with pytest.raises(InvalidParameterError):
        PoincareTransform(kind="general", parameter=0.0,
                          momentum_map=good.momentum_map,
                          inverse_map=good.inverse_map,
                          o_plus=np.eye(3) * 1.5, o_minus=np.eye(3))


def test_superluminal_boost_rejected():
    with pytest.raises(InvalidParameterError):
        boost_along_y(1.0)
    with pytest.raises(InvalidParameterError):
        boost_along_y(-1.2)


def test_branch_undefined_on_rotation_fixed_direction():
    # phi = 0 and tan(theta) = tan(alpha): both atan2 arguments vanish
    with pytest.raises(BranchUndefinedError):
        theta_rotation_y(1.0, 1.0, 0.0)
    # the boost form has no reachable double zero for |v| < c: the
    # denominator needs |sin phi| = c/|v| > 1 once cos(theta) = 0


class TestApplyTransform:
    def sample(self, seed=16, n=40):
        rng = np.random.default_rng(seed)
        return rng.normal(scale=1.5, size=(3, n))

    def test_rotation_roundtrip(self, unit_state):
        g = apply_transform(rotation_about_y(-0.7),
                            apply_transform(rotation_about_y(0.7), unit_state))
        kx, ky, kz = self.sample()
        assert np.abs(g.f_plus(kx, ky, kz)
                      - unit_state.f_plus(kx, ky, kz)).max() <= 1e-9

    def test_boost_roundtrip(self, unit_state):
        g = apply_transform(boost_along_y(-0.6),
                            apply_transform(boost_along_y(0.6), unit_state))
        kx, ky, kz = self.sample()
        assert np.abs(g.f_plus(kx, ky, kz)
                      - unit_state.f_plus(kx, ky, kz)).max() <= 1e-9

    def test_rotations_compose(self, unit_state):
        two_step = apply_transform(rotation_about_y(0.4),
                                   apply_transform(rotation_about_y(0.3),
                                                   unit_state))
        one_step = apply_transform(rotation_about_y(0.7), unit_state)
        kx, ky, kz = self.sample()
        assert np.abs(two_step.f_plus(kx, ky, kz)
                      - one_step.f_plus(kx, ky, kz)).max() <= 1e-9

    def test_minus_component_conjugate_phase(self, unit_state):
        from photon_fidelity import HelicityDoublet
        both = HelicityDoublet(f_plus=unit_state.f_plus,
                               f_minus=unit_state.f_plus,
                               axial_symmetry=True, length_scale=1.0)
        tr = rotation_about_y(0.9)
        g = apply_transform(tr, both)
        kx, ky, kz = self.sample(17, 25)
        # f'+ . conj(f'-) = |f|^2 e^{2 i Theta} at the preimage
        bx, by, bz = tr.inverse_map(kx, ky, kz)
        theta = theta_general(tr, np.stack([bx, by, bz]))
        lhs = g.f_plus(kx, ky, kz) * np.conj(g.f_minus(kx, ky, kz))
        rhs = np.abs(unit_state.f_plus(bx, by, bz))**2 * np.exp(2j * theta)
        assert np.abs(lhs - rhs).max() <= 1e-10

    def test_metadata_updates(self, unit_state):
        boosted = apply_transform(boost_along_y(0.6), unit_state)
        assert not boosted.axial_symmetry
        assert abs(boosted.anisotropy - 2.0) <= 1e-12  # sqrt(1.6/0.4)
        rotated = apply_transform(rotation_about_y(0.5), unit_state)
        assert not rotated.axial_symmetry
        assert rotated.anisotropy == unit_state.anisotropy
        unmoved = apply_transform(rotation_about_y(0.0), unit_state)
        assert unmoved.axial_symmetry


@settings(max_examples=30, deadline=None)
@given(st.floats(-3.0, 3.0).filter(lambda a: abs(a) > 1e-3))
def test_rotation_phase_matches_matrix_product_property(alpha):
    theta, phi, pts = off_axis_directions(18, n=12)
    general = theta_general(rotation_about_y(alpha), pts)
    closed = np.array([theta_rotation_y(alpha, t, p) for t, p in zip(theta, phi)])
    assert np.abs(np.angle(np.exp(1j * (general - closed)))).max() <= 1e-9
