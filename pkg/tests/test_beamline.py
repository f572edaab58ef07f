import math

import pytest
from hypothesis import given, strategies as st

from dloop.beamline import (
    LoopSettings,
    absorption_from_transmission,
    path_factor,
    psi_diffracted,
    psi_forward,
)
from dloop.crystal import CrystalParams, diffract_amp, transmit_amp
from dloop.errors import DomainError

QUARTER = CrystalParams.from_abar(math.pi / 4)

phases = st.floats(0, 2 * math.pi)
absorptions = st.one_of(st.floats(0, 5), st.just(math.inf))


def test_path_factor_values():
    assert complex(path_factor(0.0, 0.0)) == 1 + 0j
    assert path_factor(math.pi, 0.0) == pytest.approx(-1 + 0j, abs=1e-15)
    assert path_factor(math.pi / 3, math.log(2)) == pytest.approx(0.25 + 0.4330127018922193j)
    assert complex(path_factor(1.3, math.inf)) == 0j
    with pytest.raises(DomainError):
        path_factor(0.0, -0.1)


def test_settings_validation_and_transmissions():
    s = LoopSettings(alpha_d=0.5, alpha_f=math.inf)
    assert s.t_d == pytest.approx(math.exp(-1.0))
    assert s.t_f == 0.0
    with pytest.raises(DomainError):
        LoopSettings(alpha_d=-1e-9)
    with pytest.raises(DomainError):
        LoopSettings(alpha_f=math.nan)
    assert absorption_from_transmission(0.0) == math.inf
    assert absorption_from_transmission(1.0) == 0.0
    assert LoopSettings.from_transmission(0.25).alpha_d == pytest.approx(math.log(2))
    with pytest.raises(DomainError):
        absorption_from_transmission(1.5)


def test_forward_empty_at_bragg():
    assert psi_forward(0.0, QUARTER, LoopSettings()).modulus_squared == pytest.approx(0.5625, abs=1e-14)


def test_forward_single_path():
    s = LoopSettings(alpha_d=math.inf, alpha_f=math.inf)
    for y in (-2.0, 0.0, 0.7):
        v0, vg, v0p = transmit_amp(y, QUARTER), diffract_amp(y, QUARTER), diffract_amp(-y, QUARTER)
        assert psi_forward(y, QUARTER, s).modulus_squared == pytest.approx(
            abs(v0 * v0 * vg * v0p) ** 2, rel=1e-14)


@pytest.mark.parametrize("abar", [0.4, math.pi / 4, 2.0])
def test_forward_pi_phase_leaves_one_path(abar):
    p = CrystalParams.from_abar(abar)
    got = psi_forward(0.0, p, LoopSettings(chi_f=math.pi)).modulus_squared
    assert got == pytest.approx(math.cos(abar) ** 4 * math.sin(abar) ** 4, rel=1e-12)


def test_diffracted_single_path():
    s = LoopSettings(alpha_d=math.inf, alpha_f=math.inf)
    assert psi_diffracted(0.0, QUARTER, s).modulus_squared == pytest.approx(0.0625, abs=1e-14)


def test_diffracted_mirror_weights_at_bragg():
    # at y = 0 the (f) branch weight is v0**2 vG and the (d)/(b) weight vG**2 v0
    p = CrystalParams.from_abar(0.9)
    v0, vg = transmit_amp(0.0, p), diffract_amp(0.0, p)
    s = LoopSettings(chi_d=0.3, chi_f=1.1, alpha_d=0.2, alpha_f=0.4)
    expected = (v0 * vg * v0 * v0 * path_factor(1.1, 0.4)
                + v0 * vg * vg * vg * (path_factor(0.3, 0.2) + 1))
    assert complex(psi_diffracted(0.0, p, s)) == pytest.approx(expected, abs=1e-14)


def test_diffracted_transmit_node():
    p = CrystalParams.from_abar(math.pi / 2)
    assert psi_diffracted(0.0, p, LoopSettings()).modulus_squared < 1e-28


@given(st.floats(-20, 20), phases, phases, absorptions, absorptions)
def test_forward_swap_symmetry(y, chi_d, chi_f, a_d, a_f):
    s = LoopSettings(chi_d, chi_f, a_d, a_f)
    p = CrystalParams.from_abar(1.3)
    assert psi_forward(y, p, s).modulus_squared == pytest.approx(
        psi_forward(y, p, s.swapped()).modulus_squared, rel=1e-12, abs=1e-15)


def test_diffracted_not_swap_symmetric():
    s = LoopSettings(0.4, 1.9, 0.3, 1.2)
    p = CrystalParams.from_abar(1.3)
    a = psi_diffracted(0.5, p, s).modulus_squared
    b = psi_diffracted(0.5, p, s.swapped()).modulus_squared
    assert abs(a - b) > 1e-3 * max(a, b)


@given(st.floats(-20, 20), phases, absorptions)
def test_global_phase_cancels_in_waves(y, chi, alpha):
    s = LoopSettings(chi, 2.0 * chi, alpha, 0.3)
    plain = CrystalParams.from_abar(0.8)
    phased = CrystalParams.from_abar(0.8, include_global_phase=True)
    for fn in (psi_forward, psi_diffracted):
        assert fn(y, phased, s).modulus_squared == pytest.approx(
            fn(y, plain, s).modulus_squared, rel=1e-10, abs=1e-14)
