import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dloop.crystal import (
    ComplexAmp,
    CrystalParams,
    amplitudes_at_phase,
    deviation_y,
    diffract_amp,
    pendelloesung,
    transmit_amp,
)
from dloop.errors import DomainError

# Si (2,2,0), 2 A neutrons, symmetric Laue: beam-to-normal angle equals the
# Bragg angle; the potential ratio is the value that gives the quoted 0.00641 cm.
SI220_LAMBDA = 2e-8
SI220_D_SPACING = 5.431e-8 / math.sqrt(8)
SI220_GAMMA = math.asin(SI220_LAMBDA / (2 * SI220_D_SPACING))
SI220_RATIO = 2.6627e-6


def test_pendelloesung_si220_regression():
    assert pendelloesung(SI220_LAMBDA, SI220_GAMMA, SI220_RATIO) == pytest.approx(0.00641, abs=5e-6)


def test_pendelloesung_identity_and_direct():
    assert pendelloesung(3.0, 0.0, 1.0) == 3.0
    assert pendelloesung(2e-8, 0.0, 1e-6) == pytest.approx(2e-2, rel=1e-15)


@pytest.mark.parametrize("args", [(0.0, 0.1, 1e-6), (-1.0, 0.1, 1e-6), (1.0, 0.1, 0.0),
                                  (1.0, math.pi / 2, 1e-6)])
def test_pendelloesung_domain(args):
    with pytest.raises(DomainError):
        pendelloesung(*args)


def test_deviation_y():
    assert deviation_y(1e8, 0.3, 0.3, 1e-6) == 0.0
    k = math.pi * 1e8
    theta_b = math.pi / 4
    assert deviation_y(k, theta_b - 1e-6, theta_b, 1e-6) == pytest.approx(k, rel=1e-9)
    assert deviation_y(k, theta_b + 1e-6, theta_b, 1e-6) == pytest.approx(-k, rel=1e-9)
    with pytest.raises(DomainError):
        deviation_y(k, 0.1, 0.2, -1.0)


def test_params_derive_abar():
    p = CrystalParams(0.5, 0.00641)
    assert p.abar == pytest.approx(math.pi * 0.5 / 0.00641, rel=1e-15)
    assert CrystalParams.from_abar(1.25).abar == pytest.approx(1.25, rel=1e-14)
    for bad in [(0.0, 1.0), (1.0, -1.0), (math.nan, 1.0)]:
        with pytest.raises(DomainError):
            CrystalParams(*bad)


def test_complex_amp_accessors():
    a = ComplexAmp(3 + 4j)
    assert (a.re, a.im, a.modulus_squared) == (3.0, 4.0, 25.0)


@pytest.mark.parametrize("abar", [0.3, 1.0, 2.2])
def test_transmit_at_exact_bragg(abar):
    p = CrystalParams.from_abar(abar)
    assert transmit_amp(0.0, p).modulus_squared == pytest.approx(math.cos(abar) ** 2, abs=1e-14)


def test_transmit_node():
    p = CrystalParams.from_abar(math.pi / 2)
    assert transmit_amp(0.0, p).modulus_squared == pytest.approx(0.0, abs=1e-28)
    assert diffract_amp(0.0, p).modulus_squared == pytest.approx(1.0, abs=1e-14)


def test_off_bragg_values():
    # mpmath at 30 digits
    p = CrystalParams.from_abar(math.pi / 4)
    assert transmit_amp(1.0, p).modulus_squared == pytest.approx(0.598575033230296643, abs=1e-14)
    assert diffract_amp(1.0, p).modulus_squared == pytest.approx(0.401424966769703357, abs=1e-14)


@pytest.mark.parametrize("abar", [0.1, 1.0, math.pi, 100.0])
def test_unitarity_grid(abar):
    p = CrystalParams.from_abar(abar)
    for y in np.linspace(-50, 50, 1001):
        total = transmit_amp(y, p).modulus_squared + diffract_amp(y, p).modulus_squared
        assert abs(total - 1.0) < 1e-12


@given(st.floats(-1e3, 1e3), st.floats(1e-3, 1e3))
def test_diffract_even_in_y(y, abar):
    p = CrystalParams.from_abar(abar)
    assert diffract_amp(y, p).modulus_squared == pytest.approx(
        diffract_amp(-y, p).modulus_squared, rel=1e-12, abs=1e-15)


@given(st.floats(-100, 100), st.floats(1e-2, 50))
def test_global_phase_leaves_moduli(y, abar):
    plain = CrystalParams.from_abar(abar)
    phased = CrystalParams.from_abar(abar, include_global_phase=True)
    for fn in (transmit_amp, diffract_amp):
        assert fn(y, phased).modulus_squared == pytest.approx(
            fn(y, plain).modulus_squared, rel=1e-12, abs=1e-15)


def test_global_phase_formula():
    p = CrystalParams.from_abar(0.7, include_global_phase=True)
    assert p.global_phase(0.4) == pytest.approx(complex(math.cos(-0.7 * 1.4), math.sin(-0.7 * 1.4)))


def test_diffract_purely_imaginary_at_bragg():
    for abar in (0.3, 1.7, 40.0):
        assert abs(diffract_amp(0.0, CrystalParams.from_abar(abar)).re) < 1e-12


def test_vectorised_amplitudes_match_scalar():
    p = CrystalParams.from_abar(2.3)
    ys = np.array([-3.0, -0.2, 0.0, 1.5])
    v0, vg = amplitudes_at_phase(p.abar * np.sqrt(1 + ys ** 2), ys)
    for i, y in enumerate(ys):
        assert v0[i] == pytest.approx(complex(transmit_amp(y, p)), abs=1e-14)
        assert vg[i] == pytest.approx(complex(diffract_amp(y, p)), abs=1e-14)
