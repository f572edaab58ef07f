"""Dynamical-diffraction amplitudes of a single perfect-crystal plate.

A plate of thickness ``D`` with Pendelloesung length ``L0`` is summarised by
``abar = pi * D / L0``.  The transmitted amplitude ``v0`` and diffracted
amplitude ``vG`` depend on the plate only through the crystal phase
``x = abar * sqrt(1 + y**2)`` and on the Bragg deviation ``y``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "ComplexAmp",
    "CrystalParams",
    "pendelloesung",
    "deviation_y",
    "transmit_amp",
    "diffract_amp",
    "amplitudes_at_phase",
]


class ComplexAmp(complex):
    """A complex amplitude with ``re``/``im`` accessors.

    Arithmetic falls back to the builtin :class:`complex`, so products of
    amplitudes are ordinary complex numbers.
    """

    @property
    def re(self) -> float:
        return self.real

    @property
    def im(self) -> float:
        return self.imag

    @property
    def modulus_squared(self) -> float:
        return self.real * self.real + self.imag * self.imag


@dataclass(frozen=True)
class CrystalParams:
    """Geometry of one interferometer plate (lengths in cm).

    ``include_global_phase`` keeps the factor ``exp(i P D)`` with
    ``P = -pi (1 + y) / L0``; it is common to all paths and cancels in every
    intensity.
    """

    thickness_D: float
    pendelloesung_L0: float
    include_global_phase: bool = False

    def __post_init__(self):
        if not (self.thickness_D > 0 and math.isfinite(self.thickness_D)):
            raise DomainError(f"thickness must be positive, got {self.thickness_D}")
        if not (self.pendelloesung_L0 > 0 and math.isfinite(self.pendelloesung_L0)):
            raise DomainError(
                f"Pendelloesung length must be positive, got {self.pendelloesung_L0}"
            )

    @property
    def abar(self) -> float:
        return math.pi * self.thickness_D / self.pendelloesung_L0

    @classmethod
    def from_abar(cls, abar: float, pendelloesung_L0: float = 0.00641,
                  include_global_phase: bool = False) -> "CrystalParams":
        if not abar > 0:
            raise DomainError(f"abar must be positive, got {abar}")
        return cls(abar * pendelloesung_L0 / math.pi, pendelloesung_L0,
                   include_global_phase)

    def global_phase(self, y: float) -> complex:
        """``exp(i P D)`` at deviation ``y``; equals ``exp(-i abar (1 + y))``."""
        p = -math.pi * (1.0 + y) / self.pendelloesung_L0
        return complex(math.cos(p * self.thickness_D), math.sin(p * self.thickness_D))


def pendelloesung(lam: float, gamma: float, potential_ratio: float) -> float:
    """Pendelloesung length ``lam * cos(gamma) / |V(G)/E|``.

    ``gamma`` is the angle between the beam and the plate normal, not the
    phase factor of the same name that multiplies the forward wave.
    """
    if not lam > 0:
        raise DomainError(f"wavelength must be positive, got {lam}")
    if not potential_ratio > 0:
        raise DomainError(f"potential ratio must be positive, got {potential_ratio}")
    if not abs(gamma) < math.pi / 2:
        raise DomainError(f"|gamma| must be below pi/2, got {gamma}")
    return lam * math.cos(gamma) / potential_ratio


def deviation_y(k: float, theta: float, theta_B: float, potential_ratio: float) -> float:
    """Dimensionless deviation from the Bragg condition (symmetric geometry).

    Positive when ``theta < theta_B``.
    """
    if not potential_ratio > 0:
        raise DomainError(f"potential ratio must be positive, got {potential_ratio}")
    return k * math.sin(2.0 * theta_B) * (theta_B - theta) / potential_ratio


def amplitudes_at_phase(x, y):
    """Return ``(v0, vG)`` for crystal phase ``x`` and deviation ``y``.

    Vectorised over numpy broadcasting; no global phase is applied.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = np.sqrt(1.0 + y * y)
    s = np.sin(x) / w
    v0 = np.cos(x) + 1j * y * s
    vg = -1j * s
    return v0, vg


def _phase(y: float, params: CrystalParams) -> float:
    return params.abar * math.sqrt(1.0 + y * y)


def transmit_amp(y: float, params: CrystalParams) -> ComplexAmp:
    """Transmitted amplitude ``v0(y)`` of one plate."""
    x = _phase(y, params)
    w = math.sqrt(1.0 + y * y)
    amp = complex(math.cos(x), y * math.sin(x) / w)
    if params.include_global_phase:
        amp *= params.global_phase(y)
    return ComplexAmp(amp)


def diffract_amp(y: float, params: CrystalParams) -> ComplexAmp:
    """Diffracted amplitude ``vG(y)`` of one plate.

    The mirrored partners are ``v0'(y) = diffract_amp(-y)`` and
    ``vG'(y) = transmit_amp(-y)``.
    """
    x = _phase(y, params)
    amp = complex(0.0, -math.sin(x) / math.sqrt(1.0 + y * y))
    if params.include_global_phase:
        amp *= params.global_phase(y)
    return ComplexAmp(amp)
