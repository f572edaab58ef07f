"""Three-path superpositions behind the analyzer of the double-loop device.

Paths are labelled by the beams they traverse: ``(acf)`` carries the loop-B
elements ``chi_f``/``alpha_f``, ``(adg)`` carries ``chi_d``/``alpha_d`` and
``(beg)`` is left empty.  Phases are stored as ``chi = Delta * k0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .crystal import ComplexAmp, CrystalParams, diffract_amp, transmit_amp
from .errors import DomainError

__all__ = [
    "LoopSettings",
    "absorption_from_transmission",
    "path_factor",
    "forward_coefficients",
    "diffracted_coefficients",
    "psi_forward",
    "psi_diffracted",
]


def _check_alpha(alpha: float, name: str) -> None:
    if math.isnan(alpha) or alpha < 0:
        raise DomainError(f"{name} must be >= 0, got {alpha}")


@dataclass(frozen=True)
class LoopSettings:
    """Phase shifters and absorbers inserted in beams (d) and (f).

    Absorptions may be ``math.inf`` (opaque beam).
    """

    chi_d: float = 0.0
    chi_f: float = 0.0
    alpha_d: float = 0.0
    alpha_f: float = 0.0

    def __post_init__(self):
        _check_alpha(self.alpha_d, "alpha_d")
        _check_alpha(self.alpha_f, "alpha_f")

    @property
    def t_d(self) -> float:
        return math.exp(-2.0 * self.alpha_d)

    @property
    def t_f(self) -> float:
        return math.exp(-2.0 * self.alpha_f)

    @classmethod
    def from_transmission(cls, t_d: float = 1.0, chi_d: float = 0.0,
                          chi_f: float = 0.0, t_f: float = 1.0) -> "LoopSettings":
        return cls(chi_d, chi_f, absorption_from_transmission(t_d),
                   absorption_from_transmission(t_f))

    def swapped(self) -> "LoopSettings":
        """Exchange the elements of beams (d) and (f)."""
        return LoopSettings(self.chi_f, self.chi_d, self.alpha_f, self.alpha_d)


def absorption_from_transmission(t: float) -> float:
    """Inverse of ``T = exp(-2 alpha)``; ``T = 0`` maps to ``inf``."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"transmission must lie in [0, 1], got {t}")
    if t == 0.0:
        return math.inf
    return -0.5 * math.log(t)


def path_factor(chi: float, alpha: float) -> ComplexAmp:
    """``exp(i chi - alpha)``; exactly zero for infinite absorption."""
    _check_alpha(alpha, "alpha")
    if math.isinf(alpha):
        return ComplexAmp(0.0)
    a = math.exp(-alpha)
    return ComplexAmp(complex(a * math.cos(chi), a * math.sin(chi)))


def forward_coefficients(y: float, params: CrystalParams):
    """Crystal weights of paths ``(acf, adg, beg)`` in the forward beam.

    Every path is transmitted twice and diffracted twice, so all three share
    ``v0**2 * vG * v0'``.
    """
    v0 = transmit_amp(y, params)
    vg = diffract_amp(y, params)
    v0p = diffract_amp(-y, params)
    c = v0 * v0 * vg * v0p
    return c, c, c


def diffracted_coefficients(y: float, params: CrystalParams):
    """Crystal weights of paths ``(acf, adg, beg)`` in the diffracted beam."""
    v0 = transmit_amp(y, params)
    vg = diffract_amp(y, params)
    v0p = diffract_amp(-y, params)
    vgp = transmit_amp(-y, params)
    c_f = v0 * vg * v0 * vgp
    c_db = v0 * vg * vg * v0p
    return c_f, c_db, c_db


def _superpose(coeffs, s: LoopSettings) -> ComplexAmp:
    c_f, c_d, c_b = coeffs
    total = (c_f * path_factor(s.chi_f, s.alpha_f)
             + c_d * path_factor(s.chi_d, s.alpha_d)
             + c_b)
    return ComplexAmp(total)


def psi_forward(y: float, params: CrystalParams, s: LoopSettings) -> ComplexAmp:
    """Forward wave behind the analyzer for unit incident amplitude."""
    return _superpose(forward_coefficients(y, params), s)


def psi_diffracted(y: float, params: CrystalParams, s: LoopSettings) -> ComplexAmp:
    """Diffracted wave behind the analyzer for unit incident amplitude."""
    return _superpose(diffracted_coefficients(y, params), s)
