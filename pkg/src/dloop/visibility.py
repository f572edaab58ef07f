"""Fringe visibilities and the two matching conditions of the double loop.

Intensities in this module that are quoted "up to proportionality" use the
units of the monochromatic forward fringe ``|exp(i chi_d - alpha_d) + 1 +
exp(i chi_f)|**2``, in which the empty interferometer peaks at 9.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .beamline import LoopSettings, absorption_from_transmission
from .errors import DomainError, UnboundedAbsorptionError, UndefinedFringeError
from .intensity import FORWARD_PREFACTOR, Spectrum, k0_closed, spectral_damping

__all__ = [
    "AbsorptionMode",
    "VisibilityResult",
    "visibility_from_extrema",
    "visibility_single",
    "visibility_double",
    "k0_monochromatic",
    "k0_extrema",
    "visibility_double_phase",
    "solve_balance_absorber",
    "solve_unit_visibility_phase",
    "visibility_numeric",
]

TWO_PI = 2.0 * math.pi
# cos(chi_f / 2) below this counts as an exact node (cos(pi/2) is 6e-17 in floats)
_NODE = 1e-15


class AbsorptionMode(enum.Enum):
    """How the absorber in beam (d) removes neutrons.

    Stochastic absorption attenuates every neutron's amplitude by ``sqrt(T)``;
    deterministic absorption (chopper, partial cross-section) lets a fraction
    ``T`` through untouched and blocks the rest.
    """

    STOCHASTIC = "sto"
    DETERMINISTIC = "det"

    @classmethod
    def parse(cls, value) -> "AbsorptionMode":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower()[:3])


@dataclass(frozen=True)
class VisibilityResult:
    value: float
    argmax_chi_d: float
    argmin_chi_d: float
    i_max: float = math.nan
    i_min: float = math.nan


def _check_t(t_d: float) -> None:
    if not 0.0 <= t_d <= 1.0:
        raise DomainError(f"transmission must lie in [0, 1], got {t_d}")


def visibility_from_extrema(i_max: float, i_min: float) -> float:
    if i_min < 0 or i_max < i_min:
        raise DomainError(f"need i_max >= i_min >= 0, got ({i_max}, {i_min})")
    if i_max == 0:
        raise UndefinedFringeError("fringe has zero intensity")
    return (i_max - i_min) / (i_max + i_min)


def visibility_single(t_d: float, mode=AbsorptionMode.STOCHASTIC) -> float:
    """Visibility of a single-loop interferometer with an absorber in one arm."""
    _check_t(t_d)
    mode = AbsorptionMode.parse(mode)
    amp = math.sqrt(t_d) if mode is AbsorptionMode.STOCHASTIC else t_d
    return 2.0 * amp / (1.0 + t_d)


def visibility_double(t_d: float, mode=AbsorptionMode.STOCHASTIC) -> float:
    """Double-loop visibility with the absorber in (d) and nothing in (f)."""
    _check_t(t_d)
    mode = AbsorptionMode.parse(mode)
    amp = math.sqrt(t_d) if mode is AbsorptionMode.STOCHASTIC else t_d
    return 4.0 * amp / (4.0 + t_d)


def k0_monochromatic(chi_d: float, chi_f: float, t_d: float) -> float:
    """Monochromatic forward fringe, absorber in (d) and phase shifter in (f)."""
    _check_t(t_d)
    rt = math.sqrt(t_d)
    return (t_d + 2.0 * rt * (math.cos(chi_d) + math.cos(chi_d - chi_f))
            + 4.0 * math.cos(0.5 * chi_f) ** 2)


def _dk0_monochromatic(chi_d: float, chi_f: float, t_d: float) -> float:
    return -2.0 * math.sqrt(t_d) * (math.sin(chi_d) + math.sin(chi_d - chi_f))


def k0_extrema(chi_f: float, t_d: float):
    """Extremal values and locations in ``chi_d`` of :func:`k0_monochromatic`.

    Returns ``(i_max, i_min, argmax, argmin)`` with locations in ``[0, 2 pi)``.
    ``chi_f`` is reduced modulo ``2 pi`` first; on ``(pi, 2 pi)`` the half-angle
    cosine is negative and maxima and minima trade places.  A flat fringe
    reports both locations as 0.
    """
    _check_t(t_d)
    chi = chi_f % TWO_PI
    c = math.cos(0.5 * chi)
    if abs(c) < _NODE:
        c = 0.0
    rt = math.sqrt(t_d)
    base = t_d + 4.0 * c * c
    swing = 4.0 * rt * abs(c)
    i_max, i_min = base + swing, max(base - swing, 0.0)
    if swing == 0.0:
        return i_max, i_max, 0.0, 0.0
    argmax = 0.5 * chi if c >= 0 else 0.5 * chi + math.pi
    argmin = (argmax + math.pi) % TWO_PI
    return i_max, i_min, argmax % TWO_PI, argmin


def _fringe_amplitude(chi_f: float, alpha_f: float) -> float:
    """``|1 + exp(i chi_f - alpha_f)|``; ``2|cos(chi_f/2)|`` without absorber."""
    if alpha_f == 0:
        b = 2.0 * abs(math.cos(0.5 * chi_f))
    else:
        a = 0.0 if math.isinf(alpha_f) else math.exp(-alpha_f)
        b = math.hypot(1.0 + a * math.cos(chi_f), a * math.sin(chi_f))
    return 0.0 if b < 2.0 * _NODE else b


def visibility_double_phase(t_d: float, chi_f: float, mode=AbsorptionMode.STOCHASTIC,
                            i_incoh: float = 0.0, alpha_f: float = 0.0) -> float:
    """Double-loop visibility with a phase shifter ``chi_f`` in beam (f).

    ``i_incoh`` is an incoherent background added to the fringe, in the units
    of :func:`k0_monochromatic`.  ``alpha_f`` generalises to an absorber next
    to the phase shifter; the default recovers the plain formulas.  The
    half-angle cosine enters through its modulus, so ``chi_f`` beyond ``pi``
    gives the same visibility as its mirror image.
    """
    _check_t(t_d)
    if i_incoh < 0:
        raise DomainError(f"background must be >= 0, got {i_incoh}")
    if alpha_f < 0:
        raise DomainError(f"alpha_f must be >= 0, got {alpha_f}")
    mode = AbsorptionMode.parse(mode)
    b = _fringe_amplitude(chi_f, alpha_f)
    amp = math.sqrt(t_d) if mode is AbsorptionMode.STOCHASTIC else t_d
    denom = b * b + t_d + i_incoh
    if denom == 0.0:
        raise UndefinedFringeError("fringe has zero intensity")
    return 2.0 * amp * b / denom


def solve_balance_absorber(alpha_d: float, chi_d: float, epsilon: float = 0.01) -> float:
    """Absorption in beam (f) that equalises the mean forward and diffracted levels.

    The mean is over ``chi_f``.  Raises :class:`UnboundedAbsorptionError` when
    loop A interferes destructively so completely that no finite absorber
    suffices.
    """
    if math.isnan(alpha_d) or alpha_d < 0:
        raise DomainError(f"alpha_d must be >= 0, got {alpha_d}")
    a = 0.0 if math.isinf(alpha_d) else math.exp(-alpha_d)
    bracket = 1.0 + a * a + 2.0 * a * spectral_damping(chi_d, epsilon) * math.cos(chi_d)
    if bracket <= 1e-12:
        raise UnboundedAbsorptionError(
            f"loop A transmits nothing on average (bracket={bracket:.3g})")
    return -0.5 * math.log(7.0 / 169.0 * bracket)


def solve_unit_visibility_phase(t_d: float) -> float:
    """Phase ``chi_f`` in beam (f) giving unit visibility for transmission ``t_d``.

    Principal branch, in ``[2 pi / 3, pi]``.
    """
    if not 0.0 <= t_d <= 1.0:
        raise DomainError(f"transmission must lie in (0, 1], got {t_d}")
    if t_d == 0.0:
        return math.pi
    return 2.0 * math.acos(0.5 * math.sqrt(t_d))


def _dk0_closed(chi_d: float, chi_f: float, alpha_d: float, eps: float) -> float:
    # d/dchi_d of k0_closed with alpha_f = 0
    a = 0.0 if math.isinf(alpha_d) else math.exp(-alpha_d)
    u = chi_d - chi_f

    def dterm(x):
        return -spectral_damping(x, eps) * (eps * eps * x * math.cos(x) + math.sin(x))

    return FORWARD_PREFACTOR * 2.0 * a * (dterm(chi_d) + dterm(u))


def visibility_numeric(chi_f: float, t_d: float, epsilon: float = 0.0,
                       use_full_closed_form: bool = False,
                       samples: int = 4096, xtol: float = 1e-10) -> VisibilityResult:
    """Visibility of the forward fringe found by scanning ``chi_d``.

    Scans ``[0, 2 pi)`` on a uniform grid, then refines each extremum.  The
    monochromatic fringe is used unless ``use_full_closed_form`` is set, in
    which case the spectrally damped ``K0`` at relative bandwidth ``epsilon``
    is scanned (and its extrema may sit on the scan boundary).
    """
    _check_t(t_d)
    if use_full_closed_form:
        alpha_d = absorption_from_transmission(t_d)
        spec = Spectrum(epsilon)

        def f(x):
            return k0_closed(LoopSettings(x, chi_f, alpha_d, 0.0), spec)

        def df(x):
            return _dk0_closed(x, chi_f, alpha_d, epsilon)

        periodic = epsilon == 0
    else:
        def f(x):
            return k0_monochromatic(x, chi_f, t_d)

        def df(x):
            return _dk0_monochromatic(x, chi_f, t_d)

        periodic = True

    h = TWO_PI / samples
    grid = h * np.arange(samples)
    values = np.array([f(x) for x in grid])
    i_hi, i_lo = int(np.argmax(values)), int(np.argmin(values))
    v_hi, v_lo = values[i_hi], values[i_lo]
    if v_hi - v_lo <= 1e-14 * max(abs(v_hi), 1e-300):
        return VisibilityResult(0.0, 0.0, 0.0, float(v_hi), float(v_lo))

    x_hi = _refine(f, df, grid[i_hi], h, +1, periodic, xtol)
    x_lo = _refine(f, df, grid[i_lo], h, -1, periodic, xtol)
    f_hi, f_lo = max(f(x_hi), v_hi), min(f(x_lo), v_lo)
    f_lo = max(f_lo, 0.0)
    value = visibility_from_extrema(f_hi, f_lo)
    return VisibilityResult(value, x_hi, x_lo, f_hi, f_lo)


def _refine(f, df, x0: float, h: float, sign: int, periodic: bool, xtol: float) -> float:
    """Polish a grid extremum at ``x0``; ``sign`` is +1 for a maximum."""
    lo, hi = x0 - h, x0 + h
    if not periodic:
        lo, hi = max(lo, 0.0), min(hi, TWO_PI - h)
        if lo >= hi:
            return x0
    d_lo, d_hi = df(lo), df(hi)
    if d_lo * d_hi < 0:
        x = optimize.brentq(df, lo, hi, xtol=xtol * 1e-2, rtol=4 * np.finfo(float).eps)
    elif lo < x0 < hi:
        # derivative gives no bracket (extremum nearly flat): fall back to golden section
        x = optimize.golden(lambda u: -sign * f(u), brack=(lo, x0, hi), tol=xtol)
    else:
        x = x0
    if sign * f(x) < sign * f(x0):
        x = x0
    return x % TWO_PI if periodic else x
