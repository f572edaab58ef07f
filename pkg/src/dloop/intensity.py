"""Averaged output intensities of the double-loop interferometer.

The closed forms average the intensity over the rapid crystal phase, integrate
over the Bragg deviation ``y`` and average over a Gaussian wavenumber
spectrum of relative width ``epsilon = dk / k0``.  The ``*_oracle`` functions
repeat the same three averages by brute-force quadrature of the full
amplitude products and exist to cross-check the closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .beamline import LoopSettings, path_factor
from .crystal import amplitudes_at_phase
from .errors import ConfigError, DomainError

__all__ = [
    "Spectrum",
    "IntensityPair",
    "QuadratureConfig",
    "FORWARD_PREFACTOR",
    "mean_sin_power",
    "spectral_damping",
    "k0_closed",
    "kg_closed",
    "intensities",
    "k0_oracle",
    "kg_oracle",
    "y_integral",
    "fringe_mean",
]

FORWARD_PREFACTOR = 79 * math.pi / 2048
_PI_2048 = math.pi / 2048


@dataclass(frozen=True)
class Spectrum:
    """Gaussian wavenumber spectrum, described by ``epsilon = dk / k0``."""

    epsilon: float = 0.01

    def __post_init__(self):
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon}")


@dataclass(frozen=True)
class IntensityPair:
    k0_forward: float
    kg_diffracted: float


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts for the brute-force oracles."""

    phase_samples: int = 512
    y_nodes: int = 257
    k_nodes: int = 41

    def validate(self) -> None:
        for name in ("phase_samples", "y_nodes", "k_nodes"):
            n = getattr(self, name)
            if not isinstance(n, (int, np.integer)) or n < 3:
                raise ConfigError(f"{name} must be an integer >= 3, got {n!r}")
        if self.phase_samples % 2:
            raise ConfigError(f"phase_samples must be even, got {self.phase_samples}")


_SIN_MEANS = {1: Fraction(1, 2), 2: Fraction(3, 8), 3: Fraction(5, 16), 4: Fraction(35, 128)}


def mean_sin_power(n: int) -> Fraction:
    """Mean of ``sin(x)**(2n)`` over a period, for ``n`` in 1..4."""
    if n not in _SIN_MEANS:
        raise DomainError(f"n must be in 1..4, got {n}")
    return _SIN_MEANS[n]


def spectral_damping(chi: float, epsilon: float) -> float:
    """Fringe envelope ``exp(-epsilon**2 chi**2 / 2)`` of a Gaussian spectrum."""
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    return math.exp(-0.5 * (epsilon * chi) ** 2)


def _amplitude(alpha: float) -> float:
    return 0.0 if math.isinf(alpha) else math.exp(-alpha)


def _cross_terms(s: LoopSettings, eps: float):
    """Damped cosines of the three path differences, pre-weighted by amplitude."""
    a_d = _amplitude(s.alpha_d)
    a_f = _amplitude(s.alpha_f)
    chi_df = s.chi_d - s.chi_f
    c_d = a_d * spectral_damping(s.chi_d, eps) * math.cos(s.chi_d)
    c_f = a_f * spectral_damping(s.chi_f, eps) * math.cos(s.chi_f)
    c_df = a_d * a_f * spectral_damping(chi_df, eps) * math.cos(chi_df)
    return a_d * a_d, a_f * a_f, c_d, c_f, c_df


def k0_closed(s: LoopSettings, spec: Spectrum = Spectrum()) -> float:
    """Forward intensity ``K0`` (unit incident amplitude)."""
    t_d, t_f, c_d, c_f, c_df = _cross_terms(s, spec.epsilon)
    bracket = 1.0 + t_d + t_f + 2.0 * (c_d + c_f + c_df)
    # bracket is a squared modulus; clip round-off below zero
    return FORWARD_PREFACTOR * max(bracket, 0.0)


def kg_closed(s: LoopSettings, spec: Spectrum = Spectrum()) -> float:
    """Diffracted intensity ``K_G`` (unit incident amplitude)."""
    t_d, t_f, c_d, c_f, c_df = _cross_terms(s, spec.epsilon)
    bracket = 65.0 * (1.0 + t_d) + 417.0 * t_f + 130.0 * c_d - 158.0 * (c_f + c_df)
    return _PI_2048 * max(bracket, 0.0)


def intensities(s: LoopSettings, spec: Spectrum = Spectrum()) -> IntensityPair:
    return IntensityPair(k0_closed(s, spec), kg_closed(s, spec))


def y_integral(func, n_nodes: int = 257) -> float:
    """Integrate ``func(y)`` over the real line via ``y = tan(t)``.

    Midpoint rule on ``(-pi/2, pi/2)``; exact when ``func(tan t) sec(t)**2``
    is a trigonometric polynomial of low enough degree.  ``func`` must accept
    numpy arrays.
    """
    h = math.pi / n_nodes
    t = -0.5 * math.pi + h * (np.arange(n_nodes) + 0.5)
    y = np.tan(t)
    return float(np.sum(func(y) / np.cos(t) ** 2) * h)


def _gram_matrix(coeff_fn, q: QuadratureConfig) -> np.ndarray:
    """``M[j, l] = int dy < c_j conj(c_l) >_phase`` on the quadrature grid."""
    x = 2.0 * math.pi * np.arange(q.phase_samples) / q.phase_samples
    h = math.pi / q.y_nodes
    t = -0.5 * math.pi + h * (np.arange(q.y_nodes) + 0.5)
    y = np.tan(t)[:, None]
    coeffs = np.stack(coeff_fn(x[None, :], y))  # (path, y, phase)
    prod = coeffs[:, None] * np.conj(coeffs[None, :])
    phase_mean = prod.mean(axis=-1)
    return (phase_mean * (h / np.cos(t) ** 2)).sum(axis=-1)


def _forward_coeffs(x, y):
    v0, vg = amplitudes_at_phase(x, y)
    _, v0p = amplitudes_at_phase(x, -y)
    c = v0 * v0 * vg * v0p
    return c, c, c


def _diffracted_coeffs(x, y):
    v0, vg = amplitudes_at_phase(x, y)
    vgp, v0p = amplitudes_at_phase(x, -y)
    return v0 * vg * v0 * vgp, v0 * vg * vg * v0p, v0 * vg * vg * v0p


def _path_gram(s: LoopSettings, spec: Spectrum, q: QuadratureConfig) -> np.ndarray:
    """Gaussian-weighted average over ``k`` of ``p_j(k) conj(p_l(k))``."""
    z, w = np.polynomial.hermite_e.hermegauss(q.k_nodes)
    w = w / w.sum()
    p = np.empty((3, q.k_nodes), dtype=complex)
    for i, zi in enumerate(z):
        scale = 1.0 + spec.epsilon * zi
        p[0, i] = path_factor(s.chi_f * scale, s.alpha_f)
        p[1, i] = path_factor(s.chi_d * scale, s.alpha_d)
        p[2, i] = 1.0
    return np.einsum("jk,lk,k->jl", p, np.conj(p), w)


def _oracle(coeff_fn, s, spec, q) -> float:
    if q is None:
        q = QuadratureConfig()
    q.validate()
    m = _gram_matrix(coeff_fn, q)
    p = _path_gram(s, spec, q)
    return float(np.real(np.sum(m * p)))


def k0_oracle(s: LoopSettings, spec: Spectrum = Spectrum(),
              q: QuadratureConfig | None = None) -> float:
    """Brute-force quadrature estimate of :func:`k0_closed`."""
    return _oracle(_forward_coeffs, s, spec, q)


def kg_oracle(s: LoopSettings, spec: Spectrum = Spectrum(),
              q: QuadratureConfig | None = None) -> float:
    """Brute-force quadrature estimate of :func:`kg_closed`."""
    return _oracle(_diffracted_coeffs, s, spec, q)


def fringe_mean(func, epsilon: float, center: float = 0.0,
                samples_per_period: int = 64, decay: float = 12.0) -> float:
    """Long-run mean of ``func(chi)`` over the phase ``chi``.

    For ``epsilon == 0`` the fringe is periodic and one period is averaged.
    Otherwise the cosine terms are damped by ``exp(-epsilon**2 chi**2 / 2)``
    and a one-period mean keeps an ``O(epsilon**2)`` residue, so the mean is
    taken over a symmetric window wide enough (``epsilon * halfwidth >=
    decay``) for the oscillations to integrate out.
    """
    if epsilon == 0:
        n = samples_per_period
        chi = center + 2.0 * math.pi * np.arange(n) / n
        return float(np.mean([func(c) for c in chi]))
    periods = math.ceil(decay / (2.0 * math.pi * epsilon))
    n = periods * samples_per_period
    chi = center + 2.0 * math.pi * periods * np.linspace(-1.0, 1.0, 2 * n + 1)
    vals = np.array([func(c) for c in chi])
    return float(np.trapezoid(vals, chi) / (chi[-1] - chi[0]))
