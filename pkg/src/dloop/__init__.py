"""Intensities and fringe visibilities of a four-plate double-loop neutron interferometer."""
from .beamline import LoopSettings, absorption_from_transmission, path_factor, psi_diffracted, psi_forward
from .crystal import ComplexAmp, CrystalParams, deviation_y, diffract_amp, pendelloesung, transmit_amp
from .errors import (
    ConfigError,
    DomainError,
    DoubleLoopError,
    UnboundedAbsorptionError,
    UndefinedFringeError,
)
from .intensity import (
    IntensityPair,
    QuadratureConfig,
    Spectrum,
    intensities,
    k0_closed,
    k0_oracle,
    kg_closed,
    kg_oracle,
    mean_sin_power,
    spectral_damping,
)
from .visibility import (
    AbsorptionMode,
    VisibilityResult,
    k0_extrema,
    k0_monochromatic,
    solve_balance_absorber,
    solve_unit_visibility_phase,
    visibility_double,
    visibility_double_phase,
    visibility_from_extrema,
    visibility_numeric,
    visibility_single,
)

__version__ = "0.1.0"
