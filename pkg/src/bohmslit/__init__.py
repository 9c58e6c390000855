"""Bohmian velocity fields in a multi-slit electron interferometer.

Computes the transverse wavefunction of an electron behind a grating of
Gaussian slits along two families of paths (straight slit transits and
single inter-slit hops), the Bohmian velocities each implies, and the
deviation observables that separate the two.
"""

from .model import (
    AmplitudeField,
    ConfigValidationError,
    DeviationReport,
    ExperimentGeometry,
    GridSpec,
    Numerics,
    PairKinematics,
    PhysicalConstants,
    SimulationConfig,
    SlitArray,
    Trajectory,
    VelocityField,
    validate_config,
)
from .quadrature import QuadratureError
from .propagators import (
    classical_slit_amplitude,
    classical_slit_amplitude_quadrature,
    classical_wavefunction,
    free_propagation_residual,
    hop_time,
    longitudinal_phase,
    mu_coefficient,
    nonclassical_pair_amplitude,
    nonclassical_pair_amplitude_quadrature,
    nonclassical_wavefunction,
    pair_kinematics,
    total_wavefunction,
)

__all__ = [
    "AmplitudeField",
    "ConfigValidationError",
    "DeviationReport",
    "ExperimentGeometry",
    "GridSpec",
    "Numerics",
    "PairKinematics",
    "PhysicalConstants",
    "QuadratureError",
    "SimulationConfig",
    "SlitArray",
    "Trajectory",
    "VelocityField",
    "validate_config",
    "classical_slit_amplitude",
    "classical_slit_amplitude_quadrature",
    "classical_wavefunction",
    "free_propagation_residual",
    "hop_time",
    "longitudinal_phase",
    "mu_coefficient",
    "nonclassical_pair_amplitude",
    "nonclassical_pair_amplitude_quadrature",
    "nonclassical_wavefunction",
    "pair_kinematics",
    "total_wavefunction",
]

__version__ = "0.1.0"
