"""Core data model: constants, geometry, slit layout, numerics policy, grids,
and the result containers shared by every other module.

All records are frozen dataclasses; a configuration that has passed
:func:`validate_config` is immutable and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

HBAR_SI = 1.054571817e-34            # J s, CODATA 2018
ELECTRON_MASS_SI = 9.1093837015e-31  # kg, CODATA 2018


class ConfigValidationError(ValueError):
    """A configuration violates one or more model invariants.

    Violations are collected before raising, one ``(field, message)`` pair
    per broken invariant, so a caller sees every problem at once.
    """

    def __init__(self, violations: Sequence[tuple[str, str]]):
        self.violations = tuple(violations)
        summary = "; ".join(f"{name}: {msg}" for name, msg in self.violations)
        super().__init__(f"invalid configuration: {summary}")

    @property
    def fields(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.violations)


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant and particle mass (SI).

    Defaults are the CODATA values for an electron; tests may pass unit
    constants, nothing below assumes SI magnitudes.
    """

    hbar: float = HBAR_SI
    electron_mass: float = ELECTRON_MASS_SI


@dataclass(frozen=True)
class ExperimentGeometry:
    """Source / grating / detector layout and the longitudinal speed.

    ``L`` is the source-to-grating distance, ``x_detector`` the
    grating-to-detector distance used for 1-D profiles.  The longitudinal
    motion is treated as uniform at ``V_x``, so distances map to transit
    times by exact division.
    """

    L: float
    x_detector: float
    V_x: float

    @property
    def T(self) -> float:
        """Transit time from source to grating, L / V_x."""
        return self.L / self.V_x

    def t_of(self, x: float) -> float:
        """Transit time from the grating to a plane at distance ``x`` past it."""
        return x / self.V_x


@dataclass(frozen=True)
class SlitArray:
    """Slit center positions (strictly increasing) and the common Gaussian
    half-width ``b`` of the amplitude transmission exp(-dy^2 / (2 b^2))."""

    centers: tuple[float, ...]
    half_width_b: float

    def __post_init__(self):
        object.__setattr__(self, "centers", tuple(float(c) for c in self.centers))

    @property
    def n_slits(self) -> int:
        return len(self.centers)


@dataclass(frozen=True)
class Numerics:
    """Numerical policy shared across the evaluation pipeline.

    ``quadrature_tol`` is relative to the integrand scale (peak magnitude
    times window size); ``density_floor_rel`` is relative to the largest
    |Psi|^2 of the evaluated batch; ``velocity_floor_rel`` is relative to
    the largest |v| on a profile.  ``eq9_literal_prefactor`` switches the
    inter-slit hop kernel to its legacy constant-prefactor variant for
    comparison runs.
    """

    fd_step: float = 1e-10
    density_floor_rel: float = 1e-12
    velocity_floor_rel: float = 1e-3
    include_nonclassical: bool = True
    quadrature_tol: float = 1e-10
    quadrature_depth: int = 24
    eq9_literal_prefactor: bool = False


@dataclass(frozen=True)
class SimulationConfig:
    """A validated bundle of constants, geometry, slits, and numerics.

    Construct through :func:`validate_config`; direct construction skips
    invariant checking.
    """

    constants: PhysicalConstants
    geometry: ExperimentGeometry
    slits: SlitArray
    numerics: Numerics = field(default_factory=Numerics)

    @property
    def hbar(self) -> float:
        return self.constants.hbar

    @property
    def mass(self) -> float:
        return self.constants.electron_mass

    @property
    def T(self) -> float:
        return self.geometry.T

    def t_of(self, x: float) -> float:
        return self.geometry.t_of(x)

    @property
    def centers(self) -> tuple[float, ...]:
        return self.slits.centers

    @property
    def b(self) -> float:
        return self.slits.half_width_b


def _check_finite_positive(violations, name, value):
    if not math.isfinite(value):
        violations.append((name, f"must be finite, got {value!r}"))
    elif value <= 0:
        violations.append((name, f"must be > 0, got {value!r}"))


def validate_config(
    constants: PhysicalConstants,
    geometry: ExperimentGeometry,
    slits: SlitArray,
    numerics: Numerics | None = None,
) -> SimulationConfig:
    """Check every model invariant and return the immutable configuration.

    Raises :class:`ConfigValidationError` carrying *all* violations at once,
    each tagged with the offending field name and value.
    """
    numerics = numerics if numerics is not None else Numerics()
    violations: list[tuple[str, str]] = []

    _check_finite_positive(violations, "hbar", constants.hbar)
    _check_finite_positive(violations, "electron_mass", constants.electron_mass)

    _check_finite_positive(violations, "L", geometry.L)
    _check_finite_positive(violations, "x_detector", geometry.x_detector)
    _check_finite_positive(violations, "V_x", geometry.V_x)

    _check_finite_positive(violations, "half_width_b", slits.half_width_b)
    if len(slits.centers) < 1:
        violations.append(("centers", "at least one slit is required"))
    else:
        if not all(math.isfinite(c) for c in slits.centers):
            violations.append(("centers", f"must all be finite, got {slits.centers!r}"))
        diffs = [b - a for a, b in zip(slits.centers, slits.centers[1:])]
        if any(d <= 0 for d in diffs):
            violations.append(
                ("centers", f"must be strictly increasing, got {slits.centers!r}")
            )
        elif slits.half_width_b > 0:
            min_gap = 4.0 * slits.half_width_b
            bad = [d for d in diffs if d <= min_gap]
            if bad:
                violations.append(
                    (
                        "centers",
                        f"neighboring slits overlap: spacing {min(bad):g} m "
                        f"must exceed 4*half_width_b = {min_gap:g} m",
                    )
                )

    _check_finite_positive(violations, "fd_step", numerics.fd_step)
    _check_finite_positive(violations, "density_floor_rel", numerics.density_floor_rel)
    if numerics.density_floor_rel >= 1:
        violations.append(
            ("density_floor_rel", f"must be < 1, got {numerics.density_floor_rel!r}")
        )
    if not math.isfinite(numerics.velocity_floor_rel) or numerics.velocity_floor_rel < 0:
        violations.append(
            ("velocity_floor_rel", f"must be >= 0, got {numerics.velocity_floor_rel!r}")
        )
    _check_finite_positive(violations, "quadrature_tol", numerics.quadrature_tol)
    if numerics.quadrature_depth < 1:
        violations.append(
            ("quadrature_depth", f"must be >= 1, got {numerics.quadrature_depth!r}")
        )

    if violations:
        raise ConfigValidationError(violations)
    return SimulationConfig(constants, geometry, slits, numerics)


@dataclass(frozen=True)
class PairKinematics:
    """Derived complex coefficients for one ordered pair of slits.

    ``tau`` is the inter-slit hop time; ``eta`` and ``beta`` are the
    quadratic-form coefficients of the two slit integrations; ``mu`` is the
    corresponding single-slit coefficient at the same detector distance.
    All three complex values have strictly positive real part for any valid
    configuration, which is what makes the slit integrals convergent.
    """

    tau: float
    eta: complex
    beta: complex
    mu: complex


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid, x strictly past the grating plane."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        violations = []
        if not (math.isfinite(self.x_min) and self.x_min > 0):
            violations.append(("x_min", f"must be > 0, got {self.x_min!r}"))
        if not self.x_max > self.x_min:
            violations.append(("x_max", f"must exceed x_min, got {self.x_max!r}"))
        if not self.y_max > self.y_min:
            violations.append(("y_max", f"must exceed y_min, got {self.y_max!r}"))
        if self.nx < 2:
            violations.append(("nx", f"must be >= 2, got {self.nx!r}"))
        if self.ny < 2:
            violations.append(("ny", f"must be >= 2, got {self.ny!r}"))
        if violations:
            raise ConfigValidationError(violations)

    def x_nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def y_nodes(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)


@dataclass(frozen=True)
class AmplitudeField:
    """Complex wavefunction values on a grid, indexed ``values[ix, iy]``.

    Normalization is arbitrary but consistent within one run.
    """

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.nx, self.grid.ny):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.nx}, {self.grid.ny})"
            )
        if not np.all(np.isfinite(self.values.view(float))):
            raise ValueError("amplitude field contains non-finite values")


@dataclass(frozen=True)
class VelocityField:
    """Transverse Bohmian velocities on a grid, indexed ``v_y[ix, iy]``.

    ``defined[ix, iy]`` is False where |Psi|^2 fell below the density floor;
    there the velocity is NaN by construction, never silently zeroed.
    """

    grid: GridSpec
    v_y: np.ndarray
    defined: np.ndarray

    def __post_init__(self):
        if self.v_y.shape != (self.grid.nx, self.grid.ny):
            raise ValueError("v_y shape does not match grid")
        if self.defined.shape != self.v_y.shape:
            raise ValueError("defined mask shape does not match v_y")
        if not np.all(np.isfinite(self.v_y[self.defined])):
            raise ValueError("velocity field has non-finite defined nodes")


@dataclass(frozen=True)
class Trajectory:
    """Sampled particle path, strictly increasing in x."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValueError("trajectory samples must be matching 1-D arrays")
        if self.x.size >= 2 and not np.all(np.diff(self.x) > 0):
            raise ValueError("trajectory x samples must be strictly increasing")


@dataclass(frozen=True)
class DeviationReport:
    """Summary extracted from a velocity-deviation profile.

    ``max_relative_deviation`` is the largest relative deviation over the
    finite local maxima away from zeros of the reference velocity (the
    "peaks"); divergent maxima sitting on zeros (the "spikes") are listed
    separately and excluded from the headline number.
    """

    max_relative_deviation: float
    peak_positions: tuple[float, ...]
    spike_positions: tuple[float, ...]
    velocity_floor_mps: float

    def __post_init__(self):
        object.__setattr__(self, "peak_positions", tuple(sorted(self.peak_positions)))
        object.__setattr__(self, "spike_positions", tuple(sorted(self.spike_positions)))
        if not self.max_relative_deviation >= 0:
            raise ValueError("max_relative_deviation must be >= 0")
