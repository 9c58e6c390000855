"""Probability amplitudes for classical and inter-slit hop paths.

Each amplitude is available along two independent routes: a closed form
obtained by completing the square of the Gaussian slit integrals, and a
direct adaptive quadrature of the defining integral.  The quadrature
routes exist to certify the closed forms and are deliberately kept free of
the completed-square algebra.

Internally everything is computed with the common longitudinal phase
exp(i m (L^2/T + x^2/t) / (2 hbar)) factored out; that phase carries ~1e9
radians at electron scales and would otherwise dominate the rounding
budget.  Public functions multiply it back in, so the returned values are
the full amplitudes.
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import Callable

import numpy as np

from .model import PairKinematics, PhysicalConstants, SimulationConfig
from .quadrature import (
    integrate_adaptive_1d,
    integrate_adaptive_2d,
    integrand_scale_1d,
    integrand_scale_2d,
)

# Window half-width for slit integrations, in units of b.  The Gaussian
# transmission is below 1e-14 of its peak there.
DEFAULT_WINDOW_B = 8.0


def _require_positive_x(x: float) -> None:
    if not x > 0:
        raise ValueError(f"detector distance x must be > 0, got {x!r} (t = 0 singularity)")


def _invsqrt(z: complex) -> complex:
    return 1.0 / np.sqrt(z)


def longitudinal_phase(config: SimulationConfig, x: float) -> complex:
    """Unit-modulus factor exp(i m (L^2/T + x^2/t) / (2 hbar)).

    Shared verbatim by the closed forms and the quadrature integrands, so
    that it cancels exactly when the two routes are compared.  It carries
    no y dependence and drops out of every velocity.
    """
    T = config.T
    t = config.t_of(x)
    L = config.geometry.L
    phase = config.mass * (L * L / T + x * x / t) / (2.0 * config.hbar)
    return complex(math.cos(phase), math.sin(phase))


def mu_coefficient(config: SimulationConfig, x: float) -> complex:
    """Single-slit quadratic coefficient mu = 1/T + 1/t - hbar/(i m b^2)."""
    T = config.T
    t = config.t_of(x)
    b = config.b
    return 1.0 / T + 1.0 / t - config.hbar / (1j * config.mass * b * b)


def hop_time(slit_i: float, slit_j: float, constants: PhysicalConstants) -> float:
    """Inter-slit transit time tau = (xi_i - xi_j)^2 * sqrt(2) * m / hbar.

    Symmetric in its arguments and quadratic in the separation.  Identical
    slits are rejected: tau = 0 would make the hop kernel singular.
    """
    if slit_i == slit_j:
        raise ValueError("hop time undefined for identical slits (tau = 0)")
    d = slit_i - slit_j
    return d * d * math.sqrt(2.0) * constants.electron_mass / constants.hbar


def pair_kinematics(
    config: SimulationConfig, slit_i: float, slit_j: float, x: float
) -> PairKinematics:
    """Derived coefficients (tau, eta, beta, mu) for one ordered slit pair.

    eta and beta are the quadratic-form coefficients of the first and
    second slit integration after the hop kernel couples them; both keep a
    strictly positive real part for any valid configuration, as does mu.
    """
    _require_positive_x(x)
    tau = hop_time(slit_i, slit_j, config.constants)
    T = config.T
    t = config.t_of(x)
    b = config.b
    a = 0.5j * config.mass / config.hbar
    inv2b2 = 1.0 / (2.0 * b * b)
    eta = inv2b2 - a / T - a / tau
    beta = inv2b2 - a / t - a / tau - a * a / (tau * tau * eta)
    return PairKinematics(tau=tau, eta=eta, beta=beta, mu=mu_coefficient(config, x))


# ---------------------------------------------------------------------------
# classical paths: source -> slit -> detector
# ---------------------------------------------------------------------------

def _classical_reduced(config: SimulationConfig, slit_center: float, x: float, y):
    """Closed-form single-slit amplitude with the longitudinal phase removed."""
    T = config.T
    t = config.t_of(x)
    m = config.mass
    hbar = config.hbar
    xi = slit_center
    a = 0.5j * m / hbar
    mu = mu_coefficient(config, x)

    pref = (
        _invsqrt(2j * math.pi * hbar * T / m)
        * _invsqrt(2j * math.pi * hbar * t / m)
        * np.sqrt(math.pi / (-a * mu))
    )
    w = xi / T + (xi - y) / t
    exponent = a * (xi * xi / T + (y - xi) ** 2 / t - w * w / mu)
    return pref * np.exp(exponent)


def classical_slit_amplitude(config: SimulationConfig, slit_center: float, x: float, y):
    """Amplitude of the straight source -> slit -> (x, y) path, closed form.

    ``y`` may be a scalar or ndarray; broadcasting follows numpy rules.
    """
    _require_positive_x(x)
    return longitudinal_phase(config, x) * _classical_reduced(config, slit_center, x, y)


def classical_slit_amplitude_quadrature(
    config: SimulationConfig,
    slit_center: float,
    x: float,
    y: float,
    window_in_b: float = DEFAULT_WINDOW_B,
    abs_tol_rel: float | None = None,
    max_depth: int | None = None,
) -> complex:
    """Single-slit amplitude by adaptive quadrature of the defining integral.

    Integrates the transmission-weighted product of the two free kernels
    over the slit coordinate on [-window_in_b * b, +window_in_b * b].
    Serves as the independent oracle for the closed form.
    """
    _require_positive_x(x)
    T = config.T
    t = config.t_of(x)
    m = config.mass
    hbar = config.hbar
    b = config.b
    xi = slit_center
    a = 0.5j * m / hbar
    k1_pref = _invsqrt(2j * math.pi * hbar * T / m)
    k2_pref = _invsqrt(2j * math.pi * hbar * t / m)

    def integrand(u):
        gauss = np.exp(-u * u / (2.0 * b * b))
        k1 = k1_pref * np.exp(a * (xi + u) ** 2 / T)
        k2 = k2_pref * np.exp(a * (y - xi - u) ** 2 / t)
        return gauss * k1 * k2

    half = window_in_b * b
    if not half > 0:
        raise ValueError(f"degenerate slit window, window_in_b = {window_in_b!r}")
    tol_rel = abs_tol_rel if abs_tol_rel is not None else config.numerics.quadrature_tol
    depth = max_depth if max_depth is not None else config.numerics.quadrature_depth
    scale = integrand_scale_1d(integrand, -half, half)
    value = integrate_adaptive_1d(integrand, -half, half, tol_rel * scale, depth)
    return longitudinal_phase(config, x) * value


def _classical_wavefunction_reduced(config: SimulationConfig, x: float, y):
    total = _classical_reduced(config, config.centers[0], x, y)
    for xi in config.centers[1:]:
        total = total + _classical_reduced(config, xi, x, y)
    return total


def classical_wavefunction(config: SimulationConfig, x: float, y):
    """Sum of the closed-form single-slit amplitudes over all slit centers."""
    _require_positive_x(x)
    return longitudinal_phase(config, x) * _classical_wavefunction_reduced(config, x, y)


# ---------------------------------------------------------------------------
# nonclassical paths: source -> slit i -> slit j -> detector
# ---------------------------------------------------------------------------

def _hop_prefactor(config: SimulationConfig, tau: float) -> complex:
    """Constant prefactor of the inter-slit kernel.

    Default: (2 pi i hbar tau / m)^(-1/2), a free propagator over the hop
    time.  The ``eq9_literal_prefactor`` switch reproduces the legacy
    constant (2 pi hbar T / m)^(-1/2) for comparison.
    """
    m = config.mass
    hbar = config.hbar
    if config.numerics.eq9_literal_prefactor:
        return complex(1.0 / math.sqrt(2.0 * math.pi * hbar * config.T / m))
    return _invsqrt(2j * math.pi * hbar * tau / m)


def _nonclassical_reduced(
    config: SimulationConfig, slit_i: float, slit_j: float, x: float, y
):
    """Closed-form hop-path amplitude with the longitudinal phase removed.

    Derived by completing the square of the double slit integral: the
    first-slit coordinate is integrated against eta, which couples into
    the second-slit integration through the hop kernel's cross term and
    produces beta.
    """
    T = config.T
    t = config.t_of(x)
    m = config.mass
    hbar = config.hbar
    a = 0.5j * m / hbar
    kin = pair_kinematics(config, slit_i, slit_j, x)
    tau, eta, beta = kin.tau, kin.eta, kin.beta
    delta = slit_i - slit_j

    c_u = 2.0 * a * (slit_i / T + delta / tau)
    c_uw = -2.0 * a / tau
    c_w = -2.0 * a * (delta / tau + (y - slit_j) / t)
    s = c_w + c_u * c_uw / (2.0 * eta)

    pref = (
        _invsqrt(2j * math.pi * hbar * T / m)
        * _hop_prefactor(config, tau)
        * _invsqrt(2j * math.pi * hbar * t / m)
        * np.sqrt(math.pi / eta)
        * np.sqrt(math.pi / beta)
    )
    exponent = (
        a * (slit_i * slit_i / T + delta * delta / tau + (y - slit_j) ** 2 / t)
        + c_u * c_u / (4.0 * eta)
        + s * s / (4.0 * beta)
    )
    return pref * np.exp(exponent)


def nonclassical_pair_amplitude(
    config: SimulationConfig, slit_i: float, slit_j: float, x: float, y
):
    """Amplitude of the source -> slit i -> slit j -> (x, y) hop path."""
    _require_positive_x(x)
    if slit_i == slit_j:
        raise ValueError("hop path requires two distinct slits")
    return longitudinal_phase(config, x) * _nonclassical_reduced(
        config, slit_i, slit_j, x, y
    )


def nonclassical_pair_amplitude_quadrature(
    config: SimulationConfig,
    slit_i: float,
    slit_j: float,
    x: float,
    y: float,
    window_in_b: float = DEFAULT_WINDOW_B,
    abs_tol_rel: float | None = None,
    max_depth: int | None = None,
    hop_kernel: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None,
) -> complex:
    """Hop-path amplitude by 2-D adaptive quadrature over both slits.

    Oracle for the closed form.  ``hop_kernel`` is a test hook replacing
    the physical inter-slit kernel with an arbitrary function of the two
    slit coordinates (for example the constant 1, which makes the double
    integral factorize).
    """
    _require_positive_x(x)
    if slit_i == slit_j:
        raise ValueError("hop path requires two distinct slits")
    T = config.T
    t = config.t_of(x)
    m = config.mass
    hbar = config.hbar
    b = config.b
    a = 0.5j * m / hbar
    tau = hop_time(slit_i, slit_j, config.constants)
    delta = slit_i - slit_j
    k1_pref = _invsqrt(2j * math.pi * hbar * T / m)
    k2_pref = _invsqrt(2j * math.pi * hbar * t / m)
    hop_pref = _hop_prefactor(config, tau)

    if hop_kernel is None:
        def hop_kernel(u, w):
            return hop_pref * np.exp(a * (delta + u - w) ** 2 / tau)

    def integrand(u, w):
        gauss = np.exp(-(u * u + w * w) / (2.0 * b * b))
        k1 = k1_pref * np.exp(a * (slit_i + u) ** 2 / T)
        k2 = k2_pref * np.exp(a * (y - slit_j - w) ** 2 / t)
        return gauss * k1 * hop_kernel(u, w) * k2

    half = window_in_b * b
    if not half > 0:
        raise ValueError(f"degenerate slit window, window_in_b = {window_in_b!r}")
    tol_rel = abs_tol_rel if abs_tol_rel is not None else config.numerics.quadrature_tol
    depth = max_depth if max_depth is not None else config.numerics.quadrature_depth
    scale = integrand_scale_2d(integrand, (-half, half), (-half, half))
    value = integrate_adaptive_2d(
        integrand, (-half, half), (-half, half), tol_rel * scale, depth
    )
    return longitudinal_phase(config, x) * value


def _nonclassical_wavefunction_reduced(config: SimulationConfig, x: float, y):
    total = None
    for xi_i, xi_j in permutations(config.centers, 2):
        term = _nonclassical_reduced(config, xi_i, xi_j, x, y)
        total = term if total is None else total + term
    return total


def nonclassical_wavefunction(config: SimulationConfig, x: float, y):
    """Sum of hop-path amplitudes over all ordered pairs of distinct slits."""
    _require_positive_x(x)
    if config.slits.n_slits < 2:
        raise ValueError("nonclassical paths require at least two slits")
    return longitudinal_phase(config, x) * _nonclassical_wavefunction_reduced(
        config, x, y
    )


def total_wavefunction(config: SimulationConfig, x: float, y):
    """Classical wavefunction plus the hop-path contribution.

    The hop-path sum is included only when the configuration enables it and
    at least two slits exist (for a single slit the pair sum is empty).
    """
    _require_positive_x(x)
    reduced = _classical_wavefunction_reduced(config, x, y)
    if config.numerics.include_nonclassical and config.slits.n_slits >= 2:
        reduced = reduced + _nonclassical_wavefunction_reduced(config, x, y)
    return longitudinal_phase(config, x) * reduced


# ---------------------------------------------------------------------------
# verification helper: free transverse propagation
# ---------------------------------------------------------------------------

def free_propagation_residual(
    config: SimulationConfig,
    x: float,
    y: float,
    dt: float,
    dy: float,
) -> float:
    """Relative residual of the transverse free-propagation equation.

    Checks i hbar d_t psi + (hbar^2 / 2m) d^2_y psi = 0 by central finite
    differences on the classical wavefunction with the longitudinal phase
    removed (that phase contributes only the constant longitudinal kinetic
    energy, not transverse dynamics).  Returns |residual| / max(|term|).
    """
    _require_positive_x(x)
    hbar = config.hbar
    m = config.mass
    V_x = config.geometry.V_x
    t = config.t_of(x)

    def psi(tt, yy):
        return _classical_wavefunction_reduced(config, tt * V_x, yy)

    d_t = (psi(t + dt, y) - psi(t - dt, y)) / (2.0 * dt)
    lap = (psi(t, y + dy) - 2.0 * psi(t, y) + psi(t, y - dy)) / (dy * dy)
    term_t = 1j * hbar * d_t
    term_y = (hbar * hbar / (2.0 * m)) * lap
    denom = max(abs(term_t), abs(term_y))
    if denom == 0.0:
        return 0.0
    return abs(term_t + term_y) / denom
