"""Globally adaptive Gauss-Legendre panel quadrature for complex integrands.

Panels carry an embedded error estimate (15-point vs 7-point rule); the
worst panel is bisected until the summed estimate meets the absolute
tolerance.  The 2-D variant works on tensor-product panels and splits the
worst one into quadrants.
"""

from __future__ import annotations

import heapq
from typing import Callable

import numpy as np

_NODES_LO, _WEIGHTS_LO = np.polynomial.legendre.leggauss(7)
_NODES_HI, _WEIGHTS_HI = np.polynomial.legendre.leggauss(15)


class QuadratureError(RuntimeError):
    """Adaptive refinement hit the depth limit before reaching tolerance."""

    def __init__(self, message: str, achieved_error: float, requested_tol: float,
                 max_depth: int):
        super().__init__(
            f"{message} (achieved abs error estimate {achieved_error:.3e}, "
            f"requested {requested_tol:.3e}, max depth {max_depth})"
        )
        self.achieved_error = achieved_error
        self.requested_tol = requested_tol
        self.max_depth = max_depth


def _panel_1d(f, lo: float, hi: float) -> tuple[complex, float]:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    hi_est = half * np.sum(_WEIGHTS_HI * f(mid + half * _NODES_HI))
    lo_est = half * np.sum(_WEIGHTS_LO * f(mid + half * _NODES_LO))
    return complex(hi_est), abs(hi_est - lo_est)


def integrate_adaptive_1d(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    abs_tol: float,
    max_depth: int = 24,
) -> complex:
    """Integrate ``f`` over [lo, hi] to the given absolute tolerance.

    ``f`` must accept an ndarray of nodes and return complex values.
    Raises :class:`QuadratureError` when the panel whose estimate is worst
    has already been bisected ``max_depth`` times.
    """
    if not hi > lo:
        raise ValueError(f"degenerate integration window [{lo!r}, {hi!r}]")
    if not abs_tol > 0:
        raise ValueError(f"abs_tol must be > 0, got {abs_tol!r}")

    total, err = _panel_1d(f, lo, hi)
    heap = [(-err, 0, lo, hi, 0, total)]
    counter = 1
    total_err = err
    while total_err > abs_tol:
        neg_err, _, plo, phi, depth, pval = heapq.heappop(heap)
        if depth >= max_depth:
            raise QuadratureError(
                "adaptive bisection did not converge", total_err, abs_tol, max_depth
            )
        mid = 0.5 * (plo + phi)
        for clo, chi in ((plo, mid), (mid, phi)):
            cval, cerr = _panel_1d(f, clo, chi)
            heapq.heappush(heap, (-cerr, counter, clo, chi, depth + 1, cval))
            counter += 1
            total += cval
            total_err += cerr
        total -= pval
        total_err += neg_err  # neg_err is -err of the removed panel
    return total


def _panel_2d(f, ulo, uhi, wlo, whi) -> tuple[complex, float]:
    uhalf = 0.5 * (uhi - ulo)
    umid = 0.5 * (uhi + ulo)
    whalf = 0.5 * (whi - wlo)
    wmid = 0.5 * (whi + wlo)

    u_hi = (umid + uhalf * _NODES_HI)[:, None]
    w_hi = (wmid + whalf * _NODES_HI)[None, :]
    vals = f(u_hi, w_hi)
    hi_est = uhalf * whalf * np.einsum("i,j,ij->", _WEIGHTS_HI, _WEIGHTS_HI, vals)

    u_lo = (umid + uhalf * _NODES_LO)[:, None]
    w_lo = (wmid + whalf * _NODES_LO)[None, :]
    vals_lo = f(u_lo, w_lo)
    lo_est = uhalf * whalf * np.einsum("i,j,ij->", _WEIGHTS_LO, _WEIGHTS_LO, vals_lo)
    return complex(hi_est), abs(hi_est - lo_est)


def integrate_adaptive_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    u_range: tuple[float, float],
    w_range: tuple[float, float],
    abs_tol: float,
    max_depth: int = 24,
) -> complex:
    """Integrate ``f(u, w)`` over a rectangle to the given absolute tolerance.

    ``f`` must broadcast over a (nu, 1) x (1, nw) node grid.  The worst
    tensor panel is split into four quadrants per refinement step.
    """
    ulo, uhi = u_range
    wlo, whi = w_range
    if not (uhi > ulo and whi > wlo):
        raise ValueError(f"degenerate integration window {u_range!r} x {w_range!r}")
    if not abs_tol > 0:
        raise ValueError(f"abs_tol must be > 0, got {abs_tol!r}")

    total, err = _panel_2d(f, ulo, uhi, wlo, whi)
    heap = [(-err, 0, ulo, uhi, wlo, whi, 0, total)]
    counter = 1
    total_err = err
    while total_err > abs_tol:
        neg_err, _, pulo, puhi, pwlo, pwhi, depth, pval = heapq.heappop(heap)
        if depth >= max_depth:
            raise QuadratureError(
                "adaptive quadrant refinement did not converge",
                total_err, abs_tol, max_depth,
            )
        umid = 0.5 * (pulo + puhi)
        wmid = 0.5 * (pwlo + pwhi)
        quads = (
            (pulo, umid, pwlo, wmid),
            (pulo, umid, wmid, pwhi),
            (umid, puhi, pwlo, wmid),
            (umid, puhi, wmid, pwhi),
        )
        for culo, cuhi, cwlo, cwhi in quads:
            cval, cerr = _panel_2d(f, culo, cuhi, cwlo, cwhi)
            heapq.heappush(
                heap, (-cerr, counter, culo, cuhi, cwlo, cwhi, depth + 1, cval)
            )
            counter += 1
            total += cval
            total_err += cerr
        total -= pval
        total_err += neg_err
    return total


def integrand_scale_1d(f, lo: float, hi: float) -> float:
    """Coarse integral scale: peak sampled magnitude times window width."""
    probe = np.abs(f(0.5 * (hi + lo) + 0.5 * (hi - lo) * _NODES_HI))
    return float(np.max(probe)) * (hi - lo)


def integrand_scale_2d(f, u_range, w_range) -> float:
    ulo, uhi = u_range
    wlo, whi = w_range
    u = (0.5 * (uhi + ulo) + 0.5 * (uhi - ulo) * _NODES_HI)[:, None]
    w = (0.5 * (whi + wlo) + 0.5 * (whi - wlo) * _NODES_HI)[None, :]
    probe = np.abs(f(u, w))
    return float(np.max(probe)) * (uhi - ulo) * (whi - wlo)
