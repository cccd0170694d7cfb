#  Copyright 2026 The holoris Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.

"""
Continuous metasurface (CMS) beam patterns, the d -> 0 limit of a DPA with a
fixed aperture.  Patterns are peak-normalized: an NBS design has unit
magnitude toward its steering direction and an SBF design approaches unit
magnitude inside its pass band.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from functools import lru_cache

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from scipy.special import roots_legendre

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError
from .angles import AngularPair, SurfaceGeometry
from .kernels import band_integral
from .dpa import sbf_pattern

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "cms_nbs_pattern",
    "cms_nbs_response",
    "cms_sbf_coefficients",
    "cms_sbf_pattern",
    "cms_sbf_response",
    "cms_sbf_surrogate",
    "MIN_QUAD_POINTS",
    "SURROGATE_DIVISOR",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

MIN_QUAD_POINTS = 64
SURROGATE_DIVISOR = 32


def _check_aperture(A_x: float, A_y: float):
    if A_x <= 0 or A_y <= 0:
        raise DomainError(f"aperture must be positive, got ({A_x}, {A_y})")


def _as_output(g):
    return complex(g) if np.ndim(g) == 0 else g


def cms_nbs_response(A_x: float, A_y: float, k_opt: AngularPair, delta: AngularPair):
    """
    NBS response written in offsets: `k_opt` is the designed steering offset
    psi_opt - psi_in and `delta` the observed offset psi_out - psi_in.
    """
    kx, ky = k_opt
    dx, dy = delta
    return (
        np.exp(-1j * A_x * np.asarray(dx) / 2)
        * np.exp(-1j * A_y * np.asarray(dy) / 2)
        * np.sinc(A_x / 2 * np.subtract(kx, dx) / np.pi)
        * np.sinc(A_y / 2 * np.subtract(ky, dy) / np.pi)
    )


def cms_nbs_pattern(
    A_x: float,
    A_y: float,
    psi_out: AngularPair,
    psi_in: AngularPair,
    psi_opt: AngularPair,
):
    """
    e^{-jA_x dx/2} e^{-jA_y dy/2} sinc[(A_x/2)(k_opt - dx)] sinc[(A_y/2)(l_opt - dy)]

    Unit magnitude at psi_out = psi_opt, first null 2pi/A_x away in azimuth.
    """
    _check_aperture(A_x, A_y)
    g = cms_nbs_response(A_x, A_y, psi_opt.minus(psi_in), psi_out.minus(psi_in))
    return _as_output(g)


def cms_sbf_coefficients(
    A_x: float,
    A_y: float,
    x,
    y,
    psi_min: AngularPair,
    psi_max: AngularPair,
    psi_in: AngularPair,
):
    """
    Continuous SBF reflection coefficient at aperture position (x, y):

        [int_{k_min}^{k_max} e^{j xbar k} dk] [int_{l_min}^{l_max} e^{j ybar l} dl]

    with xbar = x - A_x/2, ybar = y - A_y/2.  At the aperture centre the value
    is the band area (k_max - k_min)(l_max - l_min); a zero-width band gives 0.
    """
    _check_aperture(A_x, A_y)

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any((x < 0) | (x > A_x)) or np.any((y < 0) | (y > A_y)):
        raise DomainError("sample position outside the aperture")

    k_min, l_min = psi_min.minus(psi_in)
    k_max, l_max = psi_max.minus(psi_in)
    if k_min > k_max or l_min > l_max:
        raise DomainError("pass band cut-offs reversed")

    value = band_integral(x - A_x / 2, k_min, k_max) * band_integral(
        y - A_y / 2, l_min, l_max
    )
    return _as_output(value)


@lru_cache(maxsize=8)
def _legendre(n: int):
    return roots_legendre(n)


def _axis_band_average(aperture: float, lo: float, hi: float, delta, quad_points: int):
    """
    (1/(hi-lo)) int_lo^hi sinc(aperture (k - delta)/2) dk by Gauss-Legendre
    quadrature; the zero-width limit is the integrand at lo.
    """
    nodes, weights = _legendre(quad_points)
    k = (hi - lo) / 2 * nodes + (hi + lo) / 2
    delta = np.asarray(delta, dtype=float)
    kernel = np.sinc(aperture * (k - delta[..., None]) / 2 / np.pi)
    return 0.5 * kernel @ weights


def cms_sbf_response(
    A_x: float,
    A_y: float,
    band_min: AngularPair,
    band_max: AngularPair,
    delta: AngularPair,
    quad_points: int,
):
    """SBF response in offsets; band edges and `delta` relative to psi_in"""
    dx, dy = np.broadcast_arrays(*delta)
    ix = _axis_band_average(A_x, band_min[0], band_max[0], dx, quad_points)
    iy = _axis_band_average(A_y, band_min[1], band_max[1], dy, quad_points)
    return np.exp(-1j * A_x * dx / 2) * np.exp(-1j * A_y * dy / 2) * ix * iy


def cms_sbf_pattern(
    A_x: float,
    A_y: float,
    psi_out: AngularPair,
    psi_in: AngularPair,
    psi_min: AngularPair,
    psi_max: AngularPair,
    quad_points: int = 128,
):
    """
    Pattern of the continuous SBF design,

        e^{-jA_x dx/2} e^{-jA_y dy/2} (1/area) int int sinc[(A_x/2)(k - dx)]
            sinc[(A_y/2)(l - dy)] dk dl

    over [k_min, k_max] x [l_min, l_max].  The kernel separates, so the
    double integral is the product of two Gauss-Legendre quadratures with
    `quad_points` nodes per axis.  The 1/area constant makes the pattern
    approach unit magnitude inside a wide pass band.
    """
    _check_aperture(A_x, A_y)
    if quad_points < MIN_QUAD_POINTS:
        raise DomainError(
            f"quad_points={quad_points} below the minimum of {MIN_QUAD_POINTS}"
        )

    band_min = psi_min.minus(psi_in)
    band_max = psi_max.minus(psi_in)
    if band_min[0] > band_max[0] or band_min[1] > band_max[1]:
        raise DomainError("pass band cut-offs reversed")

    g = cms_sbf_response(
        A_x, A_y, band_min, band_max, psi_out.minus(psi_in), quad_points
    )
    return _as_output(g)


def cms_sbf_surrogate(
    A_x: float,
    A_y: float,
    wavelength: float,
    psi_out: AngularPair,
    psi_in: AngularPair,
    psi_min: AngularPair,
    psi_max: AngularPair,
    divisor: int = SURROGATE_DIVISOR,
):
    """
    Fine-discretization stand-in for `cms_sbf_pattern`: the DPA SBF pattern
    at d = lambda/divisor, divided by the element count.  The aperture must
    be an integral multiple of the surrogate spacing.
    """
    geom = SurfaceGeometry.dpa(A_x, A_y, wavelength / divisor, wavelength)
    g = sbf_pattern(geom, psi_out, psi_in, psi_min, psi_max)
    return g / geom.num_elements
