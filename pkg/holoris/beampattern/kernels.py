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

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError
from .angles import PhysicalAngle, AngularPair, TWO_PI

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "physical_to_spatial",
    "spatial_from_radians",
    "steering_phase",
    "dirichlet",
    "sinc",
    "band_integral",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

# below this reduced argument the Dirichlet ratio is replaced by its series
_DIRICHLET_SERIES_CUTOFF = 1e-6


def _scalar_or_array(value: np.ndarray, like):
    if np.ndim(like) == 0:
        return value.item()
    return value


def spatial_from_radians(theta_azi, theta_ele, wavelength: float) -> AngularPair:
    """
    Vectorized direction-to-spatial-frequency mapping without range checks,
    used for quadrature grids and random draws that are in range by
    construction.
    """
    k0 = TWO_PI / wavelength
    sin_ele = np.sin(theta_ele)
    return AngularPair(
        k0 * np.cos(theta_azi) * sin_ele, k0 * np.sin(theta_azi) * sin_ele
    )


def physical_to_spatial(theta: PhysicalAngle, wavelength: float) -> AngularPair:
    """
    Map a physical direction onto its spatial-frequency pair

        psi_azi = (2pi/lambda) cos(theta_azi) sin(theta_ele)
        psi_ele = (2pi/lambda) sin(theta_azi) sin(theta_ele)

    Parameters
    ----------
    theta: PhysicalAngle
        A validated direction; build it with `PhysicalAngle.from_radians` to
        get a DomainError on out-of-range values.

    wavelength: float
        Carrier wavelength in metres.
    """
    if wavelength <= 0:
        raise DomainError(f"wavelength must be positive, got {wavelength}")

    psi = spatial_from_radians(theta.theta_azi, theta.theta_ele, wavelength)
    return AngularPair(float(psi.psi_azi), float(psi.psi_ele))


def steering_phase(x, y, psi: AngularPair):
    """unit-modulus phasor exp(j(x psi_azi + y psi_ele))"""
    value = np.exp(
        1j * (np.multiply(x, psi.psi_azi) + np.multiply(y, psi.psi_ele))
    )
    return _scalar_or_array(np.asarray(value), value)


def dirichlet(N: int, x):
    """
    Dirichlet kernel sin(N x / 2) / (N sin(x / 2)).

    The argument is reduced to r = x - 2 pi k with k the nearest integer, which
    gives Xi_N(x) = (-1)^(k (N-1)) Xi_N(r); for |r| below a small cutoff the
    ratio is replaced by its series 1 - (N^2 - 1) r^2 / 24, so the kernel is
    exact and continuous at the removable singularities x = 2 pi k.
    """
    if N < 1:
        raise DomainError(f"Dirichlet kernel order must be positive, got {N}")

    xa = np.asarray(x, dtype=float)
    k = np.round(xa / TWO_PI)
    r = xa - TWO_PI * k
    sign = np.where(np.mod(k * (N - 1), 2) == 0, 1.0, -1.0)

    half = r / 2
    small = np.abs(r) < _DIRICHLET_SERIES_CUTOFF
    denom = np.where(small, 1.0, N * np.sin(half))
    ratio = np.where(
        small, 1.0 - (N * N - 1) * r * r / 24.0, np.sin(N * half) / denom
    )

    return _scalar_or_array(sign * ratio, x)


def sinc(x):
    """unnormalized sinc, sin(x)/x with sinc(0) = 1"""
    value = np.sinc(np.asarray(x, dtype=float) / math.pi)
    return _scalar_or_array(value, x)


def band_integral(u, lo, hi):
    """
    Closed form of the integral of exp(j u k) dk over k in [lo, hi]:

        (hi - lo) exp(j u (hi + lo) / 2) sinc(u (hi - lo) / 2)

    Well defined at u = 0 and for a zero-width band.
    """
    width = np.subtract(hi, lo)
    centre = np.add(hi, lo) / 2
    u = np.asarray(u, dtype=float)
    return width * np.exp(1j * u * centre) * np.sinc(u * width / 2 / math.pi)
