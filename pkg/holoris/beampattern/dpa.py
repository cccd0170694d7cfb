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
Discrete planar array (DPA) beam patterns: direct element summation,
narrow beam steering (NBS) and spatial bandpass filtering (SBF) designs.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Sequence

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError, DegenerateBandError, StructuralError
from .angles import AngularPair, SurfaceGeometry, ReflectionMap, SbfIndicator
from .kernels import dirichlet, band_integral

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "beam_pattern_dpa",
    "beam_pattern_grid",
    "nbs_coefficients",
    "nbs_pattern_closed_form",
    "sbf_weighting",
    "sbf_coefficients",
    "sbf_pattern",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def _require_dpa(geom: SurfaceGeometry):
    if not geom.is_dpa:
        raise DomainError(f"operation needs a DPA geometry, got {geom.kind.value}")


def _require_shape(phi: ReflectionMap, geom: SurfaceGeometry):
    if phi.shape != (geom.N_x, geom.N_y):
        raise StructuralError(
            f"reflection map shape {phi.shape} does not match "
            f"geometry ({geom.N_x}, {geom.N_y})"
        )


def beam_pattern_dpa(
    phi: ReflectionMap,
    geom: SurfaceGeometry,
    psi_out: AngularPair,
    psi_in: AngularPair,
):
    """
    Beam pattern of a DPA as the element sum

        g = sum_{m,n} Phi(m,n) exp(-j (x_m dx + y_n dy))

    with x_m = (m-1) d and (dx, dy) = psi_out - psi_in.  `psi_out` may carry
    arrays of any broadcastable shape; the result has that shape (a Python
    complex for scalar directions).
    """
    _require_dpa(geom)
    _require_shape(phi, geom)

    dx, dy = np.broadcast_arrays(*psi_out.minus(psi_in))
    shape = dx.shape

    ex = np.exp(-1j * np.outer(geom.x, dx.ravel()))
    ey = np.exp(-1j * np.outer(geom.y, dy.ravel()))
    g = np.sum(ex * (phi.coeffs @ ey), axis=0).reshape(shape)

    return complex(g) if g.ndim == 0 else g


def beam_pattern_grid(
    phi: ReflectionMap,
    geom: SurfaceGeometry,
    psi_azi: Sequence[float],
    psi_ele: Sequence[float],
    psi_in: AngularPair,
) -> np.ndarray:
    """
    Beam pattern over the outer-product grid psi_azi x psi_ele; the result is
    indexed [i_azi, i_ele].
    """
    _require_dpa(geom)
    _require_shape(phi, geom)

    dx = np.asarray(psi_azi, dtype=float) - psi_in.psi_azi
    dy = np.asarray(psi_ele, dtype=float) - psi_in.psi_ele
    ex = np.exp(-1j * np.outer(geom.x, dx))
    ey = np.exp(-1j * np.outer(geom.y, dy))
    return ex.T @ phi.coeffs @ ey


# -----------------------------------------------------------------------------
# narrow beam steering
# -----------------------------------------------------------------------------


def nbs_coefficients(
    geom: SurfaceGeometry, psi_opt: AngularPair, psi_in: AngularPair
) -> ReflectionMap:
    """
    NBS map Phi(m,n) = exp(j (d m k_opt + d n l_opt)) with m = 1..N_x and
    (k_opt, l_opt) = psi_opt - psi_in.  Pure phase, so max |Phi| = 1.
    """
    _require_dpa(geom)
    k_opt, l_opt = psi_opt.minus(psi_in)
    m = np.arange(1, geom.N_x + 1)
    n = np.arange(1, geom.N_y + 1)
    coeffs = np.outer(np.exp(1j * geom.d * m * k_opt), np.exp(1j * geom.d * n * l_opt))
    return ReflectionMap(coeffs)


def _nbs_axis_factor(N: int, d: float, aperture: float, k_opt, delta):
    return (
        N
        * np.exp(1j * (N + 1) * d * k_opt / 2)
        * np.exp(1j * (d - aperture) * delta / 2)
        * dirichlet(N, d * (np.asarray(k_opt) - delta))
    )


def nbs_pattern_closed_form(
    geom: SurfaceGeometry,
    psi_out: AngularPair,
    psi_in: AngularPair,
    psi_opt: AngularPair,
):
    """
    Dirichlet-kernel form of the NBS pattern,

        e^{j(d-A_x)dx/2} e^{j(d-A_y)dy/2} Xi_Nx[d(k_opt-dx)] Xi_Ny[d(l_opt-dy)]

    multiplied by N_x N_y e^{j(N_x+1) d k_opt/2} e^{j(N_y+1) d l_opt/2}.  With
    that constant the result equals `beam_pattern_dpa(nbs_coefficients(...))`
    in magnitude and phase.  All direction arguments broadcast.
    """
    _require_dpa(geom)
    k_opt, l_opt = psi_opt.minus(psi_in)
    dx, dy = psi_out.minus(psi_in)

    g = _nbs_axis_factor(geom.N_x, geom.d, geom.A_x, k_opt, dx) * _nbs_axis_factor(
        geom.N_y, geom.d, geom.A_y, l_opt, dy
    )
    return complex(g) if np.ndim(g) == 0 else g


# -----------------------------------------------------------------------------
# spatial bandpass filtering
# -----------------------------------------------------------------------------


def sbf_weighting(
    geom: SurfaceGeometry,
    psi_min: AngularPair,
    psi_max: AngularPair,
    psi_in: AngularPair,
) -> SbfIndicator:
    """
    Validate the cut-offs and return the periodic indicator weighting of the
    band, offsets taken relative to the incidence direction.
    """
    _require_dpa(geom)
    k_min, l_min = psi_min.minus(psi_in)
    k_max, l_max = psi_max.minus(psi_in)

    weighting = SbfIndicator.centered(
        float(k_min), float(k_max), float(l_min), float(l_max), geom.d
    )

    if weighting.k_min == weighting.k_max or weighting.l_min == weighting.l_max:
        raise DegenerateBandError(
            f"zero-width pass band: psi_min={tuple(psi_min)}, psi_max={tuple(psi_max)}"
        )

    return weighting


def sbf_coefficients(
    geom: SurfaceGeometry,
    psi_min: AngularPair,
    psi_max: AngularPair,
    psi_in: AngularPair,
) -> ReflectionMap:
    """
    SBF map for the pass band [psi_min, psi_max], relative to psi_in.

    Each axis factor is the integral of exp(j d mbar k) over the band, with
    mbar = m - (N_x + 1)/2, evaluated in closed form; the map is the outer
    product of the two factors normalized to max |Phi| = 1.

    Raises
    ------
    DomainError
        Cut-offs reversed or wider than one spatial period 2pi/d.
    DegenerateBandError
        Zero-width band on either axis.
    """
    w = sbf_weighting(geom, psi_min, psi_max, psi_in)

    mbar = np.arange(1, geom.N_x + 1) - (geom.N_x + 1) / 2
    nbar = np.arange(1, geom.N_y + 1) - (geom.N_y + 1) / 2

    fx = band_integral(geom.d * mbar, w.k_min, w.k_max)
    fy = band_integral(geom.d * nbar, w.l_min, w.l_max)
    return ReflectionMap.normalized(np.outer(fx, fy))


def sbf_pattern(
    geom: SurfaceGeometry,
    psi_out: AngularPair,
    psi_in: AngularPair,
    psi_min: AngularPair,
    psi_max: AngularPair,
):
    """
    SBF beam pattern, evaluated exactly as the element sum over
    `sbf_coefficients`.  Up to a constant this equals the band integral of
    the Dirichlet-kernel NBS response.
    """
    phi = sbf_coefficients(geom, psi_min, psi_max, psi_in)
    return beam_pattern_dpa(phi, geom, psi_out, psi_in)
