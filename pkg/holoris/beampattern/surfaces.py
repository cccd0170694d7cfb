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
Surface configurations: a surface geometry together with the design loaded
onto it.  Every configuration exposes `gain(psi_out, psi_in)`, the
peak-normalized beam pattern, so channel code does not need to know whether
it is looking at a discrete array or a continuous metasurface.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Optional, Protocol, runtime_checkable
from dataclasses import dataclass
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from .angles import AngularPair, SurfaceGeometry, ReflectionMap, QuantizerConfig
from .dpa import beam_pattern_dpa, nbs_coefficients, nbs_pattern_closed_form, sbf_coefficients
from .cms import cms_nbs_response, cms_sbf_response, MIN_QUAD_POINTS
from .quantize import quantize_phases

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "Surface",
    "DpaSurface",
    "CmsNbsSurface",
    "CmsSbfSurface",
    "CmsOverlappedSurface",
    "nbs_surface",
    "sbf_surface",
    "nbs_gain_table",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


@runtime_checkable
class Surface(Protocol):
    def gain(self, psi_out: AngularPair, psi_in: AngularPair):
        ...


def _as_output(g):
    return complex(g) if np.ndim(g) == 0 else g


@dataclass(frozen=True)
class DpaSurface:
    """
    A DPA carrying a reflection map.  `scale` records a renormalization
    applied to obtain a passive map (raw = scale * map); the pattern is
    reported for the raw map.  With `normalized` set, the pattern is divided
    by the element count so an NBS design peaks at unit magnitude.
    """

    geom: SurfaceGeometry
    reflection_map: ReflectionMap
    scale: float = 1.0
    normalized: bool = True

    def pattern(self, psi_out: AngularPair, psi_in: AngularPair):
        g = beam_pattern_dpa(self.reflection_map, self.geom, psi_out, psi_in)
        return g * self.scale

    def gain(self, psi_out: AngularPair, psi_in: AngularPair):
        g = self.pattern(psi_out, psi_in)
        return g / self.geom.num_elements if self.normalized else g


@dataclass(frozen=True)
class CmsNbsSurface:
    A_x: float
    A_y: float
    psi_opt: AngularPair
    psi_design: AngularPair

    def gain(self, psi_out: AngularPair, psi_in: AngularPair):
        g = cms_nbs_response(
            self.A_x, self.A_y, self.psi_opt.minus(self.psi_design), psi_out.minus(psi_in)
        )
        return _as_output(g)


@dataclass(frozen=True)
class CmsSbfSurface:
    A_x: float
    A_y: float
    psi_min: AngularPair
    psi_max: AngularPair
    psi_design: AngularPair
    quad_points: int = 128

    def gain(self, psi_out: AngularPair, psi_in: AngularPair):
        g = cms_sbf_response(
            self.A_x,
            self.A_y,
            self.psi_min.minus(self.psi_design),
            self.psi_max.minus(self.psi_design),
            psi_out.minus(psi_in),
            self.quad_points,
        )
        return _as_output(g)


@dataclass(frozen=True)
class CmsOverlappedSurface:
    """
    Superposition of continuous NBS designs toward every search direction
    (zeta_azi[bx], zeta_ele[by]), each carrying the phase theta[bx, by], with
    the 1/sqrt(B_x B_y) amplitude scaling.
    """

    A_x: float
    A_y: float
    zeta_azi: np.ndarray
    zeta_ele: np.ndarray
    theta: np.ndarray
    psi_design: AngularPair

    def gain(self, psi_out: AngularPair, psi_in: AngularPair):
        dx, dy = np.broadcast_arrays(*psi_out.minus(psi_in))
        kx = np.asarray(self.zeta_azi) - self.psi_design.psi_azi
        ky = np.asarray(self.zeta_ele) - self.psi_design.psi_ele

        sx = np.sinc(self.A_x / 2 * (kx[:, None] - dx.ravel()[None, :]) / np.pi)
        sy = np.sinc(self.A_y / 2 * (ky[:, None] - dy.ravel()[None, :]) / np.pi)
        combo = np.einsum("ap,ab,bp->p", sx, np.exp(1j * self.theta), sy)

        g = (
            np.exp(-1j * self.A_x * dx.ravel() / 2)
            * np.exp(-1j * self.A_y * dy.ravel() / 2)
            * combo
            / math.sqrt(self.theta.size)
        )
        return _as_output(g.reshape(dx.shape))


# -----------------------------------------------------------------------------
# factories
# -----------------------------------------------------------------------------


def nbs_surface(
    geom: SurfaceGeometry,
    psi_opt: AngularPair,
    psi_in: AngularPair,
    quantizer: Optional[QuantizerConfig] = None,
) -> Surface:
    """NBS design on either surface kind; quantization applies to DPA maps"""
    if not geom.is_dpa:
        return CmsNbsSurface(geom.A_x, geom.A_y, psi_opt, psi_in)

    phi = nbs_coefficients(geom, psi_opt, psi_in)
    if quantizer is not None:
        phi = quantize_phases(phi, quantizer)
    return DpaSurface(geom, phi)


def sbf_surface(
    geom: SurfaceGeometry,
    psi_min: AngularPair,
    psi_max: AngularPair,
    psi_in: AngularPair,
    quad_points: int = MIN_QUAD_POINTS,
    quantizer: Optional[QuantizerConfig] = None,
) -> Surface:
    if not geom.is_dpa:
        return CmsSbfSurface(geom.A_x, geom.A_y, psi_min, psi_max, psi_in, quad_points)

    phi = sbf_coefficients(geom, psi_min, psi_max, psi_in)
    if quantizer is not None:
        phi = quantize_phases(phi, quantizer)
    return DpaSurface(geom, phi)


def nbs_gain_table(
    geom: SurfaceGeometry,
    psi_out: AngularPair,
    psi_in: AngularPair,
    zeta_azi: np.ndarray,
    zeta_ele: np.ndarray,
) -> np.ndarray:
    """
    Normalized NBS gains toward a fixed direction psi_out for designs
    steered at every (zeta_azi[bx], zeta_ele[by]); result shape (B_x, B_y).
    DPA values come from the closed form, which equals the element sum.
    """
    steer = AngularPair(
        np.asarray(zeta_azi, dtype=float)[:, None],
        np.asarray(zeta_ele, dtype=float)[None, :],
    )

    if geom.is_dpa:
        g = nbs_pattern_closed_form(geom, psi_out, psi_in, steer)
        return np.asarray(g) / geom.num_elements

    return np.asarray(
        cms_nbs_response(geom.A_x, geom.A_y, steer.minus(psi_in), psi_out.minus(psi_in))
    )
