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
Path loss and link budget of the BS-RIS and RIS-UE hops.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Tuple
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError
from holoris.config import SystemConfig, PathLossParams
from holoris.logger import get_logger
from holoris.beampattern import (
    BROADSIDE,
    SurfaceGeometry,
    Surface,
    array_gain,
    effective_reflection_area,
    nbs_surface,
    spatial_from_radians,
)

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["molecular_absorption", "channel_coefficients", "direct_link_gain", "link_budget"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def molecular_absorption(f_c: float, dist: float, coeff: float) -> float:
    """
    Absorption loss factor A_abs = exp(coeff * dist).  One configurable
    coefficient replaces per-frequency absorption tables; `f_c` is unused.
    """
    if dist < 0:
        raise DomainError(f"distance must be non-negative, got {dist}")
    return math.exp(coeff * dist)


def channel_coefficients(
    pl: PathLossParams, sys: SystemConfig, rng: np.random.Generator
) -> Tuple[complex, complex]:
    """
    Draw the BS-RIS coefficient alpha and the RIS-UE LoS coefficient beta:

        |alpha| = sqrt(G_tx S_eff / (4 pi R^2 A_abs(R)))
        |beta|  = sqrt(G_ris G_rx / A_abs(d)) lambda / (4 pi d)

    with independent uniform phases.
    """
    R = sys.geometry.R
    dist = pl.d_ris_ue
    if R <= 0 or dist <= 0:
        raise DomainError(f"link distances must be positive, got R={R}, d={dist}")

    a_bs = molecular_absorption(sys.f_c, R, pl.absorption_coeff)
    a_ue = molecular_absorption(sys.f_c, dist, pl.absorption_coeff)

    alpha_mag = math.sqrt(pl.G_tx * pl.S_eff / (4 * math.pi * R**2 * a_bs))
    beta_mag = math.sqrt(pl.G_ris * pl.G_rx / a_ue) * sys.wavelength / (4 * math.pi * dist)

    theta_alpha, theta_beta = rng.uniform(0.0, 2 * math.pi, size=2)
    return (
        alpha_mag * complex(np.exp(1j * theta_alpha)),
        beta_mag * complex(np.exp(1j * theta_beta)),
    )


def direct_link_gain(pl: PathLossParams, sys: SystemConfig, dist: float) -> float:
    """
    Magnitude sqrt(G_tx G_rx / A_abs(D)) lambda / (4 pi D) of a BS-UE path of
    length D with both arrays steered at it.
    """
    if dist <= 0:
        raise DomainError(f"link distance must be positive, got {dist}")
    a_abs = molecular_absorption(sys.f_c, dist, pl.absorption_coeff)
    return math.sqrt(pl.G_tx * pl.G_rx / a_abs) * sys.wavelength / (4 * math.pi * dist)


def _hemisphere_gain(surface: Surface, wavelength: float, quad_points: int) -> float:
    def evaluator(theta_azi, theta_ele):
        return surface.gain(spatial_from_radians(theta_azi, theta_ele, wavelength), BROADSIDE)

    return array_gain(evaluator, quad_points)


def link_budget(
    sys: SystemConfig,
    ris: SurfaceGeometry,
    S_ele: float,
    absorption_coeff: float = 0.0,
    d_ris_ue: float = 1.0,
    quad_points: int = 128,
) -> PathLossParams:
    """
    Path-loss parameters for a deployment.  The three antenna gains are the
    array gains of broadside NBS designs on the BS panel, the RIS and the UE
    panel; S_eff follows from the RIS kind.  `d_ris_ue` is a placeholder
    replaced per UE when channels are drawn.
    """
    wavelength = sys.wavelength
    gains = {
        name: _hemisphere_gain(
            nbs_surface(geom, BROADSIDE, BROADSIDE), wavelength, quad_points
        )
        for name, geom in (
            ("G_tx", sys.bs_geometry),
            ("G_ris", ris),
            ("G_rx", sys.ue_geometry),
        )
    }

    get_logger().debug(
        f"link budget gains: G_tx={gains['G_tx']:.1f} "
        f"G_ris={gains['G_ris']:.1f} G_rx={gains['G_rx']:.1f}"
    )

    return PathLossParams(
        **gains,
        S_eff=effective_reflection_area(ris, S_ele),
        S_ele=S_ele,
        absorption_coeff=absorption_coeff,
        d_ris_ue=d_ris_ue,
    )
