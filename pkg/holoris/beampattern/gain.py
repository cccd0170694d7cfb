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

from typing import Callable
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from scipy.special import roots_legendre

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError, NumericError
from .angles import SurfaceGeometry

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["array_gain", "effective_reflection_area", "PatternEvaluator"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

# callable(theta_azi, theta_ele) -> complex pattern values, peak-normalized
PatternEvaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


def array_gain(pattern_evaluator: PatternEvaluator, quad_points: int = 128) -> float:
    """
    Array gain G = 4 pi / int int |g|^2 sin(theta_ele) dtheta_ele dtheta_azi
    over the outgoing hemisphere.

    The elevation integral uses `quad_points` Gauss-Legendre nodes on
    [0, pi/2]; the periodic azimuth integral uses 2*quad_points equispaced
    nodes (rectangle rule, exact for trigonometric polynomials of that
    order).

    Parameters
    ----------
    pattern_evaluator:
        Maps arrays (theta_azi, theta_ele) to pattern values whose peak
        magnitude is one.

    quad_points: int
        Quadrature resolution; doubling it should not move G noticeably.
    """
    if quad_points < 2:
        raise DomainError(f"quad_points={quad_points} too small")

    n_azi = 2 * quad_points
    theta_azi = 2 * math.pi * np.arange(n_azi) / n_azi
    w_azi = 2 * math.pi / n_azi

    nodes, weights = roots_legendre(quad_points)
    theta_ele = (nodes + 1) * math.pi / 4
    w_ele = weights * math.pi / 4

    azi, ele = np.meshgrid(theta_azi, theta_ele, indexing="ij")
    g = np.asarray(pattern_evaluator(azi, ele))
    if not np.all(np.isfinite(g)):
        raise NumericError("pattern evaluator returned non-finite values")

    power = np.abs(g) ** 2 * np.sin(ele)
    integral = w_azi * np.sum(power @ w_ele)
    if integral <= 0:
        raise NumericError("pattern has no radiated power over the hemisphere")

    return 4 * math.pi / integral


def effective_reflection_area(geom: SurfaceGeometry, S_ele: float) -> float:
    """
    Effective reflecting area: the full aperture A_x A_y for a CMS, the number
    of elements times the element area S_ele for a DPA.
    """
    aperture = geom.A_x * geom.A_y
    if not geom.is_dpa:
        return aperture

    if S_ele <= 0 or S_ele > geom.d**2 * (1 + 1e-12):
        raise DomainError(
            f"element area {S_ele} outside (0, d^2] for d={geom.d}"
        )
    return aperture / geom.d**2 * S_ele
