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
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from .angles import ReflectionMap, QuantizerConfig

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["quantize_phases"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def quantize_phases(phi: ReflectionMap, q: QuantizerConfig) -> ReflectionMap:
    """
    Replace the phase of every coefficient by the nearest member of the
    quantizer phase set, keeping the magnitude.  Distance is measured around
    the circle; on a tie the smaller phase wins.
    """
    if q.unquantized:
        return phi

    phases = q.phase_set
    arg = np.angle(phi.coeffs)

    # wrapped distance in [0, pi] to every candidate, candidates ascending
    diff = arg[..., None] - phases
    dist = np.abs(np.mod(diff + np.pi, 2 * np.pi) - np.pi)
    chosen = phases[np.argmin(dist, axis=-1)]

    return ReflectionMap(np.abs(phi.coeffs) * np.exp(1j * chosen))
