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
from pydantic import BaseModel, ConfigDict, Field

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["PulseShape", "raised_cosine"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

# |1 - (2 beta t)^2| below this is treated as the removable singularity
_SINGULAR_TOL = 1e-9


class PulseShape(BaseModel):
    model_config = ConfigDict(frozen=True)

    rolloff: float = Field(0.8, ge=0, le=1)
    T_s: float = Field(2e-9, gt=0)


def raised_cosine(tau, shape: PulseShape):
    """
    Raised-cosine impulse response normalized to p(0) = 1,

        p(t) = sinc(t/T) cos(pi beta t/T) / (1 - (2 beta t/T)^2)

    with the normalized sinc.  At |t| = T/(2 beta) the limit
    (pi/4) sinc(1/(2 beta)) is returned.
    """
    t = np.asarray(tau, dtype=float) / shape.T_s
    beta = shape.rolloff

    if beta == 0:
        value = np.sinc(t)
    else:
        denom = 1.0 - (2 * beta * t) ** 2
        singular = np.abs(denom) < _SINGULAR_TOL
        safe = np.where(singular, 1.0, denom)
        value = np.where(
            singular,
            np.pi / 4 * np.sinc(1 / (2 * beta)),
            np.sinc(t) * np.cos(np.pi * beta * t) / safe,
        )

    return value.item() if np.ndim(tau) == 0 else value
