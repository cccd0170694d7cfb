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
# Private Imports
# -----------------------------------------------------------------------------

from .angles import (
    PhysicalAngle,
    AngularPair,
    BROADSIDE,
    SurfaceKind,
    SurfaceGeometry,
    ReflectionMap,
    NbsCombs,
    SbfIndicator,
    AngularWeighting,
    QuantizerConfig,
)
from .kernels import (
    physical_to_spatial,
    spatial_from_radians,
    steering_phase,
    dirichlet,
    sinc,
    band_integral,
)
from .dpa import (
    beam_pattern_dpa,
    beam_pattern_grid,
    nbs_coefficients,
    nbs_pattern_closed_form,
    sbf_weighting,
    sbf_coefficients,
    sbf_pattern,
)
from .cms import (
    cms_nbs_pattern,
    cms_sbf_coefficients,
    cms_sbf_pattern,
    cms_sbf_surrogate,
)
from .quantize import quantize_phases
from .gain import array_gain, effective_reflection_area
from .surfaces import (
    Surface,
    DpaSurface,
    CmsNbsSurface,
    CmsSbfSurface,
    CmsOverlappedSurface,
    nbs_surface,
    sbf_surface,
    nbs_gain_table,
)
