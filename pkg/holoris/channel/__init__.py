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

from .pulse import PulseShape, raised_cosine
from .pathloss import molecular_absorption, channel_coefficients, direct_link_gain, link_budget
from .rician import (
    Link,
    UePosition,
    RicianChannelParams,
    ue_los_direction,
    bs_ue_distance,
    sample_ue_position,
    sample_hemisphere,
    sample_rician,
    reciprocal_uplink,
)
from .effective import (
    EffectiveDelayChannel,
    ue_receive_gain,
    path_gains,
    pulse_matrix,
    effective_delay_channel,
    direct_nlos_channel,
    frequency_domain_channel,
    frequency_response,
    interpolate_to_K,
)
