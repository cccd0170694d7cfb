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

from holoris.ce_downlink import integral_directions
from holoris.metrics import pilot_overhead, omp_mult_count
from .experiment import ScenarioName
from .base import Scenario

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["OverheadTradeoff"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


class OverheadTradeoff(Scenario):
    """
    Pilot airtime against uplink computation as the number of groups per
    axis grows.  One group per axis leaves the whole angular range to the
    uplink; 2A/lambda groups per axis is an exhaustive downlink scan with a
    single-direction uplink search.
    """

    name = ScenarioName.OverheadTradeoff
    figure = "trade-off between total pilot overhead and computational complexity"
    description = "pilot overhead and OMP multiplication count versus groups per axis"
    knobs = ("groups_sweep", "ris_aperture", "M_U", "N_P", "N_CP", "N_UE", "N_max", "T_s")

    def rows(self):
        cfg = self.cfg
        wavelength = cfg.wavelength
        aperture = cfg.ris_aperture * wavelength
        n_used = cfg.N_CP // cfg.N_UE

        for groups in cfg.groups_sweep:
            B = integral_directions(aperture, wavelength, groups)
            mults = omp_mult_count(cfg.N_P, n_used, B * B, cfg.N_CP, cfg.N_max)
            report = pilot_overhead(
                groups, groups, cfg.M_U, cfg.N_P, cfg.N_CP, cfg.T_s, uplink_mult_count=mults
            )

            yield "T_DL", groups, report.T_DL, 0.0, 1
            yield "T_UL", groups, report.T_UL, 0.0, 1
            yield "T_total", groups, report.T_total, 0.0, 1
            yield "downlink_search_ops", groups, report.downlink_search_ops, 0.0, 1
            yield "uplink_mult_count", groups, report.uplink_mult_count, 0.0, 1
