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

from typing import Dict, List, Optional, Tuple
from dataclasses import dataclass

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.config import dbm_to_watt
from holoris.beampattern import QuantizerConfig
from holoris.ce_downlink import (
    downlink_response,
    observe_downlink,
    select_group,
    grouping_success,
)
from holoris.metrics import grouping_failure_prob
from holoris.trials import substream
from .experiment import ScenarioName
from .common import Deployment, build_deployment, draw_channel, surface_geometry
from .base import MonteCarloScenario

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["DownlinkFailure", "DOWNLINK_HEADER"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

DOWNLINK_HEADER = ("ptx_dbm", "groups", "surface", "failure_prob", "trials")


@dataclass(frozen=True)
class DownlinkContext:
    deployments: Tuple[Tuple[str, int, Deployment], ...]
    ptx_dbm: Tuple[float, ...]
    quad_points: int
    quantizer: Optional[QuantizerConfig]


def downlink_trial(ctx: DownlinkContext, seed: np.random.SeedSequence) -> Dict[Tuple, bool]:
    """
    One UE position per trial, shared by every surface and group count; the
    noise stream of each power point is shared as well, so the curves differ
    only through the surfaces.
    """
    outcomes = {}
    for label, groups, dep in ctx.deployments:
        _, params = draw_channel(dep, substream(seed, 0))
        h = downlink_response(
            dep.grid,
            dep.codebook,
            params,
            dep.sys,
            dep.ris,
            dep.shape,
            ctx.quad_points,
            ctx.quantizer,
        )
        for index, ptx in enumerate(ctx.ptx_dbm):
            sys = dep.with_power(P_tx_dl=dbm_to_watt(ptx)).sys
            selected = select_group(observe_downlink(h, sys, substream(seed, 1, index)))
            outcomes[(ptx, groups, label)] = grouping_success(
                selected, dep.grid, dep.codebook, params
            )
    return outcomes


class DownlinkFailure(MonteCarloScenario):
    name = ScenarioName.DownlinkFailure
    figure = "downlink CE performance versus the BS transmit power"
    description = (
        "grouping failure probability versus BS transmit power per surface and group count"
    )
    knobs = (
        "ptx_dl_sweep",
        "groups_sweep",
        "surfaces_sweep",
        "ris_aperture",
        "M_U",
        "noise_dbm",
        "sbf_quad_points",
        "quant_bits",
        "trials",
    )
    header = DOWNLINK_HEADER
    trial_func = downlink_trial

    def context(self) -> DownlinkContext:
        cfg = self.cfg
        deployments = []
        for label in cfg.surfaces_sweep:
            dep = build_deployment(cfg, surface_geometry(cfg, label))
            for groups in cfg.groups_sweep:
                deployments.append((label, groups, dep.with_groups(cfg.grouping(groups))))

        return DownlinkContext(
            deployments=tuple(deployments),
            ptx_dbm=cfg.ptx_dl_sweep,
            quad_points=cfg.sbf_quad_points,
            quantizer=cfg.quantizer(),
        )

    def reduce(self, results: List[Dict[Tuple, bool]]):
        for key in results[0]:
            ptx, groups, label = key
            outcomes = [trial[key] for trial in results]
            yield ptx, groups, label, grouping_failure_prob(outcomes), len(outcomes)
