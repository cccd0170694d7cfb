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

from typing import Dict, List, Sequence, Tuple
from dataclasses import dataclass

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError
from holoris.config import dbm_to_watt
from holoris.beampattern import AngularPair, QuantizerConfig, SurfaceKind
from holoris.channel import reciprocal_uplink
from holoris.ce_uplink import UplinkSearchSpace, allocate_dsc, strongest_direction
from holoris.metrics import OverheadReport, pilot_overhead
from holoris.trials import substream
from .common import (
    Deployment,
    UeDraw,
    build_deployment,
    data_rate,
    direct_data_rate,
    draw_channel,
    misgrouped_fraction,
    surface_geometry,
    sweep_rows,
)
from .experiment import ScenarioName
from .uplink import UplinkContext, draw_uplink_channels, ls_estimates, recover_channels
from .base import MonteCarloScenario

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["AseContext", "Ase", "Quantization"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

NO_OVERHEAD = OverheadReport(T_DL=0.0, T_UL=0.0, downlink_search_ops=0)


@dataclass(frozen=True)
class AseContext(UplinkContext):
    """the default deployment plus one deployment per `surfaces_sweep` entry"""

    surfaces: Tuple[Tuple[str, Deployment], ...] = ()


def _codeword(dep: Deployment, draw: UeDraw) -> AngularPair:
    return dep.codebook.direction(draw.group.n_x, draw.group.n_y)


def _steered_rates(
    dep: Deployment,
    draws: Sequence[UeDraw],
    directions: Sequence[AngularPair],
    overhead: OverheadReport,
    T_coh: float,
) -> float:
    """mean rate with the RIS steered to `directions`, UEs on their codewords"""
    rates = [
        data_rate(
            dep, reciprocal_uplink(draw.params), direction, _codeword(dep, draw), overhead, T_coh
        )
        for draw, direction in zip(draws, directions)
    ]
    return float(np.mean(rates))


def _strongest(estimates: Sequence[np.ndarray], space: UplinkSearchSpace) -> List[AngularPair]:
    return [strongest_direction(H_hat, space) for H_hat in estimates]


def ase_trial(ctx: AseContext, seed: np.random.SeedSequence) -> Dict[Tuple, float]:
    """
    Spectral efficiency of the data phase for the series

      * `perfect_csi`: RIS steered to the true LoS direction, no pilot airtime
      * `estimated`: RIS steered to the strongest direction of the OMP
        estimate, both pilot stages charged
      * `ls`: same with the LS estimate and its B_x B_y N_UE unique words
      * `no_ris`: the BS-UE NLoS link alone, perfect CSI, no pilot airtime
      * `estimated_<surface>`: the `estimated` series on every entry of
        `surfaces_sweep`

    UEs transmit through the codeword their downlink sweep selected in every
    RIS series, so perfect and estimated CSI differ only in the RIS
    direction.
    """
    cfg, dep = ctx.cfg, ctx.dep
    draws, space, channels = draw_uplink_channels(ctx, seed, cfg.N_UE)
    alloc = allocate_dsc(cfg.dsc, cfg.N_CP, cfg.N_UE, substream(seed, 2))
    G_x, G_y = dep.grid.G_x, dep.grid.G_y
    overhead = pilot_overhead(G_x, G_y, cfg.M_U, cfg.N_P, cfg.N_CP, cfg.T_s)
    ls_overhead = pilot_overhead(G_x, G_y, cfg.M_U, space.size * cfg.N_UE, cfg.N_CP, cfg.T_s)

    surfaces = [
        (label, sdep, *draw_uplink_channels(UplinkContext(cfg, sdep), seed, cfg.N_UE))
        for label, sdep in ctx.surfaces
    ]

    truth = [draw.params.mu_los for draw in draws]
    sigma_n2, omp_cfg = dep.sys.sigma_n2, cfg.omp_config()

    results = {("misgrouped", cfg.ptx_dl_dbm): misgrouped_fraction(draws)}
    for index, ptx in enumerate(cfg.ptx_ul_sweep):
        P = dbm_to_watt(ptx)
        dep_p = dep.with_power(P_tx_ul=P)

        results[("perfect_csi", ptx)] = _steered_rates(
            dep_p, draws, truth, NO_OVERHEAD, cfg.T_coh
        )

        closed = recover_channels(
            channels, space, alloc, cfg.N_P, P, sigma_n2, substream(seed, 1, index), omp_cfg
        )
        results[("estimated", ptx)] = _steered_rates(
            dep_p, draws, _strongest([est.H_hat for est in closed], space), overhead, cfg.T_coh
        )

        ls = ls_estimates(channels, space, P, sigma_n2, substream(seed, 4, index))
        results[("ls", ptx)] = _steered_rates(
            dep_p, draws, _strongest(ls, space), ls_overhead, cfg.T_coh
        )

        results[("no_ris", ptx)] = float(
            np.mean(
                [
                    direct_data_rate(
                        dep_p, reciprocal_uplink(d.params), d.position, NO_OVERHEAD, cfg.T_coh
                    )
                    for d in draws
                ]
            )
        )

        for label, sdep, s_draws, s_space, s_channels in surfaces:
            estimates = recover_channels(
                s_channels,
                s_space,
                alloc,
                cfg.N_P,
                P,
                sigma_n2,
                substream(seed, 1, index),
                omp_cfg,
            )
            directions = _strongest([est.H_hat for est in estimates], s_space)
            results[(f"estimated_{label}", ptx)] = _steered_rates(
                sdep.with_power(P_tx_ul=P), s_draws, directions, overhead, cfg.T_coh
            )

    return results


class Ase(MonteCarloScenario):
    name = ScenarioName.Ase
    figure = "ASE comparison of the CE schemes"
    description = (
        "average spectral efficiency versus UE power: perfect CSI, OMP and LS estimates, "
        "no RIS, and the OMP estimate per surface"
    )
    knobs = (
        "ptx_ul_sweep",
        "ptx_dl_dbm",
        "T_coh",
        "N_P",
        "N_UE",
        "G_x",
        "G_y",
        "M_U",
        "dsc",
        "surfaces_sweep",
        "trials",
    )
    trial_func = ase_trial

    def context(self):
        cfg = self.cfg
        surfaces = tuple(
            (label, build_deployment(cfg, surface_geometry(cfg, label)))
            for label in cfg.surfaces_sweep
        )
        return AseContext(cfg=cfg, dep=build_deployment(cfg), surfaces=surfaces)

    def reduce(self, results):
        return sweep_rows(results)


def quantization_trial(ctx: UplinkContext, seed: np.random.SeedSequence) -> Dict[Tuple, float]:
    """
    perfect-CSI spectral efficiency, RIS and UE steered to the true LoS
    directions, with the RIS phases on a 2^B-level grid
    """
    cfg, dep = ctx.cfg, ctx.dep
    _, params = draw_channel(dep, substream(seed, 0))
    params = reciprocal_uplink(params)

    results = {}
    for bits in cfg.bits_sweep:
        quantizer = None if bits is None else QuantizerConfig(bits=bits)
        results[("perfect_csi", bits)] = data_rate(
            dep, params, params.mu_los, params.nu_los, NO_OVERHEAD, cfg.T_coh, quantizer
        )
    return results


class Quantization(MonteCarloScenario):
    name = ScenarioName.Quantization
    figure = "ASE with different quantization bits under perfect CSI"
    description = "perfect-CSI spectral efficiency versus RIS phase resolution B"
    knobs = ("bits_sweep", "ris_spacing", "ris_aperture", "ptx_ul_dbm", "T_coh", "trials")
    trial_func = quantization_trial

    def context(self):
        if self.cfg.ris_kind is not SurfaceKind.DPA:
            raise ConfigurationError("phase quantization needs a discrete RIS (ris_kind = DPA)")
        return UplinkContext(cfg=self.cfg, dep=build_deployment(self.cfg))

    def reduce(self, results):
        return sweep_rows(results)
