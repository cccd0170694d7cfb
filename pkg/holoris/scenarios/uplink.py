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
Uplink compressive estimation scenarios.  Every trial draws UEs sharing one
angular group, builds their AdDd channels once and then runs the estimators
for each sweep point on dedicated random substreams, so all series of a
trial see the same channels.
"""

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

from holoris.config import dbm_to_watt
from holoris.ce_uplink import (
    AdDdChannel,
    DscAllocation,
    DscScheme,
    UplinkSearchSpace,
    allocate_dsc,
    build_measurements,
    build_search_space,
    exhaustive_scan,
    ls_baseline,
    random_phases,
    random_ue_beamformer,
)
from holoris.metrics import nmse
from holoris.sparse_recovery import KroneckerOperator, OmpConfig, SparseEstimate, omp
from holoris.trials import substream
from .experiment import ExperimentConfig, ScenarioName
from .common import (
    Deployment,
    build_deployment,
    draw_group_ues,
    misgrouped_fraction,
    uplink_channel,
    sweep_rows,
)
from .base import MonteCarloScenario

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "UplinkContext",
    "recover_channels",
    "draw_uplink_channels",
    "ls_estimates",
    "UplinkNmseVsPilots",
    "UplinkNmseVsUes",
    "UplinkNmseVsPower",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class UplinkContext:
    cfg: ExperimentConfig
    dep: Deployment


def recover_channels(
    channels: Sequence[AdDdChannel],
    space: UplinkSearchSpace,
    alloc: DscAllocation,
    N_P: int,
    P_tx_ul: float,
    sigma_n2: float,
    rng: np.random.Generator,
    cfg: OmpConfig,
) -> List[SparseEstimate]:
    """
    Closed-loop uplink estimation for every UE of the group.  The UEs share
    the random RIS phase sequence and are separated by their DSCs.
    """
    theta = random_phases(N_P, space, rng)
    estimates = []
    for ue, H in enumerate(channels, start=1):
        sensing, meas = build_measurements(
            H, alloc, N_P, P_tx_ul, sigma_n2, rng, ue=ue, theta=theta
        )
        op = KroneckerOperator.from_sensing(sensing.W, sensing.F_u)
        estimates.append(omp(op, meas.Y, cfg))
    return estimates


def _mean_nmse(estimates: Sequence[SparseEstimate], channels: Sequence[AdDdChannel]) -> float:
    return float(np.mean([nmse(est.H_hat, H.H) for est, H in zip(estimates, channels)]))


def draw_uplink_channels(ctx: UplinkContext, seed: np.random.SeedSequence, n_ue: int):
    """UE draws of one group, their search space and their AdDd channels"""
    draws = draw_group_ues(ctx.dep, substream(seed, 0), n_ue)
    space = build_search_space(draws[0].group, ctx.dep.grid, ctx.dep.ris)
    channels = [uplink_channel(ctx.dep, draw, space) for draw in draws]
    return draws, space, channels


def _uplink_context(cfg: ExperimentConfig) -> UplinkContext:
    return UplinkContext(cfg=cfg, dep=build_deployment(cfg))


# -----------------------------------------------------------------------------
# NMSE versus pilot count, per DSC scheme
# -----------------------------------------------------------------------------


def pilots_trial(ctx: UplinkContext, seed: np.random.SeedSequence) -> Dict[Tuple, float]:
    cfg, sys = ctx.cfg, ctx.dep.sys
    draws, space, channels = draw_uplink_channels(ctx, seed, cfg.N_UE)

    results = {("misgrouped", cfg.ptx_dl_dbm): misgrouped_fraction(draws)}
    for s_index, scheme in enumerate(DscScheme):
        alloc = allocate_dsc(scheme, cfg.N_CP, cfg.N_UE, substream(seed, 2, s_index))
        for p_index, n_p in enumerate(cfg.n_p_sweep):
            estimates = recover_channels(
                channels,
                space,
                alloc,
                n_p,
                sys.P_tx_ul,
                sys.sigma_n2,
                substream(seed, 1, p_index),
                cfg.omp_config(),
            )
            results[(scheme.value, n_p)] = _mean_nmse(estimates, channels)
    return results


class UplinkNmseVsPilots(MonteCarloScenario):
    name = ScenarioName.UplinkNmseVsPilots
    figure = "NMSE versus uplink pilot overhead and DSC allocation scheme"
    description = "uplink NMSE versus pilot count N_P for block, uniform and random DSC"
    knobs = (
        "n_p_sweep",
        "N_UE",
        "ptx_ul_dbm",
        "ptx_dl_dbm",
        "G_x",
        "G_y",
        "ris_aperture",
        "N_max",
        "trials",
    )
    trial_func = pilots_trial

    def context(self):
        return _uplink_context(self.cfg)

    def reduce(self, results):
        return sweep_rows(results)


# -----------------------------------------------------------------------------
# NMSE versus number of UEs
# -----------------------------------------------------------------------------


def ues_trial(ctx: UplinkContext, seed: np.random.SeedSequence) -> Dict[Tuple, float]:
    """UEs are drawn once for the largest count; smaller counts use a prefix"""
    cfg, sys = ctx.cfg, ctx.dep.sys
    draws, space, channels = draw_uplink_channels(ctx, seed, max(cfg.n_ue_sweep))

    results = {("misgrouped", cfg.ptx_dl_dbm): misgrouped_fraction(draws)}
    for index, n_ue in enumerate(cfg.n_ue_sweep):
        alloc = allocate_dsc(cfg.dsc, cfg.N_CP, n_ue, substream(seed, 2, index))
        estimates = recover_channels(
            channels[:n_ue],
            space,
            alloc,
            cfg.N_P,
            sys.P_tx_ul,
            sys.sigma_n2,
            substream(seed, 1, index),
            cfg.omp_config(),
        )
        results[(cfg.dsc.value, n_ue)] = _mean_nmse(estimates, channels[:n_ue])
    return results


class UplinkNmseVsUes(MonteCarloScenario):
    name = ScenarioName.UplinkNmseVsUes
    figure = "NMSE versus the number of UEs"
    description = "uplink NMSE versus number of UEs sharing the pilot symbol"
    knobs = (
        "n_ue_sweep",
        "dsc",
        "N_P",
        "ptx_ul_dbm",
        "ptx_dl_dbm",
        "G_x",
        "G_y",
        "N_max",
        "trials",
    )
    trial_func = ues_trial

    def context(self):
        return _uplink_context(self.cfg)

    def reduce(self, results):
        return sweep_rows(results)


# -----------------------------------------------------------------------------
# NMSE versus uplink power: closed loop, open loop, LS and beam sweeps
# -----------------------------------------------------------------------------


def _strongest_row(H: np.ndarray) -> int:
    return int(np.argmax(np.sum(np.abs(H) ** 2, axis=1)))


def ls_estimates(
    channels: Sequence[AdDdChannel],
    space: UplinkSearchSpace,
    P_tx_ul: float,
    sigma_n2: float,
    rng: np.random.Generator,
) -> List[np.ndarray]:
    """
    LS reference: each UE alone on all subcarriers for B_x B_y slots, the
    smallest airtime that keeps the system determined.  A group of N_UE
    UEs therefore spends B_x B_y N_UE unique words.
    """
    full = allocate_dsc(DscScheme.BLOCK, channels[0].N_CP, 1)
    estimates = []
    for H in channels:
        theta = random_phases(space.size, space, rng)
        sensing, meas = build_measurements(
            H, full, space.size, P_tx_ul, sigma_n2, rng, ue=1, theta=theta
        )
        estimates.append(ls_baseline(sensing.W, sensing.F_u, meas.Y).H)
    return estimates


def power_trial(ctx: UplinkContext, seed: np.random.SeedSequence) -> Dict[Tuple, float]:
    cfg, dep = ctx.cfg, ctx.dep
    draws, space, channels = draw_uplink_channels(ctx, seed, cfg.N_UE)

    beam_rng = substream(seed, 3)
    open_loop = [
        uplink_channel(dep, draw, space, ue=random_ue_beamformer(dep.sys, beam_rng))
        for draw in draws
    ]
    alloc = allocate_dsc(cfg.dsc, cfg.N_CP, cfg.N_UE, substream(seed, 2))
    truth = [_strongest_row(H.H) for H in channels]

    results = {("misgrouped", cfg.ptx_dl_dbm): misgrouped_fraction(draws)}
    for index, ptx in enumerate(cfg.ptx_ul_sweep):
        P, sigma_n2 = dbm_to_watt(ptx), dep.sys.sigma_n2

        omp_cfg = cfg.omp_config()
        closed = recover_channels(
            channels, space, alloc, cfg.N_P, P, sigma_n2, substream(seed, 1, index), omp_cfg
        )
        results[("omp", ptx)] = _mean_nmse(closed, channels)

        opened = recover_channels(
            open_loop, space, alloc, cfg.N_P, P, sigma_n2, substream(seed, 1, index), omp_cfg
        )
        results[("open_loop", ptx)] = _mean_nmse(opened, open_loop)

        ls = ls_estimates(channels, space, P, sigma_n2, substream(seed, 4, index))
        results[("ls", ptx)] = float(np.mean([nmse(H_ls, H.H) for H_ls, H in zip(ls, channels)]))

        results[("omp_hit", ptx)] = float(
            np.mean([_strongest_row(est.H_hat) == b for est, b in zip(closed, truth)])
        )

        scan_rng = substream(seed, 5, index)
        hits = [
            exhaustive_scan(H, P, sigma_n2, scan_rng, space) == b
            for H, b in zip(channels, truth)
        ]
        results[("scan_hit", ptx)] = float(np.mean(hits))

    return results


class UplinkNmseVsPower(MonteCarloScenario):
    """
    Series: `omp` closed-loop estimation, `open_loop` with random-phase UE
    beamformers, `ls` least squares at determined airtime, and the rates at
    which the OMP estimate (`omp_hit`) and an exhaustive beam sweep
    (`scan_hit`) find the strongest search direction.  Every uplink scenario
    also reports `misgrouped`, the share of UEs whose downlink sweep picked
    another cell than the true LoS angles, at x = ptx_dl_dbm.
    """

    name = ScenarioName.UplinkNmseVsPower
    figure = "NMSE of the CE schemes versus the uplink transmit power"
    description = "uplink NMSE versus UE transmit power, closed loop against open loop and LS"
    knobs = (
        "ptx_ul_sweep",
        "ptx_dl_dbm",
        "N_P",
        "N_UE",
        "dsc",
        "ris_kind",
        "ris_aperture",
        "N_max",
        "trials",
    )
    trial_func = power_trial

    def context(self):
        return _uplink_context(self.cfg)

    def reduce(self, results):
        return sweep_rows(results)
