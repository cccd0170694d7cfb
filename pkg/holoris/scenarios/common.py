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
Building blocks shared by the Monte-Carlo scenarios: the deployment built
from an ExperimentConfig, UE draws, and reduction of per-trial results into
sweep rows.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple
from dataclasses import dataclass, replace

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from tenacity import retry, retry_if_result, stop_after_attempt, RetryCallState

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ResampleExhaustedError
from holoris.config import SystemConfig, PathLossParams, db_to_linear
from holoris.logger import get_logger
from holoris.beampattern import (
    AngularPair,
    BROADSIDE,
    SurfaceGeometry,
    SurfaceKind,
    QuantizerConfig,
    Surface,
    nbs_surface,
)
from holoris.channel import (
    PulseShape,
    RicianChannelParams,
    UePosition,
    bs_ue_distance,
    direct_nlos_channel,
    sample_ue_position,
    sample_rician,
    reciprocal_uplink,
    link_budget,
    effective_delay_channel,
    interpolate_to_K,
)
from holoris.ce_downlink import (
    GroupIndex,
    GroupingConfig,
    GroupingGrid,
    UECodebook,
    bs_beamforming,
    bs_gain,
    group_cutoffs,
    ue_codebook,
    simulate_downlink_sweep,
    select_group,
    true_group,
)
from holoris.ce_uplink import AdDdChannel, UplinkSearchSpace, build_addd_channel
from holoris.metrics import AseInput, OverheadReport, ase, mean_and_ci
from .experiment import ExperimentConfig, CMS_SURFACE

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "SWEEP_HEADER",
    "Deployment",
    "UeDraw",
    "ris_geometry",
    "surface_geometry",
    "build_deployment",
    "draw_channel",
    "draw_ue",
    "misgrouped_fraction",
    "draw_group_ues",
    "uplink_channel",
    "data_rate",
    "direct_data_rate",
    "sweep_rows",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

SWEEP_HEADER = ("series", "x_value", "metric", "ci_halfwidth", "trials")

MAX_GROUP_DRAWS = 1000


@dataclass(frozen=True)
class Deployment:
    """everything a trial needs to draw channels for one RIS configuration"""

    sys: SystemConfig
    ris: SurfaceGeometry
    pathloss: PathLossParams
    shape: PulseShape
    grid: GroupingGrid
    codebook: UECodebook
    L: int
    K_f: float
    sbf_quad_points: int = 64
    quantizer: Optional[QuantizerConfig] = None

    def with_power(
        self, P_tx_dl: Optional[float] = None, P_tx_ul: Optional[float] = None
    ) -> "Deployment":
        update = {}
        if P_tx_dl is not None:
            update["P_tx_dl"] = P_tx_dl
        if P_tx_ul is not None:
            update["P_tx_ul"] = P_tx_ul
        return replace(self, sys=self.sys.model_copy(update=update))

    def with_groups(self, grouping: GroupingConfig) -> "Deployment":
        return replace(self, grid=group_cutoffs(grouping, self.ris, self.sys.wavelength))


class UeDraw(NamedTuple):
    """
    A downlink channel realization, the group the UE selected from its
    downlink sweep and the reference selection from the true LoS angles.
    """

    params: RicianChannelParams
    group: GroupIndex
    reference: GroupIndex
    position: UePosition

    @property
    def misgrouped(self) -> bool:
        return self.group != self.reference


def ris_geometry(cfg: ExperimentConfig, spacing: Optional[float] = None) -> SurfaceGeometry:
    """RIS from the config knobs; `spacing` (wavelengths) overrides ris_spacing"""
    wavelength = cfg.wavelength
    aperture = cfg.ris_aperture * wavelength
    if spacing is None and cfg.ris_kind is SurfaceKind.CMS:
        return SurfaceGeometry.cms(aperture, aperture, wavelength)

    spacing = cfg.ris_spacing if spacing is None else spacing
    return SurfaceGeometry.dpa(aperture, aperture, spacing * wavelength, wavelength)


def surface_geometry(cfg: ExperimentConfig, label: str) -> SurfaceGeometry:
    """RIS for one entry of `surfaces_sweep`: a spacing in wavelengths or 'cms'"""
    if label == CMS_SURFACE:
        wavelength = cfg.wavelength
        aperture = cfg.ris_aperture * wavelength
        return SurfaceGeometry.cms(aperture, aperture, wavelength)
    return ris_geometry(cfg, float(label))


def build_deployment(
    cfg: ExperimentConfig,
    ris: Optional[SurfaceGeometry] = None,
    groups: Optional[int] = None,
) -> Deployment:
    """
    Assemble the deployment.  The link budget integrates the array gains
    once here, so trials only draw random quantities.  The element area is
    capped at d^2 for dense arrays.
    """
    sys = cfg.system()
    ris = ris or ris_geometry(cfg)
    S_ele = min(cfg.S_ele, ris.d**2) if ris.is_dpa else cfg.S_ele

    pathloss = link_budget(
        sys, ris, S_ele, cfg.absorption_coeff, quad_points=cfg.gain_quad_points
    )

    get_logger().info(
        f"deployment: RIS {ris.kind.value} aperture={ris.A_x:.4g} m, "
        f"S_eff={pathloss.S_eff:.3g} m^2, G_ris={pathloss.G_ris:.1f}"
    )

    return Deployment(
        sys=sys,
        ris=ris,
        pathloss=pathloss,
        shape=PulseShape(rolloff=cfg.rolloff, T_s=cfg.T_s),
        grid=group_cutoffs(cfg.grouping(groups), ris, sys.wavelength),
        codebook=ue_codebook(sys.M_U, sys.wavelength),
        L=cfg.L,
        K_f=db_to_linear(cfg.K_f_db),
        sbf_quad_points=cfg.sbf_quad_points,
        quantizer=cfg.quantizer(),
    )


# -----------------------------------------------------------------------------
# UE draws
# -----------------------------------------------------------------------------


def draw_channel(
    dep: Deployment, rng: np.random.Generator
) -> Tuple[UePosition, RicianChannelParams]:
    """UE position and downlink channel, without the grouping stage"""
    pos = sample_ue_position(dep.sys, rng)
    return pos, sample_rician(dep.sys, rng, pos, dep.pathloss, dep.L, dep.K_f)


def draw_ue(dep: Deployment, rng: np.random.Generator) -> UeDraw:
    """
    Draw a UE and run its downlink sweep at the deployment's downlink power;
    the UE keeps the group it selects, right or wrong.
    """
    pos, params = draw_channel(dep, rng)
    obs = simulate_downlink_sweep(
        dep.grid,
        dep.codebook,
        params,
        dep.sys,
        dep.ris,
        rng,
        dep.shape,
        dep.sbf_quad_points,
        dep.quantizer,
    )
    reference = true_group(dep.grid, dep.codebook, params)
    return UeDraw(params, select_group(obs), reference, pos)


def misgrouped_fraction(draws: Sequence[UeDraw]) -> float:
    return sum(draw.misgrouped for draw in draws) / len(draws)


def _log_group_redraw(retry_state: RetryCallState):
    get_logger().debug(
        f"UE outside the target group, redraw attempt {retry_state.attempt_number}"
    )


def _group_exhausted(retry_state: RetryCallState):
    raise ResampleExhaustedError(
        f"no UE inside the target group after {retry_state.attempt_number} draws"
    )


@retry(
    retry=retry_if_result(lambda draw: draw is None),
    stop=stop_after_attempt(MAX_GROUP_DRAWS),
    after=_log_group_redraw,
    retry_error_callback=_group_exhausted,
)
def _draw_in_group(dep: Deployment, rng: np.random.Generator, target: GroupIndex):
    draw = draw_ue(dep, rng)
    if (draw.group.g_x, draw.group.g_y) != (target.g_x, target.g_y):
        return None
    return draw


def draw_group_ues(dep: Deployment, rng: np.random.Generator, n_ue: int) -> List[UeDraw]:
    """
    Draw `n_ue` UEs that selected one angular group in their downlink
    sweeps, so they share the uplink search space.  The first draw picks the
    group.
    """
    first = draw_ue(dep, rng)
    return [first] + [_draw_in_group(dep, rng, first.group) for _ in range(n_ue - 1)]


def uplink_channel(
    dep: Deployment,
    draw: UeDraw,
    space: UplinkSearchSpace,
    ue: Optional[Surface] = None,
) -> AdDdChannel:
    """
    AdDd channel of the reverse link.  The UE transmits through its selected
    downlink codeword unless another surface `ue` is given.
    """
    codeword = ue if ue is not None else dep.codebook.direction(draw.group.n_x, draw.group.n_y)
    return build_addd_channel(
        reciprocal_uplink(draw.params), space, codeword, dep.shape, dep.sys, dep.ris
    )


def data_rate(
    dep: Deployment,
    params: RicianChannelParams,
    ris_direction: AngularPair,
    ue_direction: AngularPair,
    overhead: OverheadReport,
    T_coh: float,
    quantizer: Optional[QuantizerConfig] = None,
) -> float:
    """
    Spectral efficiency of the data phase once the RIS steers an NBS beam to
    `ris_direction` and the UE to `ue_direction`.
    """
    ris = nbs_surface(dep.ris, ris_direction, params.psi_R, quantizer)
    ue = nbs_surface(dep.sys.ue_geometry, ue_direction, BROADSIDE)
    G_B = bs_gain(dep.sys, bs_beamforming(dep.sys, params.psi_B), params.psi_B)

    channel = effective_delay_channel(params, ris, ue, G_B, dep.shape, dep.sys)
    return _rate(dep, channel.taps, overhead, T_coh)


def direct_data_rate(
    dep: Deployment,
    params: RicianChannelParams,
    position: UePosition,
    overhead: OverheadReport,
    T_coh: float,
) -> float:
    """spectral efficiency of the BS-UE NLoS link when no RIS is deployed"""
    distance = bs_ue_distance(dep.sys, position)
    channel = direct_nlos_channel(params, dep.pathloss, dep.shape, dep.sys, distance)
    return _rate(dep, channel.taps, overhead, T_coh)


def _rate(dep: Deployment, taps: np.ndarray, overhead: OverheadReport, T_coh: float) -> float:
    h = interpolate_to_K(taps, dep.sys)
    inp = AseInput(T_coh=T_coh, h=h, P_tx_ul=dep.sys.P_tx_ul, sigma_n2=dep.sys.sigma_n2)
    return ase(inp, overhead)


# -----------------------------------------------------------------------------
# reduction
# -----------------------------------------------------------------------------

SweepKey = Tuple[str, Hashable]


def sweep_rows(results: Sequence[Dict[SweepKey, float]]) -> Iterable[Tuple]:
    """
    Reduce per-trial {(series, x): value} dictionaries to rows of
    SWEEP_HEADER.  Row order follows the key order of the first trial.
    """
    for key in results[0]:
        values = [trial[key] for trial in results]
        mean, half = mean_and_ci(values)
        series, x_value = key
        yield series, x_value, mean, half, len(values)
