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
Downlink coarse channel estimation.  The RIS sweeps spatial bandpass
designs over a grid of angular groups while each UE sweeps an NBS codebook;
the UE picks the (group, codeword) pair with the strongest pilot energy.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import NamedTuple, Optional, Tuple
from dataclasses import dataclass
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError, DomainError, StructuralError
from holoris.config import SystemConfig
from holoris.logger import get_logger
from holoris.beampattern import (
    AngularPair,
    BROADSIDE,
    SurfaceGeometry,
    ReflectionMap,
    QuantizerConfig,
    DpaSurface,
    nbs_coefficients,
    nbs_surface,
    sbf_surface,
)
from holoris.channel import PulseShape, RicianChannelParams, pulse_matrix

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "GroupingConfig",
    "GroupingGrid",
    "UECodebook",
    "DownlinkObservation",
    "GroupIndex",
    "integral_directions",
    "bs_beamforming",
    "bs_gain",
    "group_cutoffs",
    "ue_codebook",
    "downlink_response",
    "observe_downlink",
    "simulate_downlink_sweep",
    "select_group",
    "true_group",
    "grouping_success",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


class GroupingConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    G_x: PositiveInt
    G_y: PositiveInt


def integral_directions(aperture: float, wavelength: float, groups: int) -> int:
    """
    Number of uplink search directions per group, 2A/(lambda G).  The group
    layout only tiles the angular range when this is an integer.
    """
    value = 2 * aperture / (wavelength * groups)
    nearest = round(value)
    if nearest < 1 or abs(value - nearest) > 1e-9 * max(1.0, value):
        raise ConfigurationError(
            f"2A/(lambda G) = {value:.6g} is not a positive integer "
            f"(A={aperture}, lambda={wavelength}, G={groups})"
        )
    return int(nearest)


@dataclass(frozen=True)
class GroupingGrid:
    """
    Pass-band cut-offs of every angular group.  Along each axis group g
    covers

        psi_min = (2pi/lambda)(-1 + 2(g-1)/G)
        psi_max = (2pi/lambda)(-1 + 2g/G - lambda/A)

    so neighbouring groups are separated by one resolution cell 2pi/A.
    """

    G_x: int
    G_y: int
    B_x: int
    B_y: int
    psi_min_azi: np.ndarray
    psi_max_azi: np.ndarray
    psi_min_ele: np.ndarray
    psi_max_ele: np.ndarray
    wavelength: float

    def cutoffs(self, g_x: int, g_y: int) -> Tuple[AngularPair, AngularPair]:
        """cut-offs of group (g_x, g_y), 1-based"""
        if not (1 <= g_x <= self.G_x and 1 <= g_y <= self.G_y):
            raise DomainError(f"group ({g_x}, {g_y}) outside {self.G_x}x{self.G_y}")
        i, j = g_x - 1, g_y - 1
        return (
            AngularPair(float(self.psi_min_azi[i]), float(self.psi_min_ele[j])),
            AngularPair(float(self.psi_max_azi[i]), float(self.psi_max_ele[j])),
        )


@dataclass(frozen=True)
class UECodebook:
    """NBS steering directions (2pi/lambda)(-1 + 2(n-1)/M) per axis"""

    psi_azi: np.ndarray
    psi_ele: np.ndarray
    wavelength: float

    @property
    def shape(self) -> Tuple[int, int]:
        return self.psi_azi.size, self.psi_ele.size

    def direction(self, n_x: int, n_y: int) -> AngularPair:
        return AngularPair(float(self.psi_azi[n_x - 1]), float(self.psi_ele[n_y - 1]))


@dataclass(frozen=True)
class DownlinkObservation:
    """pilot samples y[k, g_x, g_y, n_x, n_y], zero-based array indices"""

    y: np.ndarray
    sigma_n2: float

    @property
    def pilot_count(self) -> int:
        """one unique word per (group, codeword) cell"""
        return int(np.prod(self.y.shape[1:]))


class GroupIndex(NamedTuple):
    """selected group and UE codeword, 1-based"""

    g_x: int
    g_y: int
    n_x: int
    n_y: int


# -----------------------------------------------------------------------------
# beamformers and grids
# -----------------------------------------------------------------------------


def bs_beamforming(sys: SystemConfig, psi_B: AngularPair = BROADSIDE) -> ReflectionMap:
    """
    Analog beamformer of every BS RF chain: NBS toward the RIS direction psi_B
    with psi_in = 0.  Unit-modulus entries.
    """
    return nbs_coefficients(sys.bs_geometry, psi_B, BROADSIDE)


def bs_gain(
    sys: SystemConfig,
    f: ReflectionMap,
    psi_B: AngularPair = BROADSIDE,
    normalized: bool = True,
) -> complex:
    """BS beam-pattern factor G_B toward the RIS"""
    surface = DpaSurface(sys.bs_geometry, f, normalized=normalized)
    return complex(surface.gain(psi_B, BROADSIDE))


def _axis_cutoffs(groups: int, aperture: float, wavelength: float):
    g = np.arange(1, groups + 1)
    k0 = 2 * math.pi / wavelength
    lo = k0 * (-1 + 2 * (g - 1) / groups)
    hi = k0 * (-1 + 2 * g / groups - wavelength / aperture)
    return lo, hi


def group_cutoffs(
    grid_cfg: GroupingConfig, geom: SurfaceGeometry, wavelength: Optional[float] = None
) -> GroupingGrid:
    wavelength = wavelength or geom.wavelength
    B_x = integral_directions(geom.A_x, wavelength, grid_cfg.G_x)
    B_y = integral_directions(geom.A_y, wavelength, grid_cfg.G_y)

    min_azi, max_azi = _axis_cutoffs(grid_cfg.G_x, geom.A_x, wavelength)
    min_ele, max_ele = _axis_cutoffs(grid_cfg.G_y, geom.A_y, wavelength)

    return GroupingGrid(
        G_x=grid_cfg.G_x,
        G_y=grid_cfg.G_y,
        B_x=B_x,
        B_y=B_y,
        psi_min_azi=min_azi,
        psi_max_azi=max_azi,
        psi_min_ele=min_ele,
        psi_max_ele=max_ele,
        wavelength=wavelength,
    )


def ue_codebook(M_U: Tuple[int, int], wavelength: float) -> UECodebook:
    k0 = 2 * math.pi / wavelength
    axes = [k0 * (-1 + 2 * np.arange(M) / M) for M in M_U]
    return UECodebook(psi_azi=axes[0], psi_ele=axes[1], wavelength=wavelength)


# -----------------------------------------------------------------------------
# sweep
# -----------------------------------------------------------------------------


def _path_directions(params: RicianChannelParams) -> Tuple[AngularPair, AngularPair]:
    mu = AngularPair(
        np.array([params.mu_los.psi_azi, *(p.psi_azi for p in params.mu_nlos)]),
        np.array([params.mu_los.psi_ele, *(p.psi_ele for p in params.mu_nlos)]),
    )
    nu = AngularPair(
        np.array([params.nu_los.psi_azi, *(p.psi_azi for p in params.nu_nlos)]),
        np.array([params.nu_los.psi_ele, *(p.psi_ele for p in params.nu_nlos)]),
    )
    return mu, nu


def downlink_response(
    grid: GroupingGrid,
    cb: UECodebook,
    params: RicianChannelParams,
    sys: SystemConfig,
    ris: SurfaceGeometry,
    shape: Optional[PulseShape] = None,
    quad_points: int = 64,
    quantizer: Optional[QuantizerConfig] = None,
) -> np.ndarray:
    """
    Noiseless subcarrier response h[k, g_x, g_y, n_x, n_y] of every sweep
    cell: the RIS loads the SBF design of the group's cut-offs and the UE
    steers the NBS codeword.  h_k is the unitary-DFT subcarrier response of
    the effective channel and does not include the transmit power.
    """
    shape = shape or PulseShape(T_s=sys.T_s)
    G_B = bs_gain(sys, bs_beamforming(sys, params.psi_B), params.psi_B)
    mu, nu = _path_directions(params)

    ris_gain = np.empty((grid.G_x, grid.G_y, params.L + 1), dtype=complex)
    for gx in range(1, grid.G_x + 1):
        for gy in range(1, grid.G_y + 1):
            lo, hi = grid.cutoffs(gx, gy)
            surface = sbf_surface(ris, lo, hi, params.psi_R, quad_points, quantizer)
            ris_gain[gx - 1, gy - 1] = surface.gain(mu, params.psi_R)

    M_x, M_y = cb.shape
    ue_geom = sys.ue_geometry
    ue_gain = np.empty((M_x, M_y, params.L + 1), dtype=complex)
    for nx in range(1, M_x + 1):
        for ny in range(1, M_y + 1):
            surface = nbs_surface(ue_geom, cb.direction(nx, ny), BROADSIDE)
            ue_gain[nx - 1, ny - 1] = np.conj(surface.gain(nu, BROADSIDE))

    coeffs = np.concatenate(
        ([params.beta_los], params.nlos_scale * np.asarray(params.beta_nlos, dtype=complex))
    )
    spectra = np.fft.fft(pulse_matrix(params, shape, sys.N_CP), axis=1) / math.sqrt(sys.N_CP)

    get_logger().debug(f"downlink response: G_B={abs(G_B):.3f}")
    paths = np.einsum("p,abp,cdp,pk->kabcd", coeffs, ris_gain, ue_gain, spectra)
    return params.alpha * G_B * paths


def observe_downlink(
    h: np.ndarray, sys: SystemConfig, rng: np.random.Generator
) -> DownlinkObservation:
    """
    Pilot observations of a sweep response,

        y_k = sqrt(P_dl / N_CP) h_k + n_k,   n_k ~ CN(0, sigma_n2)

    Noise for each cell comes from its own child stream spawned from `rng`,
    in lexicographic cell order.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 5 or h.shape[0] != sys.N_CP:
        raise StructuralError(
            f"sweep response of shape {h.shape} does not carry N_CP={sys.N_CP}"
        )

    y = math.sqrt(sys.P_tx_dl / sys.N_CP) * h

    cells = int(np.prod(h.shape[1:]))
    children = np.random.SeedSequence(int(rng.integers(2**63))).spawn(cells)
    noise = np.empty((cells, sys.N_CP), dtype=complex)
    std = math.sqrt(sys.sigma_n2 / 2)
    for i, child in enumerate(children):
        cell_rng = np.random.default_rng(child)
        noise[i] = std * (
            cell_rng.standard_normal(sys.N_CP) + 1j * cell_rng.standard_normal(sys.N_CP)
        )

    get_logger().debug(f"downlink sweep: {cells} cells")
    return DownlinkObservation(y=y + noise.T.reshape(y.shape), sigma_n2=sys.sigma_n2)


def simulate_downlink_sweep(
    grid: GroupingGrid,
    cb: UECodebook,
    params: RicianChannelParams,
    sys: SystemConfig,
    ris: SurfaceGeometry,
    rng: np.random.Generator,
    shape: Optional[PulseShape] = None,
    quad_points: int = 64,
    quantizer: Optional[QuantizerConfig] = None,
) -> DownlinkObservation:
    """Pilot observations of a full downlink sweep at the power in `sys`"""
    h = downlink_response(grid, cb, params, sys, ris, shape, quad_points, quantizer)
    return observe_downlink(h, sys, rng)


def select_group(obs: DownlinkObservation) -> GroupIndex:
    """
    Cell with the largest sum over subcarriers of |y_k|; argmax returns the
    first maximum in C order, which is the lowest lexicographic index.
    """
    if obs.y.size == 0:
        raise DomainError("empty downlink observation")
    metric = np.sum(np.abs(obs.y), axis=0)
    idx = np.unravel_index(int(np.argmax(metric)), metric.shape)
    return GroupIndex(*(int(i) + 1 for i in idx))


# -----------------------------------------------------------------------------
# oracle
# -----------------------------------------------------------------------------


def _nearest_interval(value: float, lo: np.ndarray, hi: np.ndarray) -> int:
    dist = np.maximum(lo - value, 0) + np.maximum(value - hi, 0)
    return int(np.argmin(dist)) + 1


def _nearest_wrapped(value: float, points: np.ndarray, period: float) -> int:
    dist = np.abs(np.mod(value - points + period / 2, period) - period / 2)
    return int(np.argmin(dist)) + 1


def true_group(
    grid: GroupingGrid, cb: UECodebook, params: RicianChannelParams
) -> GroupIndex:
    """
    Reference selection from the true LoS angles: the group whose range is
    closest to mu_LoS (a direction inside a gap goes to the nearer
    neighbour) and the codeword closest to nu_LoS on the periodic
    lambda/2-array axis.
    """
    period = 4 * math.pi / cb.wavelength
    return GroupIndex(
        _nearest_interval(params.mu_los.psi_azi, grid.psi_min_azi, grid.psi_max_azi),
        _nearest_interval(params.mu_los.psi_ele, grid.psi_min_ele, grid.psi_max_ele),
        _nearest_wrapped(params.nu_los.psi_azi, cb.psi_azi, period),
        _nearest_wrapped(params.nu_los.psi_ele, cb.psi_ele, period),
    )


def grouping_success(
    selected: GroupIndex,
    grid: GroupingGrid,
    cb: UECodebook,
    params: RicianChannelParams,
) -> bool:
    return selected == true_group(grid, cb, params)
