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
Rician RIS-UE channel realizations: geometry of the LoS path, random NLoS
angles, path delays and complex path coefficients.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import NamedTuple, Optional, Tuple
from dataclasses import dataclass, replace
from enum import Enum
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from tenacity import retry, retry_if_result, stop_after_attempt, RetryCallState

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError, StructuralError, ResampleExhaustedError
from holoris.config import SystemConfig, PathLossParams, db_to_linear
from holoris.logger import get_logger
from holoris.beampattern import AngularPair, BROADSIDE, spatial_from_radians
from .pathloss import channel_coefficients

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "Link",
    "UePosition",
    "RicianChannelParams",
    "ue_los_direction",
    "bs_ue_distance",
    "sample_ue_position",
    "sample_hemisphere",
    "sample_rician",
    "reciprocal_uplink",
    "draw_delays",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

MAX_DELAY_DRAWS = 1000
DELAY_BATCH = 1024
DEFAULT_K_FACTOR = db_to_linear(30.0)


class Link(str, Enum):
    DOWNLINK = "downlink"
    UPLINK = "uplink"


class UePosition(NamedTuple):
    """UE ground coordinates in metres; the RIS foot point is the origin and
    its normal points along +x"""

    x: float
    y: float


@dataclass(frozen=True)
class RicianChannelParams:
    """
    One LoS and L NLoS paths of the RIS-UE link plus the BS-RIS coefficient.

    Spatial frequencies mu are seen at the RIS, nu at the UE; psi_B and psi_R
    are the BS-RIS departure and arrival directions.  NLoS coefficients are
    stored before the 1/sqrt(L K_f) scaling, see `nlos_scale`.
    """

    L: int
    K_f: float
    mu_los: AngularPair
    nu_los: AngularPair
    mu_nlos: Tuple[AngularPair, ...]
    nu_nlos: Tuple[AngularPair, ...]
    tau_los: float
    tau_nlos: Tuple[float, ...]
    alpha: complex
    beta_los: complex
    beta_nlos: Tuple[complex, ...]
    psi_B: AngularPair = BROADSIDE
    psi_R: AngularPair = BROADSIDE
    theta_alpha: float = 0.0
    theta_beta: float = 0.0
    d_ris_ue: float = 1.0
    link: Link = Link.DOWNLINK

    def __post_init__(self):
        if self.L < 0:
            raise DomainError(f"number of NLoS paths must be >= 0, got {self.L}")

        lengths = {len(self.mu_nlos), len(self.nu_nlos), len(self.tau_nlos), len(self.beta_nlos)}
        if lengths != {self.L}:
            raise StructuralError(f"NLoS arrays do not all have length L={self.L}")

        if self.K_f <= 0:
            raise DomainError(f"Rician factor must be positive, got {self.K_f}")

        if any(self.tau_los >= tau for tau in self.tau_nlos):
            raise DomainError("LoS delay must precede every NLoS delay")

    @property
    def nlos_scale(self) -> float:
        if self.L == 0 or math.isinf(self.K_f):
            return 0.0
        return 1.0 / math.sqrt(self.L * self.K_f)

    @property
    def taus(self) -> np.ndarray:
        return np.array((self.tau_los, *self.tau_nlos))


# -----------------------------------------------------------------------------
# geometry
# -----------------------------------------------------------------------------


def ue_los_direction(sys: SystemConfig, pos: UePosition) -> Tuple[AngularPair, float]:
    """
    Spatial frequency of the RIS-to-UE LoS direction and the RIS-UE distance.
    The RIS local x axis runs along ground y, its y axis points up.
    """
    geo = sys.geometry
    r = math.hypot(pos.x, pos.y)
    if r == 0 or r > geo.R * (1 + 1e-12):
        raise DomainError(f"UE at {tuple(pos)} outside the sector radius {geo.R}")
    if abs(math.atan2(pos.y, pos.x)) > geo.central_angle / 2 * (1 + 1e-12):
        raise DomainError(f"UE at {tuple(pos)} outside the sector angle")

    dz = geo.h2 - geo.h1
    dist = math.sqrt(r * r + dz * dz)
    k0 = 2 * math.pi / sys.wavelength
    return AngularPair(k0 * pos.y / dist, k0 * dz / dist), dist


def bs_ue_distance(sys: SystemConfig, pos: UePosition) -> float:
    """distance from the BS, at height h1 a distance R along the RIS normal, to the UE"""
    geo = sys.geometry
    return math.sqrt((pos.x - geo.R) ** 2 + pos.y**2 + (geo.h1 - geo.h2) ** 2)


def sample_ue_position(
    sys: SystemConfig, rng: np.random.Generator, min_radius_fraction: float = 0.1
) -> UePosition:
    """uniform by area over the sector, excluding a small disc at the RIS"""
    geo = sys.geometry
    r = geo.R * math.sqrt(rng.uniform(min_radius_fraction**2, 1.0))
    phi = rng.uniform(-geo.central_angle / 2, geo.central_angle / 2)
    return UePosition(r * math.cos(phi), r * math.sin(phi))


def sample_hemisphere(
    rng: np.random.Generator, wavelength: float, size: Optional[int] = None
) -> AngularPair:
    """direction uniform in (theta_azi, theta_ele) over the hemisphere"""
    theta_azi = rng.uniform(0.0, 2 * math.pi, size=size)
    theta_ele = rng.uniform(0.0, math.pi / 2, size=size)
    return spatial_from_radians(theta_azi, theta_ele, wavelength)


# -----------------------------------------------------------------------------
# delays
# -----------------------------------------------------------------------------


def _log_redraw(retry_state: RetryCallState):
    get_logger().debug(
        f"no NLoS delay batch after the LoS delay, redraw attempt {retry_state.attempt_number}"
    )


def _delays_exhausted(retry_state: RetryCallState):
    raise ResampleExhaustedError(
        f"no ordered delay draw after {retry_state.attempt_number} attempts"
    )


@retry(
    retry=retry_if_result(lambda taus: taus is None),
    stop=stop_after_attempt(MAX_DELAY_DRAWS),
    after=_log_redraw,
    retry_error_callback=_delays_exhausted,
)
def _draw_nlos_delays(rng: np.random.Generator, L: int, tau_los: float, tau_max: float):
    """
    NLoS delays uniform on [0, tau_max) conditioned on following tau_los.
    Each path draws DELAY_BATCH candidates and keeps the first one past
    tau_los; the batch is redrawn when any path has none.
    """
    batch = rng.uniform(0.0, tau_max, size=(DELAY_BATCH, L))
    valid = batch > tau_los
    if not np.all(valid.any(axis=0)):
        return None
    return batch[np.argmax(valid, axis=0), np.arange(L)]


def draw_delays(rng: np.random.Generator, L: int, tau_max: float) -> np.ndarray:
    """LoS delay first, then L NLoS delays redrawn until they all follow it"""
    tau_los = rng.uniform(0.0, tau_max)
    if not L:
        return np.array([tau_los])
    return np.concatenate(([tau_los], _draw_nlos_delays(rng, L, tau_los, tau_max)))


# -----------------------------------------------------------------------------
# channel draws
# -----------------------------------------------------------------------------


def sample_rician(
    sys: SystemConfig,
    rng: np.random.Generator,
    ue_position: UePosition,
    pathloss: PathLossParams,
    L: int = 1,
    K_f: float = DEFAULT_K_FACTOR,
) -> RicianChannelParams:
    """
    Draw one downlink channel realization for a UE at `ue_position`.

    The LoS direction at the RIS follows from the geometry; the UE-side LoS
    direction and every NLoS direction are uniform over the hemisphere.
    Delays are uniform over the cyclic prefix; the NLoS delays are redrawn
    until they all follow the LoS delay.  NLoS coefficients have the LoS
    magnitude times a unit complex normal.  `K_f = inf` removes the NLoS
    contribution.
    """
    mu_los, dist = ue_los_direction(sys, ue_position)
    pl = pathloss.model_copy(update={"d_ris_ue": dist})
    alpha, beta_los = channel_coefficients(pl, sys, rng)

    wavelength = sys.wavelength
    nu_los = sample_hemisphere(rng, wavelength)
    mu_nlos = sample_hemisphere(rng, wavelength, size=L)
    nu_nlos = sample_hemisphere(rng, wavelength, size=L)

    taus = draw_delays(rng, L, (sys.N_CP - 1) * sys.T_s)

    cn = (rng.standard_normal(L) + 1j * rng.standard_normal(L)) / math.sqrt(2)
    beta_nlos = abs(beta_los) * cn

    return RicianChannelParams(
        L=L,
        K_f=K_f,
        mu_los=mu_los,
        nu_los=AngularPair(float(nu_los.psi_azi), float(nu_los.psi_ele)),
        mu_nlos=tuple(AngularPair(float(a), float(e)) for a, e in zip(*mu_nlos)),
        nu_nlos=tuple(AngularPair(float(a), float(e)) for a, e in zip(*nu_nlos)),
        tau_los=float(taus[0]),
        tau_nlos=tuple(float(t) for t in taus[1:]),
        alpha=alpha,
        beta_los=beta_los,
        beta_nlos=tuple(complex(b) for b in beta_nlos),
        theta_alpha=float(np.angle(alpha)) % (2 * math.pi),
        theta_beta=float(np.angle(beta_los)) % (2 * math.pi),
        d_ris_ue=dist,
    )


def reciprocal_uplink(params: RicianChannelParams) -> RicianChannelParams:
    """
    TDD reciprocity: the reverse link shares every angle, delay and
    coefficient, only the direction label flips.
    """
    flipped = Link.UPLINK if params.link is Link.DOWNLINK else Link.DOWNLINK
    return replace(params, link=flipped)
