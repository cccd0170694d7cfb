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
Uplink fine channel estimation, measurement side.  UEs in the selected group
steer NBS beams toward their downlink codeword and send pilots on dedicated
subcarriers while the RIS cycles through random-phase superpositions of NBS
beams toward a fine search grid.  The BS collects Y_u = W H_u F_u + N_u for
each UE, ready for sparse recovery.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Optional, Sequence, Tuple, Union
from dataclasses import dataclass
from enum import Enum
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from scipy.linalg import lstsq

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import (
    ConfigurationError,
    DomainError,
    RankDeficientError,
    StructuralError,
)
from holoris.config import SystemConfig
from holoris.logger import get_logger
from holoris.beampattern import (
    AngularPair,
    BROADSIDE,
    SurfaceGeometry,
    ReflectionMap,
    Surface,
    DpaSurface,
    CmsOverlappedSurface,
    nbs_surface,
    nbs_gain_table,
)
from holoris.channel import PulseShape, RicianChannelParams, pulse_matrix, ue_receive_gain
from holoris.ce_downlink import (
    GroupIndex,
    GroupingGrid,
    bs_beamforming,
    bs_gain,
    integral_directions,
)

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "UplinkSearchSpace",
    "DscScheme",
    "DscAllocation",
    "SensingMatrices",
    "AdDdChannel",
    "MeasurementSet",
    "build_search_space",
    "overlapped_nbs",
    "allocate_dsc",
    "random_ue_beamformer",
    "build_addd_channel",
    "dft_columns",
    "random_phases",
    "sensing_matrices",
    "build_measurements",
    "assemble_received_grid",
    "demultiplex",
    "ls_baseline",
    "exhaustive_scan",
    "strongest_direction",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class UplinkSearchSpace:
    """
    Fine search grid inside the selected group, one RIS resolution cell
    apart: zeta[b] = psi_min + (b-1) 2pi/A.  Flattened directions are ordered
    with b_y running fastest, b = (b_x-1) B_y + b_y.
    """

    zeta_azi: np.ndarray
    zeta_ele: np.ndarray

    @property
    def B_x(self) -> int:
        return self.zeta_azi.size

    @property
    def B_y(self) -> int:
        return self.zeta_ele.size

    @property
    def size(self) -> int:
        return self.B_x * self.B_y

    def direction(self, b_x: int, b_y: int) -> AngularPair:
        return AngularPair(float(self.zeta_azi[b_x - 1]), float(self.zeta_ele[b_y - 1]))

    def unravel(self, b: int) -> Tuple[int, int]:
        """flat 0-based row index into 1-based (b_x, b_y)"""
        b_x, b_y = divmod(int(b), self.B_y)
        return b_x + 1, b_y + 1


class DscScheme(str, Enum):
    BLOCK = "block"
    UNIFORM = "uniform"
    RANDOM = "random"


@dataclass(frozen=True)
class DscAllocation:
    """dedicated subcarrier sets, 1-based and sorted, one per UE"""

    scheme: DscScheme
    sets: Tuple[np.ndarray, ...]
    N_CP: int

    def __post_init__(self):
        sizes = {s.size for s in self.sets}
        if len(sizes) != 1:
            raise StructuralError("DSC sets must have equal size")
        merged = np.concatenate(self.sets)
        if np.unique(merged).size != merged.size:
            raise StructuralError("DSC sets overlap")
        if merged.min() < 1 or merged.max() > self.N_CP:
            raise StructuralError(f"DSC indices outside 1..{self.N_CP}")

    @property
    def N_UE(self) -> int:
        return len(self.sets)

    @property
    def N_used(self) -> int:
        return self.sets[0].size

    def subcarriers(self, ue: int) -> np.ndarray:
        """set of UE `ue`, 1-based"""
        return self.sets[ue - 1]


@dataclass(frozen=True)
class SensingMatrices:
    W: np.ndarray
    F_u: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True)
class AdDdChannel:
    """angular-domain / delay-domain channel, rows = search directions"""

    H: np.ndarray

    @property
    def n_directions(self) -> int:
        return self.H.shape[0]

    @property
    def N_CP(self) -> int:
        return self.H.shape[1]


@dataclass(frozen=True)
class MeasurementSet:
    Y: np.ndarray
    N: np.ndarray


# -----------------------------------------------------------------------------
# search space and RIS configurations
# -----------------------------------------------------------------------------


def build_search_space(
    group: GroupIndex, grid: GroupingGrid, geom: SurfaceGeometry
) -> UplinkSearchSpace:
    B_x = integral_directions(geom.A_x, grid.wavelength, grid.G_x)
    B_y = integral_directions(geom.A_y, grid.wavelength, grid.G_y)
    if (B_x, B_y) != (grid.B_x, grid.B_y):
        raise ConfigurationError("grouping grid was built for a different aperture")

    lo, _ = grid.cutoffs(group.g_x, group.g_y)
    return UplinkSearchSpace(
        zeta_azi=lo.psi_azi + np.arange(B_x) * 2 * math.pi / geom.A_x,
        zeta_ele=lo.psi_ele + np.arange(B_y) * 2 * math.pi / geom.A_y,
    )


def _phase_grid(space: UplinkSearchSpace, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.size != space.size:
        raise StructuralError(
            f"{theta.size} phases given for {space.size} search directions"
        )
    return theta.reshape(space.B_x, space.B_y)


def overlapped_nbs(
    space: UplinkSearchSpace,
    theta,
    geom: SurfaceGeometry,
    psi_in: AngularPair = BROADSIDE,
) -> Surface:
    """
    RIS configuration of one uplink slot,

        Phi = (1/sqrt(B_x B_y)) sum_b exp(j theta_b) Phi_NBS(zeta_b)

    For a DPA the map is renormalized to max |Phi| = 1 and the factor is
    kept as the surface `scale`, so the reported pattern is that of the sum
    above.  A CMS is evaluated from the continuous NBS patterns directly.
    """
    phases = _phase_grid(space, theta)

    if not geom.is_dpa:
        return CmsOverlappedSurface(
            geom.A_x, geom.A_y, space.zeta_azi, space.zeta_ele, phases, psi_in
        )

    m = np.arange(1, geom.N_x + 1)
    n = np.arange(1, geom.N_y + 1)
    ex = np.exp(1j * geom.d * np.outer(m, space.zeta_azi - psi_in.psi_azi))
    ey = np.exp(1j * geom.d * np.outer(n, space.zeta_ele - psi_in.psi_ele))
    raw = ex @ np.exp(1j * phases) @ ey.T / math.sqrt(space.size)

    scale = float(np.max(np.abs(raw)))
    return DpaSurface(geom, ReflectionMap.normalized(raw), scale=scale)


def allocate_dsc(
    scheme: Union[DscScheme, str],
    N_CP: int,
    N_UE: int,
    rng: Optional[np.random.Generator] = None,
) -> DscAllocation:
    """
    Split subcarriers 1..N_CP into N_UE equal disjoint sets: contiguous
    blocks, interleaved (k = u mod N_UE) or a random partition.
    """
    scheme = DscScheme(scheme)
    if N_UE < 1 or N_CP % N_UE:
        raise ConfigurationError(f"N_UE={N_UE} does not divide N_CP={N_CP}")

    n_used = N_CP // N_UE
    k = np.arange(1, N_CP + 1)

    if scheme is DscScheme.BLOCK:
        sets = k.reshape(N_UE, n_used)
    elif scheme is DscScheme.UNIFORM:
        sets = np.stack([k[k % N_UE == u % N_UE] for u in range(1, N_UE + 1)])
    else:
        if rng is None:
            raise ConfigurationError("random DSC allocation needs a random generator")
        sets = np.sort(rng.permutation(k).reshape(N_UE, n_used), axis=1)

    return DscAllocation(scheme=scheme, sets=tuple(np.array(s) for s in sets), N_CP=N_CP)


def random_ue_beamformer(sys: SystemConfig, rng: np.random.Generator) -> Surface:
    """open-loop UE beamformer: i.i.d. uniform phases, no steering"""
    phases = rng.uniform(0.0, 2 * math.pi, size=tuple(sys.M_U))
    return DpaSurface(sys.ue_geometry, ReflectionMap(np.exp(1j * phases)))


# -----------------------------------------------------------------------------
# channel and measurements
# -----------------------------------------------------------------------------


def build_addd_channel(
    params: RicianChannelParams,
    space: UplinkSearchSpace,
    ue_codeword: Union[AngularPair, Surface],
    shape: PulseShape,
    sys: SystemConfig,
    ris: SurfaceGeometry,
) -> AdDdChannel:
    """
    Effective angular/delay-domain channel H (B_x B_y x N_CP).  Row b holds

        alpha G_B [beta g_U(nu) g_NBS(mu, psi_R; zeta_b) p(t T_s - tau) + NLoS]

    i.e. the channel the BS would see if the RIS steered a single NBS beam
    toward zeta_b.  `ue_codeword` is the downlink-selected steering direction
    or, for open-loop pilots, any UE surface configuration.
    """
    if isinstance(ue_codeword, AngularPair):
        ue = nbs_surface(sys.ue_geometry, ue_codeword, BROADSIDE)
    else:
        ue = ue_codeword

    G_B = bs_gain(sys, bs_beamforming(sys, params.psi_B), params.psi_B)

    def row(mu: AngularPair, nu: AngularPair, beta: complex) -> np.ndarray:
        table = nbs_gain_table(ris, mu, params.psi_R, space.zeta_azi, space.zeta_ele)
        return params.alpha * G_B * beta * ue_receive_gain(ue, nu) * table.ravel()

    rows = [row(params.mu_los, params.nu_los, params.beta_los)]
    scale = params.nlos_scale
    for mu, nu, beta in zip(params.mu_nlos, params.nu_nlos, params.beta_nlos):
        rows.append(row(mu, nu, scale * beta))

    H = np.stack(rows, axis=1) @ pulse_matrix(params, shape, sys.N_CP)
    return AdDdChannel(H=H)


def dft_columns(N_CP: int, subcarriers: Sequence[int]) -> np.ndarray:
    """columns k (1-based) of the unitary DFT, [F]_{m,k} = e^{-j2pi(m-1)(k-1)/N}/sqrt(N)"""
    m = np.arange(N_CP)[:, None]
    k = np.asarray(subcarriers)[None, :] - 1
    return np.exp(-2j * np.pi * m * k / N_CP) / math.sqrt(N_CP)


def random_phases(N_P: int, space: UplinkSearchSpace, rng: np.random.Generator) -> np.ndarray:
    """theta[i, b_x, b_y] ~ U[0, 2pi), one draw per slot and direction"""
    return rng.uniform(0.0, 2 * math.pi, size=(N_P, space.B_x, space.B_y))


def sensing_matrices(
    theta: np.ndarray, alloc: DscAllocation, ue: int, P_tx_ul: float
) -> SensingMatrices:
    """
    W = sqrt(P/N_used) [w_1 ... w_NP]^T with w_i = exp(j theta_i)/sqrt(B_x B_y)
    flattened b_y-fastest, and F_u the DFT columns of the UE's subcarriers.
    """
    n_p = theta.shape[0]
    B = int(np.prod(theta.shape[1:]))
    W = math.sqrt(P_tx_ul / alloc.N_used) * np.exp(1j * theta.reshape(n_p, B)) / math.sqrt(B)
    return SensingMatrices(W=W, F_u=dft_columns(alloc.N_CP, alloc.subcarriers(ue)), theta=theta)


def build_measurements(
    H: AdDdChannel,
    alloc: DscAllocation,
    N_P: int,
    P_tx_ul: float,
    sigma_n2: float,
    rng: np.random.Generator,
    ue: int = 1,
    theta: Optional[np.ndarray] = None,
) -> Tuple[SensingMatrices, MeasurementSet]:
    """
    Y = W H F_u + N over N_P slots for UE `ue`.  Pass `theta` to share the
    RIS phase sequence between UEs; otherwise it is drawn from `rng` first,
    followed by the noise.
    """
    if N_P < 1:
        raise DomainError(f"N_P must be positive, got {N_P}")
    if H.N_CP != alloc.N_CP:
        raise StructuralError(f"channel has {H.N_CP} taps, allocation {alloc.N_CP}")

    if theta is None:
        theta = rng.uniform(0.0, 2 * math.pi, size=(N_P, H.n_directions, 1))
    elif theta.shape[0] != N_P or int(np.prod(theta.shape[1:])) != H.n_directions:
        raise StructuralError(f"phase array shape {theta.shape} does not fit the channel")

    sensing = sensing_matrices(theta, alloc, ue, P_tx_ul)
    clean = sensing.W @ H.H @ sensing.F_u

    std = math.sqrt(sigma_n2 / 2)
    noise = std * (rng.standard_normal(clean.shape) + 1j * rng.standard_normal(clean.shape))

    return sensing, MeasurementSet(Y=clean + noise, N=noise)


def assemble_received_grid(
    per_ue: Sequence[np.ndarray], alloc: DscAllocation, noise: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Superimpose every UE's N_P x N_used pilot block on its own subcarriers of
    an N_P x N_CP frequency grid, plus optional receiver noise.
    """
    n_p = per_ue[0].shape[0]
    grid = np.zeros((n_p, alloc.N_CP), dtype=complex)
    for ue, block in enumerate(per_ue, start=1):
        grid[:, alloc.subcarriers(ue) - 1] += block
    if noise is not None:
        grid = grid + noise
    return grid


def demultiplex(grid: np.ndarray, alloc: DscAllocation, ue: int) -> np.ndarray:
    return grid[:, alloc.subcarriers(ue) - 1]


# -----------------------------------------------------------------------------
# reference estimators
# -----------------------------------------------------------------------------


def ls_baseline(W: np.ndarray, F_u: np.ndarray, Y: np.ndarray) -> AdDdChannel:
    """
    Minimum-norm least squares for vec(Y) = (F_u^T (x) W) vec(H).  Needs W with
    full column rank and F_u covering every subcarrier, in which case the
    solution is H = W^+ Y F_u^H.

    Raises
    ------
    RankDeficientError
        The stacked system is underdetermined or rank deficient.
    """
    n_p, B = W.shape
    N_CP, n_used = F_u.shape
    if Y.shape != (n_p, n_used):
        raise StructuralError(f"Y shape {Y.shape} does not match ({n_p}, {n_used})")
    if n_used < N_CP:
        raise RankDeficientError(
            f"{n_used} subcarriers cannot resolve {N_CP} delay taps"
        )

    X, _, rank, _ = lstsq(W, Y)
    if rank < B:
        raise RankDeficientError(f"sensing matrix rank {rank} below {B} directions")

    return AdDdChannel(H=X @ F_u.conj().T)


def exhaustive_scan(
    H: AdDdChannel,
    P_tx_ul: float,
    sigma_n2: float,
    rng: np.random.Generator,
    space: Optional[UplinkSearchSpace] = None,
) -> int:
    """
    Reference beam sweep: one slot per search direction with a single NBS
    beam, all N_CP subcarriers.  Returns the 0-based row with the most
    received energy (use `space.unravel` for (b_x, b_y)).
    """
    F = dft_columns(H.N_CP, np.arange(1, H.N_CP + 1))
    clean = math.sqrt(P_tx_ul / H.N_CP) * H.H @ F
    std = math.sqrt(sigma_n2 / 2)
    y = clean + std * (rng.standard_normal(clean.shape) + 1j * rng.standard_normal(clean.shape))

    best = int(np.argmax(np.sum(np.abs(y) ** 2, axis=1)))
    if space is not None:
        get_logger().debug(f"exhaustive scan picked {space.unravel(best)}")
    return best


def strongest_direction(H: np.ndarray, space: UplinkSearchSpace) -> AngularPair:
    """search direction of the row with the largest energy"""
    b = int(np.argmax(np.sum(np.abs(H) ** 2, axis=1)))
    return space.direction(*space.unravel(b))
