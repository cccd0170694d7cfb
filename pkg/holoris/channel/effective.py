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
Effective baseband channel seen after the BS, RIS and UE beamformers, in
the delay domain and on OFDM subcarriers.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Tuple
from dataclasses import dataclass
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError, StructuralError
from holoris.config import SystemConfig, PathLossParams
from holoris.beampattern import AngularPair, BROADSIDE, Surface, DpaSurface
from .pulse import PulseShape, raised_cosine
from .rician import RicianChannelParams
from .pathloss import direct_link_gain

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "EffectiveDelayChannel",
    "ue_receive_gain",
    "path_gains",
    "pulse_matrix",
    "effective_delay_channel",
    "direct_nlos_channel",
    "frequency_domain_channel",
    "frequency_response",
    "interpolate_to_K",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class EffectiveDelayChannel:
    taps: np.ndarray
    G_B: complex

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=complex)
        if taps.ndim != 1:
            raise StructuralError(f"taps must be 1-D, got shape {taps.shape}")
        if not np.all(np.isfinite(taps)):
            raise DomainError("effective channel taps must be finite")
        object.__setattr__(self, "taps", taps)

    @property
    def N_CP(self) -> int:
        return self.taps.size


def ue_receive_gain(ue: Surface, nu: AngularPair):
    """combining gain w^H a_U(nu), the conjugate of the UE beam pattern"""
    return np.conj(ue.gain(nu, BROADSIDE))


def path_gains(
    params: RicianChannelParams, ris: Surface, ue: Surface
) -> Tuple[complex, np.ndarray]:
    """
    Per-path products beta g(mu, psi_R) g_U(nu) for the LoS path and the L
    NLoS paths; the NLoS values include the 1/sqrt(L K_f) factor.
    """
    los = params.beta_los * ris.gain(params.mu_los, params.psi_R) * ue_receive_gain(
        ue, params.nu_los
    )

    scale = params.nlos_scale
    if scale == 0.0:
        return complex(los), np.zeros(params.L, dtype=complex)

    mu = AngularPair(*map(np.array, zip(*params.mu_nlos)))
    nu = AngularPair(*map(np.array, zip(*params.nu_nlos)))
    nlos = (
        scale
        * np.asarray(params.beta_nlos)
        * ris.gain(mu, params.psi_R)
        * ue_receive_gain(ue, nu)
    )
    return complex(los), np.atleast_1d(nlos)


def pulse_matrix(params: RicianChannelParams, shape: PulseShape, N_CP: int) -> np.ndarray:
    """p(d T_s - tau) for every path (rows, LoS first) and tap d (columns)"""
    t = np.arange(N_CP) * shape.T_s
    return np.atleast_2d(raised_cosine(t[None, :] - params.taus[:, None], shape))


def _check_arrays(ue: Surface, sys: SystemConfig):
    if isinstance(ue, DpaSurface) and ue.reflection_map.shape != tuple(sys.M_U):
        raise StructuralError(
            f"UE map shape {ue.reflection_map.shape} does not match M_U={sys.M_U}"
        )


def effective_delay_channel(
    params: RicianChannelParams,
    ris: Surface,
    ue: Surface,
    bs_gain: complex,
    shape: PulseShape,
    sys: SystemConfig,
) -> EffectiveDelayChannel:
    """
    Delay-domain taps of the effective channel,

        h(d T_s) = alpha G_B [ beta g(mu, psi_R) g_U(nu) p(d T_s - tau)
                              + (1/sqrt(L K_f)) sum_l beta_l g(mu_l, psi_R)
                                g_U(nu_l) p(d T_s - tau_l) ]

    for d = 0 .. N_CP-1.  The RIS and UE enter through their `gain` methods,
    so any surface configuration can be used.
    """
    _check_arrays(ue, sys)
    if not math.isclose(shape.T_s, sys.T_s, rel_tol=1e-12):
        raise StructuralError(f"pulse sampling {shape.T_s} differs from T_s={sys.T_s}")

    los, nlos = path_gains(params, ris, ue)
    gains = np.concatenate(([los], nlos))
    taps = params.alpha * bs_gain * (gains @ pulse_matrix(params, shape, sys.N_CP))
    return EffectiveDelayChannel(taps=taps, G_B=complex(bs_gain))


def direct_nlos_channel(
    params: RicianChannelParams,
    pathloss: PathLossParams,
    shape: PulseShape,
    sys: SystemConfig,
    bs_ue_distance: float,
) -> EffectiveDelayChannel:
    """
    Delay taps of the BS-UE link when no RIS is deployed.  Only the
    strongest NLoS path is kept and the BS and UE beams are aligned with it,

        h(d T_s) = gamma (beta_l / |beta|) / sqrt(L K_f) p(d T_s - tau_l)

    with gamma the direct-link magnitude over `bs_ue_distance`.  Without NLoS
    paths the taps are zero.
    """
    taps = np.zeros(sys.N_CP, dtype=complex)
    scale = params.nlos_scale
    if scale == 0.0 or params.beta_los == 0:
        return EffectiveDelayChannel(taps=taps, G_B=1.0)

    fading = np.asarray(params.beta_nlos, dtype=complex) / abs(params.beta_los)
    best = int(np.argmax(np.abs(fading)))
    gamma = direct_link_gain(pathloss, sys, bs_ue_distance)

    t = np.arange(sys.N_CP) * shape.T_s
    taps = gamma * scale * fading[best] * raised_cosine(t - params.tau_nlos[best], shape)
    return EffectiveDelayChannel(taps=taps, G_B=1.0)


def frequency_domain_channel(ch: EffectiveDelayChannel, k: int) -> complex:
    """
    Subcarrier k (1-based) of the unitary N_CP-point DFT of the taps; bin k
    corresponds to DFT frequency index k-1.
    """
    n = ch.N_CP
    if not 1 <= k <= n:
        raise DomainError(f"subcarrier {k} outside 1..{n}")
    d = np.arange(n)
    return complex(np.sum(ch.taps * np.exp(-2j * np.pi * d * (k - 1) / n)) / math.sqrt(n))


def frequency_response(ch: EffectiveDelayChannel) -> np.ndarray:
    """all N_CP subcarriers at once"""
    return np.fft.fft(ch.taps) / math.sqrt(ch.N_CP)


def interpolate_to_K(taps, sys: SystemConfig) -> np.ndarray:
    """
    Channel on all K subcarriers from N_CP delay taps: zero-pad to K and take
    the unitary K-point DFT.
    """
    taps = np.asarray(taps, dtype=complex)
    if taps.shape != (sys.N_CP,):
        raise StructuralError(f"expected {sys.N_CP} taps, got shape {taps.shape}")
    return np.fft.fft(taps, n=sys.K) / math.sqrt(sys.K)
