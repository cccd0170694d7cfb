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

from typing import Iterable, Tuple
from dataclasses import dataclass
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from scipy import stats

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError, StructuralError

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "OverheadReport",
    "AseInput",
    "nmse",
    "ase",
    "pilot_overhead",
    "omp_mult_count",
    "grouping_failure_prob",
    "mean_and_ci",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class OverheadReport:
    T_DL: float
    T_UL: float
    downlink_search_ops: int
    uplink_mult_count: int = 0

    @property
    def T_total(self) -> float:
        return self.T_DL + self.T_UL


@dataclass(frozen=True)
class AseInput:
    T_coh: float
    h: np.ndarray
    P_tx_ul: float
    sigma_n2: float

    @property
    def K(self) -> int:
        return np.asarray(self.h).size


def nmse(H_hat: np.ndarray, H: np.ndarray) -> float:
    """||H_hat - H||_F^2 / ||H||_F^2"""
    H_hat = np.asarray(H_hat)
    H = np.asarray(H)
    if H_hat.shape != H.shape:
        raise StructuralError(f"shape mismatch {H_hat.shape} vs {H.shape}")
    ref = np.sum(np.abs(H) ** 2)
    if ref == 0:
        raise DomainError("NMSE undefined for an all-zero reference channel")
    return float(np.sum(np.abs(H_hat - H) ** 2) / ref)


def ase(inp: AseInput, overhead: OverheadReport) -> float:
    """
    Average spectral efficiency in bit/s/Hz,

        (1 - (T_DL + T_UL)/T_coh) (1/K) sum_k log2(1 + P |h_k|^2 / (K sigma^2))
    """
    prefactor = 1.0 - overhead.T_total / inp.T_coh
    if prefactor <= 0:
        raise DomainError(
            f"pilot overhead {overhead.T_total:.3g} s leaves no airtime in "
            f"T_coh={inp.T_coh:.3g} s"
        )

    h = np.asarray(inp.h)
    K = h.size
    snr = inp.P_tx_ul * np.abs(h) ** 2 / (K * inp.sigma_n2)
    return float(prefactor * np.mean(np.log2(1.0 + snr)))


def omp_mult_count(N_P: int, N_used: int, B: int, N_CP: int, iterations: int) -> int:
    """
    Complex multiplications of `iterations` OMP iterations with the matched
    filter counted as a dense (N_P N_used) x (B N_CP) product, the support
    least squares as M s^2 + M s and the residual update as M s.
    """
    rows = N_P * N_used
    total = 0
    for s in range(1, iterations + 1):
        total += rows * B * N_CP + rows * s * s + 2 * rows * s
    return total


def pilot_overhead(
    G_x: int,
    G_y: int,
    M_U: Tuple[int, int],
    N_P: int,
    N_CP: int,
    T_s: float,
    uplink_mult_count: int = 0,
) -> OverheadReport:
    """
    Pilot airtime of the two stages: each unique word lasts 2 N_CP T_s
    (cyclic prefix plus symbol); the downlink sends G_x G_y M_x M_y of them
    and the uplink N_P.
    """
    uw = 2 * N_CP * T_s
    dl_words = G_x * G_y * M_U[0] * M_U[1]
    return OverheadReport(
        T_DL=uw * dl_words,
        T_UL=uw * N_P,
        downlink_search_ops=dl_words,
        uplink_mult_count=uplink_mult_count,
    )


def grouping_failure_prob(trial_outcomes: Iterable[bool]) -> float:
    """fraction of trials whose selected group was wrong; True = success"""
    outcomes = list(trial_outcomes)
    if not outcomes:
        raise DomainError("no trial outcomes")
    return sum(1 for ok in outcomes if not ok) / len(outcomes)


def mean_and_ci(values: Iterable[float], confidence: float = 0.95) -> Tuple[float, float]:
    """sample mean and Student-t confidence half-width (0 for one sample)"""
    data = np.asarray(list(values), dtype=float)
    if data.size == 0:
        raise DomainError("no samples")
    mean = float(np.mean(data))
    if data.size < 2:
        return mean, 0.0
    sem = stats.sem(data)
    if sem == 0 or not math.isfinite(sem):
        return mean, 0.0
    return mean, float(sem * stats.t.ppf((1 + confidence) / 2, data.size - 1))
