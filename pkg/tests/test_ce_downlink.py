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

import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
import pytest

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError, DomainError, StructuralError
from holoris.config import SystemConfig
from holoris.beampattern import AngularPair
from holoris.channel import RicianChannelParams
from holoris.ce_downlink import (
    DownlinkObservation,
    GroupIndex,
    GroupingConfig,
    bs_beamforming,
    bs_gain,
    downlink_response,
    group_cutoffs,
    grouping_success,
    integral_directions,
    observe_downlink,
    select_group,
    simulate_downlink_sweep,
    true_group,
    ue_codebook,
)

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def _los_params(mu: AngularPair, nu: AngularPair, tau: float = 0.0) -> RicianChannelParams:
    return RicianChannelParams(
        L=0,
        K_f=math.inf,
        mu_los=mu,
        nu_los=nu,
        mu_nlos=(),
        nu_nlos=(),
        tau_los=tau,
        tau_nlos=(),
        alpha=1.0 + 0j,
        beta_los=1.0 + 0j,
        beta_nlos=(),
    )


def test_integral_directions(wavelength):
    assert integral_directions(16 * wavelength, wavelength, 4) == 8
    assert integral_directions(16 * wavelength, wavelength, 32) == 1
    with pytest.raises(ConfigurationError):
        integral_directions(16 * wavelength, wavelength, 3)


def test_group_cutoffs_tile_the_visible_range(ris_desk, wavelength):
    grid = group_cutoffs(GroupingConfig(G_x=4, G_y=2), ris_desk)
    k0 = 2 * math.pi / wavelength
    cell = 2 * math.pi / ris_desk.A_x

    assert (grid.B_x, grid.B_y) == (8, 16)
    for lo, hi in ((grid.psi_min_azi, grid.psi_max_azi), (grid.psi_min_ele, grid.psi_max_ele)):
        assert lo[0] == pytest.approx(-k0)
        assert np.allclose(hi[:-1] + cell, lo[1:])
        assert hi[-1] + cell == pytest.approx(k0)

    with pytest.raises(DomainError):
        grid.cutoffs(5, 1)


def test_ue_codebook_directions(wavelength):
    cb = ue_codebook((4, 2), wavelength)
    k0 = 2 * math.pi / wavelength
    assert cb.shape == (4, 2)
    assert np.allclose(cb.psi_azi / k0, [-1.0, -0.5, 0.0, 0.5])
    assert np.allclose(cb.psi_ele / k0, [-1.0, 0.0])
    assert cb.direction(3, 2) == (pytest.approx(0.0), pytest.approx(0.0))


def test_broadside_bs_gain_is_unity(sys_cfg):
    assert bs_gain(sys_cfg, bs_beamforming(sys_cfg)) == pytest.approx(1.0)


def test_select_group_picks_the_strongest_cell():
    y = np.zeros((4, 2, 3, 2, 2), dtype=complex)
    y[:, 1, 2, 0, 1] = 1.0
    obs = DownlinkObservation(y=y, sigma_n2=0.0)
    assert select_group(obs) == GroupIndex(2, 3, 1, 2)
    assert obs.pilot_count == 24


def test_select_group_ties_go_to_the_lowest_index():
    obs = DownlinkObservation(y=np.ones((4, 2, 2, 2, 2)), sigma_n2=0.0)
    assert select_group(obs) == GroupIndex(1, 1, 1, 1)


def test_true_group_assigns_gap_directions_to_the_nearer_group(ris_desk, wavelength):
    grid = group_cutoffs(GroupingConfig(G_x=4, G_y=4), ris_desk)
    cb = ue_codebook((4, 4), wavelength)
    k0 = 2 * math.pi / wavelength

    in_gap = AngularPair(k0 * -0.51, k0 * 0.1)
    params = _los_params(in_gap, cb.direction(1, 1))
    assert true_group(grid, cb, params)[:2] == (2, 3)

    # codewords wrap around the lambda/2 period
    params = _los_params(in_gap, AngularPair(k0 * 0.9, k0 * -0.9))
    assert true_group(grid, cb, params)[2:] == (1, 1)


def test_noiseless_sweep_finds_the_true_group(ris_desk, wavelength):
    sys = SystemConfig(sigma_n2=0.0)
    grid = group_cutoffs(GroupingConfig(G_x=4, G_y=4), ris_desk)
    cb = ue_codebook(sys.M_U, wavelength)
    k0 = 2 * math.pi / wavelength

    mu = AngularPair(k0 * -0.28125, k0 * 0.21875)
    params = _los_params(mu, cb.direction(2, 3))
    obs = simulate_downlink_sweep(grid, cb, params, sys, ris_desk, np.random.default_rng(1))

    assert obs.y.shape == (sys.N_CP, 4, 4, 4, 4)
    assert obs.pilot_count == 4 * 4 * 4 * 4
    selected = select_group(obs)
    assert selected == GroupIndex(2, 3, 2, 3)
    assert grouping_success(selected, grid, cb, params)


def test_sweep_noise_is_reproducible_and_channel_free(ris_desk, wavelength):
    sys = SystemConfig(P_tx_dl=0.0)
    grid = group_cutoffs(GroupingConfig(G_x=2, G_y=2), ris_desk)
    cb = ue_codebook(sys.M_U, wavelength)
    k0 = 2 * math.pi / wavelength

    a = _los_params(AngularPair(0.1 * k0, 0.2 * k0), cb.direction(1, 1))
    b = _los_params(AngularPair(-0.4 * k0, 0.5 * k0), cb.direction(3, 4))

    y_a = simulate_downlink_sweep(grid, cb, a, sys, ris_desk, np.random.default_rng(5)).y
    y_b = simulate_downlink_sweep(grid, cb, b, sys, ris_desk, np.random.default_rng(5)).y
    assert np.array_equal(y_a, y_b)
    assert np.var(y_a) == pytest.approx(sys.sigma_n2, rel=0.2)


def test_sweep_response_is_shared_across_powers(ris_desk, wavelength):
    grid = group_cutoffs(GroupingConfig(G_x=2, G_y=2), ris_desk)
    k0 = 2 * math.pi / wavelength
    quiet = SystemConfig(sigma_n2=0.0, P_tx_dl=4.0)
    cb = ue_codebook(quiet.M_U, wavelength)
    params = _los_params(AngularPair(0.3 * k0, -0.4 * k0), cb.direction(2, 2))

    h = downlink_response(grid, cb, params, quiet, ris_desk)
    assert h.shape == (quiet.N_CP, 2, 2, 4, 4)
    assert np.allclose(
        observe_downlink(h, quiet, np.random.default_rng(0)).y, math.sqrt(4.0 / quiet.N_CP) * h
    )

    noisy = SystemConfig(P_tx_dl=4.0)
    swept = simulate_downlink_sweep(grid, cb, params, noisy, ris_desk, np.random.default_rng(8))
    observed = observe_downlink(h, noisy, np.random.default_rng(8))
    assert np.allclose(swept.y, observed.y)

    with pytest.raises(StructuralError):
        observe_downlink(h[1:], quiet, np.random.default_rng(0))
