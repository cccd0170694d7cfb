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

from holoris.errors import DomainError, StructuralError, ResampleExhaustedError
from holoris.config import SystemConfig, PathLossParams
from holoris.beampattern import (
    AngularPair,
    BROADSIDE,
    DpaSurface,
    ReflectionMap,
    SurfaceGeometry,
)
from holoris.channel import (
    Link,
    PulseShape,
    RicianChannelParams,
    UePosition,
    bs_ue_distance,
    channel_coefficients,
    direct_link_gain,
    direct_nlos_channel,
    effective_delay_channel,
    frequency_domain_channel,
    frequency_response,
    interpolate_to_K,
    link_budget,
    molecular_absorption,
    raised_cosine,
    reciprocal_uplink,
    sample_rician,
    ue_los_direction,
)
from holoris.channel.rician import draw_delays

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

PATHLOSS = PathLossParams(
    G_tx=10.0, G_ris=100.0, G_rx=5.0, S_eff=1e-3, S_ele=1e-8, d_ris_ue=1.0
)


def _steering(geom: SurfaceGeometry, psi: AngularPair) -> np.ndarray:
    """flattened exp(-j(x psi_azi + y psi_ele)) in map order"""
    return np.exp(
        -1j * (geom.x[:, None] * psi.psi_azi + geom.y[None, :] * psi.psi_ele)
    ).ravel()


def _random_direction(rng, k0) -> AngularPair:
    return AngularPair(float(rng.uniform(-k0, k0)), float(rng.uniform(-k0, k0)))


def _random_params(rng, sys: SystemConfig, L: int, K_f: float) -> RicianChannelParams:
    k0 = 2 * math.pi / sys.wavelength
    taus = np.sort(rng.uniform(0, (sys.N_CP - 1) * sys.T_s, size=L + 1))
    cn = lambda n: rng.standard_normal(n) + 1j * rng.standard_normal(n)  # noqa: E731
    return RicianChannelParams(
        L=L,
        K_f=K_f,
        mu_los=_random_direction(rng, k0),
        nu_los=_random_direction(rng, k0),
        mu_nlos=tuple(_random_direction(rng, k0) for _ in range(L)),
        nu_nlos=tuple(_random_direction(rng, k0) for _ in range(L)),
        tau_los=float(taus[0]),
        tau_nlos=tuple(float(t) for t in taus[1:]),
        alpha=complex(cn(1)[0]),
        beta_los=complex(cn(1)[0]),
        beta_nlos=tuple(complex(b) for b in cn(L)),
        psi_B=_random_direction(rng, k0),
        psi_R=_random_direction(rng, k0),
    )


def _random_map(rng, shape) -> ReflectionMap:
    return ReflectionMap(
        rng.uniform(0.3, 1.0, size=shape) * np.exp(1j * rng.uniform(0, 2 * math.pi, size=shape))
    )


# -----------------------------------------------------------------------------
# pulse
# -----------------------------------------------------------------------------


def test_raised_cosine_nyquist_zeros():
    shape = PulseShape(rolloff=0.8, T_s=2e-9)
    assert raised_cosine(0.0, shape) == pytest.approx(1.0)
    t = np.arange(1, 6) * shape.T_s
    assert np.allclose(raised_cosine(t, shape), 0.0, atol=1e-12)
    assert np.allclose(raised_cosine(-t, shape), 0.0, atol=1e-12)


def test_raised_cosine_singular_point_is_continuous():
    shape = PulseShape(rolloff=0.8, T_s=1.0)
    t0 = 1 / (2 * 0.8)
    value = raised_cosine(t0, shape)
    assert value == pytest.approx(math.pi / 4 * np.sinc(1 / 1.6))
    assert raised_cosine(t0 + 1e-6, shape) == pytest.approx(value, abs=1e-5)
    assert raised_cosine(t0 - 1e-6, shape) == pytest.approx(value, abs=1e-5)


def test_zero_rolloff_is_a_sinc():
    t = np.linspace(-3, 3, 31)
    assert np.allclose(raised_cosine(t, PulseShape(rolloff=0.0, T_s=1.0)), np.sinc(t))


# -----------------------------------------------------------------------------
# effective channel
# -----------------------------------------------------------------------------


def test_factored_channel_equals_explicit_matrix_product():
    rng = np.random.default_rng(11)
    sys = SystemConfig(M_B=(2, 3), M_U=(2, 2), N_CP=8, K=16)
    shape = PulseShape(rolloff=0.8, T_s=sys.T_s)
    wavelength = sys.wavelength
    ris_geom = SurfaceGeometry.dpa_elements(3, 4, wavelength / 4, wavelength)
    bs_geom, ue_geom = sys.bs_geometry, sys.ue_geometry
    N, M_U, M_B = ris_geom.num_elements, ue_geom.num_elements, bs_geom.num_elements

    for _ in range(50):
        params = _random_params(rng, sys, L=2, K_f=4.0)
        phi = _random_map(rng, (3, 4))
        w = _random_map(rng, sys.M_U)
        f = _random_map(rng, sys.M_B)

        ris = DpaSurface(ris_geom, phi)
        ue = DpaSurface(ue_geom, w)
        G_B = DpaSurface(bs_geom, f).gain(params.psi_B, BROADSIDE)
        taps = effective_delay_channel(params, ris, ue, G_B, shape, sys).taps

        G = params.alpha * np.outer(
            np.conj(_steering(ris_geom, params.psi_R)), _steering(bs_geom, params.psi_B)
        )
        paths = [(params.mu_los, params.nu_los, params.beta_los, params.tau_los)] + [
            (mu, nu, params.nlos_scale * beta, tau)
            for mu, nu, beta, tau in zip(
                params.mu_nlos, params.nu_nlos, params.beta_nlos, params.tau_nlos
            )
        ]

        expected = np.empty(sys.N_CP, dtype=complex)
        for d in range(sys.N_CP):
            H_d = sum(
                beta
                * raised_cosine(d * sys.T_s - tau, shape)
                * np.outer(np.conj(_steering(ue_geom, nu)), _steering(ris_geom, mu))
                for mu, nu, beta, tau in paths
            )
            ris_diag = np.diag(phi.coeffs.ravel())
            value = w.coeffs.ravel().conj() @ H_d @ ris_diag @ G @ f.coeffs.ravel()
            expected[d] = value / (N * M_U * M_B)

        assert np.max(np.abs(taps - expected)) <= 1e-10 * np.max(np.abs(expected))


def test_channel_rejects_mismatched_ue_array(sys_cfg, rng):
    params = _random_params(rng, sys_cfg, L=1, K_f=10.0)
    wavelength = sys_cfg.wavelength
    ris = DpaSurface(
        SurfaceGeometry.half_wavelength(2, 2, wavelength), ReflectionMap(np.ones((2, 2)))
    )
    ue_geom = SurfaceGeometry.half_wavelength(3, 3, wavelength)
    ue = DpaSurface(ue_geom, ReflectionMap(np.ones((3, 3))))
    with pytest.raises(StructuralError):
        effective_delay_channel(params, ris, ue, 1.0, PulseShape(T_s=sys_cfg.T_s), sys_cfg)


def test_subcarrier_index_maps_to_dft_bin(sys_cfg, rng):
    params = _random_params(rng, sys_cfg, L=1, K_f=10.0)
    wavelength = sys_cfg.wavelength
    ris = DpaSurface(
        SurfaceGeometry.half_wavelength(4, 4, wavelength), _random_map(rng, (4, 4))
    )
    ue = DpaSurface(sys_cfg.ue_geometry, _random_map(rng, sys_cfg.M_U))
    ch = effective_delay_channel(params, ris, ue, 0.7, PulseShape(T_s=sys_cfg.T_s), sys_cfg)

    spectrum = frequency_response(ch)
    for k in (1, 2, sys_cfg.N_CP):
        assert frequency_domain_channel(ch, k) == pytest.approx(spectrum[k - 1])
    assert np.sum(np.abs(spectrum) ** 2) == pytest.approx(np.sum(np.abs(ch.taps) ** 2))

    with pytest.raises(DomainError):
        frequency_domain_channel(ch, 0)

    wide = interpolate_to_K(ch.taps, sys_cfg)
    step = sys_cfg.K // sys_cfg.N_CP
    assert np.allclose(
        wide[::step] * math.sqrt(sys_cfg.K), spectrum * math.sqrt(sys_cfg.N_CP)
    )
    with pytest.raises(StructuralError):
        interpolate_to_K(ch.taps[:-1], sys_cfg)


# -----------------------------------------------------------------------------
# path loss and channel draws
# -----------------------------------------------------------------------------


def test_molecular_absorption_factor():
    assert molecular_absorption(150e9, 20.0, 0.0) == 1.0
    assert molecular_absorption(150e9, 20.0, 0.01) == pytest.approx(math.exp(0.2))
    with pytest.raises(DomainError):
        molecular_absorption(150e9, -1.0, 0.01)


def test_channel_coefficient_magnitudes(sys_cfg, rng):
    alpha, beta = channel_coefficients(PATHLOSS, sys_cfg, rng)
    R = sys_cfg.geometry.R
    assert abs(alpha) == pytest.approx(math.sqrt(10.0 * 1e-3 / (4 * math.pi * R**2)))
    assert abs(beta) == pytest.approx(math.sqrt(500.0) * sys_cfg.wavelength / (4 * math.pi))

    lossy = PATHLOSS.model_copy(update={"absorption_coeff": 0.2, "d_ris_ue": 2.0})
    _, beta_lossy = channel_coefficients(lossy, sys_cfg, rng)
    expected = math.sqrt(500.0 / math.exp(0.4)) * sys_cfg.wavelength / (8 * math.pi)
    assert abs(beta_lossy) == pytest.approx(expected)


def test_los_direction_geometry(sys_cfg):
    geo = sys_cfg.geometry
    psi, dist = ue_los_direction(sys_cfg, UePosition(geo.R / 2, 0.0))
    assert psi.psi_azi == pytest.approx(0.0)
    assert dist == pytest.approx(math.hypot(geo.R / 2, geo.h2 - geo.h1))
    k0 = 2 * math.pi / sys_cfg.wavelength
    assert psi.psi_ele == pytest.approx(k0 * (geo.h2 - geo.h1) / dist)

    with pytest.raises(DomainError):
        ue_los_direction(sys_cfg, UePosition(0.0, 5.0))
    with pytest.raises(DomainError):
        ue_los_direction(sys_cfg, UePosition(2 * geo.R, 0.0))


def test_sample_rician_orders_delays(sys_cfg, rng):
    for _ in range(20):
        params = sample_rician(sys_cfg, rng, UePosition(8.0, 3.0), PATHLOSS, L=3)
        assert all(params.tau_los < tau for tau in params.tau_nlos)
        assert 0 <= params.tau_los <= (sys_cfg.N_CP - 1) * sys_cfg.T_s
        assert params.d_ris_ue == pytest.approx(ue_los_direction(sys_cfg, UePosition(8.0, 3.0))[1])
        assert params.nlos_scale == pytest.approx(1 / math.sqrt(3 * 1000.0))

    los_only = sample_rician(sys_cfg, rng, UePosition(8.0, 3.0), PATHLOSS, L=2, K_f=math.inf)
    assert los_only.nlos_scale == 0.0


def test_params_validation(sys_cfg, rng):
    params = _random_params(rng, sys_cfg, L=1, K_f=10.0)
    with pytest.raises(DomainError):
        RicianChannelParams(**{**params.__dict__, "tau_los": params.tau_nlos[0] + 1e-12})
    with pytest.raises(StructuralError):
        RicianChannelParams(**{**params.__dict__, "beta_nlos": ()})
    with pytest.raises(DomainError):
        RicianChannelParams(**{**params.__dict__, "K_f": 0.0})


def test_reciprocal_uplink_keeps_the_channel(sys_cfg, rng):
    params = _random_params(rng, sys_cfg, L=2, K_f=10.0)
    up = reciprocal_uplink(params)
    assert up.link is Link.UPLINK
    assert up.taus.tolist() == params.taus.tolist()
    assert up.mu_nlos == params.mu_nlos
    assert reciprocal_uplink(up).link is Link.DOWNLINK


class _LateLosDelays:
    """LoS delay at the end of the prefix, so no NLoS candidate can follow it"""

    def __init__(self):
        self.los_draws = 0

    def uniform(self, low, high, size=None):
        if size is None:
            self.los_draws += 1
            return high
        return np.full(size, low)


def test_delay_redraw_gives_up():
    rng = _LateLosDelays()
    with pytest.raises(ResampleExhaustedError):
        draw_delays(rng, 2, 1.0)
    assert rng.los_draws == 1


def test_los_delay_is_not_redrawn(rng):
    tau_max = 1.0
    taus = np.array([draw_delays(rng, 3, tau_max) for _ in range(1000)])
    assert np.all(taus[:, :1] < taus[:, 1:])
    # a redrawn LoS delay would be the minimum of four draws, mean tau_max / 5
    assert np.mean(taus[:, 0]) == pytest.approx(tau_max / 2, abs=0.03)


def test_delays_without_nlos_paths(rng):
    taus = draw_delays(rng, 0, 1.0)
    assert taus.shape == (1,)
    assert 0.0 <= taus[0] < 1.0


def test_link_budget_gains(sys_cfg, wavelength):
    ris = SurfaceGeometry.dpa(8 * wavelength, 8 * wavelength, wavelength / 2, wavelength)
    pl = link_budget(sys_cfg, ris, S_ele=1e-8, quad_points=32)
    assert pl.G_ris > pl.G_tx > pl.G_rx > 1.0
    assert pl.S_eff == pytest.approx(ris.num_elements * 1e-8)


def test_rician_factor_sets_the_los_to_nlos_energy_ratio(sys_cfg):
    rng = np.random.default_rng(29)
    los, nlos = 0.0, 0.0
    for _ in range(10_000):
        params = sample_rician(sys_cfg, rng, UePosition(8.0, 3.0), PATHLOSS, L=1, K_f=100.0)
        los += abs(params.beta_los) ** 2
        nlos += (params.nlos_scale * abs(params.beta_nlos[0])) ** 2
    assert los / nlos == pytest.approx(100.0, rel=0.05)


# -----------------------------------------------------------------------------
# link without a RIS
# -----------------------------------------------------------------------------


def test_bs_ue_distance(sys_cfg):
    geo = sys_cfg.geometry
    dist = bs_ue_distance(sys_cfg, UePosition(geo.R - 3.0, 4.0))
    assert dist == pytest.approx(math.sqrt(25.0 + (geo.h1 - geo.h2) ** 2))


def test_direct_link_gain(sys_cfg):
    gamma = direct_link_gain(PATHLOSS, sys_cfg, 5.0)
    assert gamma == pytest.approx(math.sqrt(50.0) * sys_cfg.wavelength / (20 * math.pi))
    assert direct_link_gain(PATHLOSS, sys_cfg, 10.0) == pytest.approx(gamma / 2)
    with pytest.raises(DomainError):
        direct_link_gain(PATHLOSS, sys_cfg, 0.0)


def test_direct_channel_keeps_the_strongest_nlos_path(sys_cfg, rng):
    shape = PulseShape(T_s=sys_cfg.T_s)
    params = _random_params(rng, sys_cfg, L=3, K_f=10.0)
    ch = direct_nlos_channel(params, PATHLOSS, shape, sys_cfg, 5.0)

    best = int(np.argmax(np.abs(params.beta_nlos)))
    t = np.arange(sys_cfg.N_CP) * sys_cfg.T_s
    expected = (
        direct_link_gain(PATHLOSS, sys_cfg, 5.0)
        * params.beta_nlos[best]
        / abs(params.beta_los)
        / math.sqrt(30.0)
        * raised_cosine(t - params.tau_nlos[best], shape)
    )
    assert np.allclose(ch.taps, expected, rtol=1e-12, atol=0)

    los_only = _random_params(rng, sys_cfg, L=2, K_f=math.inf)
    assert not np.any(direct_nlos_channel(los_only, PATHLOSS, shape, sys_cfg, 5.0).taps)
