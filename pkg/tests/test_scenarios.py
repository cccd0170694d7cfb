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

import csv
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
import pytest

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError
from holoris.scenarios import ScenarioName, load_experiment, run_scenario, scenario_by_name
from holoris.scenarios.common import (
    SWEEP_HEADER,
    build_deployment,
    draw_group_ues,
    draw_ue,
    misgrouped_fraction,
    ris_geometry,
)
from holoris.scenarios.downlink import DOWNLINK_HEADER
from holoris.scenarios.patterns import convergence_gap

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

# small deployment shared by the Monte-Carlo smoke runs
SMALL = dict(
    trials=2,
    ris_aperture=4,
    gain_quad_points=16,
    G_x=2,
    G_y=2,
    N_P=8,
    N_UE=2,
    N_max=8,
    n_p_sweep="8,16",
    n_ue_sweep="1,2",
    ptx_ul_sweep="10,30",
    ptx_dl_sweep="0,40",
    groups_sweep="2",
    surfaces_sweep="0.5,cms",
)


def read_result(path):
    with path.open(encoding="utf-8") as ifile:
        meta = []
        lines = []
        for line in ifile:
            (meta if line.startswith("#") else lines).append(line)
    rows = list(csv.reader(lines))
    return meta, rows[0], rows[1:]


def _run(tmp_path, name, **overrides):
    values = {**SMALL, **overrides}
    cfg = load_experiment(scenario=name, out=tmp_path, **values)
    return read_result(run_scenario(cfg))


def test_registry_covers_every_scenario():
    assert set(scenario_by_name) == set(ScenarioName)
    for name, cls in scenario_by_name.items():
        assert cls.name is name
        assert cls.description and cls.figure and cls.knobs


def test_cms_convergence_gap_shrinks(tmp_path):
    cfg = load_experiment(scenario="CmsConvergence", out=tmp_path)
    gaps = [convergence_gap(cfg, ris_geometry(cfg, s))[0] for s in cfg.spacing_sweep]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[cfg.spacing_sweep.index(0.125)] <= 0.05

    meta, header, rows = read_result(run_scenario(cfg))
    assert tuple(header) == SWEEP_HEADER
    assert len(rows) == 2 * len(cfg.spacing_sweep)
    assert any(line.startswith("# spacing_sweep=") for line in meta)


def test_sbf_pattern_scenario(tmp_path):
    _, header, rows = _run(tmp_path, "BeamPatternSBF", ris_aperture=16, pattern_points=64)
    assert header == ["psi_azi_norm", "psi_ele_norm", "magnitude", "phase"]
    assert len(rows) == 64 * 64

    mag = {(float(r[0]), float(r[1])): float(r[2]) for r in rows}
    inside = [m for (a, e), m in mag.items() if -0.1 < a < 0.1 and 0.3 < e < 0.5]
    far = [m for (a, e), m in mag.items() if a > 0.6 and e < -0.4]
    assert min(inside) > 5 * max(far)


def test_cms_pattern_scenario(tmp_path):
    _, _, rows = _run(
        tmp_path, "BeamPatternNBS", ris_kind="CMS", ris_aperture=16, pattern_points=81
    )
    best = max(rows, key=lambda r: float(r[2]))
    assert float(best[2]) == pytest.approx(1.0, abs=1e-6)
    assert float(best[0]) == pytest.approx(0.6, abs=1e-9)
    assert float(best[1]) == pytest.approx(-0.2, abs=1e-9)


def test_overhead_tradeoff(tmp_path, payloads):
    cfg = load_experiment(payloads / "overhead.cfg", out=tmp_path)
    _, header, rows = read_result(run_scenario(cfg))
    assert tuple(header) == SWEEP_HEADER

    t_dl = {int(r[1]): float(r[2]) for r in rows if r[0] == "T_DL"}
    assert t_dl[4] == pytest.approx(2 * 16 * 2e-9 * 16 * 16)
    assert t_dl[8] == pytest.approx(4 * t_dl[4])

    mults = {int(r[1]): int(r[2]) for r in rows if r[0] == "uplink_mult_count"}
    assert mults[1] > mults[2] > mults[32]


def test_downlink_failure(tmp_path):
    _, header, rows = _run(tmp_path, "DownlinkFailure")
    assert tuple(header) == DOWNLINK_HEADER
    assert {(r[0], r[2]) for r in rows} == {
        ("0", "0.5"),
        ("40", "0.5"),
        ("0", "cms"),
        ("40", "cms"),
    }
    for row in rows:
        assert 0.0 <= float(row[3]) <= 1.0
        assert row[4] == "2"


def test_uplink_nmse_vs_pilots(tmp_path):
    _, _, rows = _run(tmp_path, "UplinkNmseVsPilots")
    assert {(r[0], r[1]) for r in rows} == {("misgrouped", "50")} | {
        (scheme, n_p) for scheme in ("block", "uniform", "random") for n_p in ("8", "16")
    }
    assert all(math.isfinite(float(r[2])) and float(r[2]) >= 0 for r in rows)


def test_uplink_nmse_vs_ues(tmp_path):
    _, _, rows = _run(tmp_path, "UplinkNmseVsUes", dsc="uniform")
    assert {(r[0], r[1]) for r in rows} == {
        ("misgrouped", "50"),
        ("uniform", "1"),
        ("uniform", "2"),
    }


def test_uplink_nmse_vs_power(tmp_path):
    _, _, rows = _run(tmp_path, "UplinkNmseVsPower")
    series = {r[0] for r in rows}
    assert series == {"misgrouped", "omp", "open_loop", "ls", "omp_hit", "scan_hit"}
    for row in rows:
        if row[0].endswith("_hit") or row[0] == "misgrouped":
            assert 0.0 <= float(row[2]) <= 1.0


def test_ase(tmp_path):
    _, _, rows = _run(tmp_path, "Ase")
    assert {(r[0], r[1]) for r in rows} == {
        (s, p)
        for s in ("perfect_csi", "estimated", "ls", "no_ris", "estimated_0.5", "estimated_cms")
        for p in ("10", "30")
    } | {("misgrouped", "50")}
    assert all(float(r[2]) >= 0 for r in rows)


def test_quantization_never_beats_full_resolution(tmp_path, payloads):
    cfg = load_experiment(payloads / "quantization_small.cfg", out=tmp_path)
    _, _, rows = read_result(run_scenario(cfg))
    rate = {r[1]: float(r[2]) for r in rows}
    assert set(rate) == {"1", "2", "inf"}
    assert rate["1"] <= rate["inf"] * (1 + 1e-12)
    assert rate["2"] <= rate["inf"] * (1 + 1e-12)


def test_quantization_needs_a_discrete_ris(tmp_path, payloads):
    cfg = load_experiment(payloads / "quantization_small.cfg", out=tmp_path, ris_kind="CMS")
    with pytest.raises(ConfigurationError):
        run_scenario(cfg)


def test_monte_carlo_output_ignores_worker_count(tmp_path, payloads):
    serial = load_experiment(payloads / "quantization_small.cfg", out=tmp_path / "serial")
    pooled = load_experiment(
        payloads / "quantization_small.cfg", out=tmp_path / "pooled", workers=2
    )
    assert run_scenario(serial).read_bytes() == run_scenario(pooled).read_bytes()


def test_group_draws_share_the_search_space(tmp_path):
    cfg = load_experiment(scenario="UplinkNmseVsUes", out=tmp_path, **SMALL)
    dep = build_deployment(cfg)
    draws = draw_group_ues(dep, np.random.default_rng(3), 4)
    groups = {(d.group.g_x, d.group.g_y) for d in draws}
    assert len(groups) == 1


def test_ue_draws_keep_the_group_their_sweep_selected(tmp_path):
    cfg = load_experiment(scenario="UplinkNmseVsUes", out=tmp_path, **SMALL)
    silent = build_deployment(cfg).with_power(P_tx_dl=0.0)
    draws = [draw_ue(silent, np.random.default_rng(seed)) for seed in range(20)]
    for draw in draws:
        assert draw.misgrouped == (draw.group != draw.reference)
    assert misgrouped_fraction(draws) > 0.5


# -----------------------------------------------------------------------------
# operating regime of the default deployment and its reduced variants
# -----------------------------------------------------------------------------


def _series(rows):
    return {(r[0], r[1]): float(r[2]) for r in rows}


def _run_default(tmp_path, name, **overrides):
    cfg = load_experiment(scenario=name, out=tmp_path, seed=11, **overrides)
    return _series(read_result(run_scenario(cfg))[2])


def test_default_deployment_estimates_below_unit_nmse(tmp_path):
    values = _run_default(tmp_path, "UplinkNmseVsPower", trials=3, ptx_ul_sweep="23")
    assert values[("omp", "23")] < 1.0
    assert values[("omp", "23")] < values[("ls", "23")]
    assert 0.0 <= values[("misgrouped", "50")] <= 1.0


def test_default_deployment_estimated_rate_tracks_perfect_csi(tmp_path):
    values = _run_default(tmp_path, "Ase", trials=4, ptx_ul_sweep="30,50", surfaces_sweep="0.5")
    perfect = values[("perfect_csi", "50")]
    assert values[("estimated", "50")] >= 0.9 * perfect
    assert values[("no_ris", "50")] < perfect


def test_three_bit_phases_come_close_to_full_resolution(tmp_path):
    values = _run_default(tmp_path, "Quantization", trials=4, bits_sweep="3,inf")
    assert values[("perfect_csi", "3")] >= 0.9 * values[("perfect_csi", "inf")]


def test_random_dsc_never_loses_to_uniform(tmp_path):
    values = _run_default(
        tmp_path,
        "UplinkNmseVsPilots",
        trials=12,
        ris_aperture=8,
        G_x=2,
        G_y=2,
        N_UE=4,
        n_p_sweep="16,24,40",
    )
    for n_p in ("16", "24", "40"):
        assert values[("random", n_p)] <= values[("uniform", n_p)]


def test_downlink_failure_falls_with_power_and_group_count(tmp_path):
    cfg = load_experiment(
        scenario="DownlinkFailure",
        out=tmp_path,
        seed=5,
        trials=40,
        ris_aperture=8,
        ptx_dl_sweep="0,20,40",
        groups_sweep="2,4",
        surfaces_sweep="0.5,cms",
    )
    _, _, rows = read_result(run_scenario(cfg))
    failure = {(r[0], r[1], r[2]): float(r[3]) for r in rows}

    for groups in ("2", "4"):
        for surface in ("0.5", "cms"):
            curve = [failure[(p, groups, surface)] for p in ("0", "20", "40")]
            assert all(b <= a + 0.1 for a, b in zip(curve, curve[1:]))

    # narrower groups concentrate the SBF gain of each cell
    assert failure[("20", "4", "0.5")] < failure[("20", "2", "0.5")]
    assert failure[("20", "4", "cms")] <= failure[("20", "4", "0.5")] + 0.05
