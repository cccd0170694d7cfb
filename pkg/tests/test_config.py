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

import pytest
from pydantic import ValidationError

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError
from holoris.config import SystemConfig, dbm_to_watt, db_to_linear, read_config_file
from holoris.beampattern import SurfaceKind
from holoris.ce_uplink import DscScheme
from holoris.scenarios import ExperimentConfig, ScenarioName, load_experiment

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def test_unit_conversions():
    assert dbm_to_watt(30.0) == pytest.approx(1.0)
    assert dbm_to_watt(-87.0) == pytest.approx(10 ** (-11.7))
    assert db_to_linear(30.0) == pytest.approx(1000.0)
    assert db_to_linear(math.inf) == math.inf


def test_system_numerology():
    with pytest.raises(ValidationError):
        SystemConfig(N_CP=24, K=64)
    with pytest.raises(ValidationError):
        SystemConfig(colour="blue")

    sys = SystemConfig()
    assert sys.wavelength == pytest.approx(299_792_458.0 / 150e9)
    assert (sys.ue_geometry.N_x, sys.ue_geometry.N_y) == (4, 4)
    assert sys.bs_geometry.d == pytest.approx(sys.wavelength / 2)


def test_read_config_file(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("# comment\n\nscenario = Ase   # trailing\nseed=3\n", encoding="utf-8")
    assert read_config_file(path) == {"scenario": "Ase", "seed": "3"}


@pytest.mark.parametrize(
    "text",
    ["seed = 1\nseed = 2\n", "seed 1\n", "seed =\n", "= 4\n"],
)
def test_read_config_file_errors(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigurationError):
        read_config_file(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigurationError):
        read_config_file(tmp_path / "absent.cfg")


def test_load_from_payload(payloads):
    cfg = load_experiment(payloads / "quantization_small.cfg")
    assert cfg.scenario is ScenarioName.Quantization
    assert cfg.seed == 17 and cfg.trials == 4
    assert cfg.K_f_db == math.inf
    assert cfg.bits_sweep == (1, 2, None)
    assert cfg.ris_kind is SurfaceKind.DPA

    tuned = load_experiment(payloads / "quantization_small.cfg", seed=99, trials=None)
    assert tuned.seed == 99
    assert tuned.trials == 4


def test_unknown_key_names_the_key(payloads):
    with pytest.raises(ConfigurationError, match="colour"):
        load_experiment(payloads / "unknown_key.cfg")


def test_ue_counts_must_divide_the_prefix(payloads):
    with pytest.raises(ConfigurationError, match="N_UE=3"):
        load_experiment(payloads / "bad_numerology.cfg")


def test_list_values_and_enums():
    cfg = load_experiment(
        scenario="DownlinkFailure",
        ptx_dl_sweep="0, 20,40",
        surfaces_sweep="0.25,cms",
        groups_sweep="2",
        dsc="uniform",
        M_U="2, 8",
        quant_bits="inf",
    )
    assert cfg.ptx_dl_sweep == (0.0, 20.0, 40.0)
    assert cfg.surfaces_sweep == ("0.25", "cms")
    assert cfg.groups_sweep == (2,)
    assert cfg.dsc is DscScheme.UNIFORM
    assert cfg.M_U == (2, 8)
    assert cfg.quantizer() is None
    assert cfg.quantizer(3).bits == 3


@pytest.mark.parametrize(
    "overrides",
    [
        {"surfaces_sweep": "0.5,glass"},
        {"surfaces_sweep": "0.75"},
        {"spacing_sweep": "0.5,0"},
        {"ris_spacing": 0.6},
        {"sbf_quad_points": 32},
        {"seed": -1},
        {"trials": 0},
    ],
)
def test_rejected_values(overrides):
    with pytest.raises(ConfigurationError):
        load_experiment(scenario="Ase", **overrides)


def test_derived_objects():
    cfg = ExperimentConfig(scenario=ScenarioName.Ase, ptx_dl_dbm=40.0, G_x=2, G_y=8)
    sys = cfg.system(ptx_ul_dbm=30.0)
    assert sys.P_tx_dl == pytest.approx(10.0)
    assert sys.P_tx_ul == pytest.approx(1.0)
    assert sys.sigma_n2 == pytest.approx(dbm_to_watt(-87.0))

    assert (cfg.grouping().G_x, cfg.grouping().G_y) == (2, 8)
    assert (cfg.grouping(4).G_x, cfg.grouping(4).G_y) == (4, 4)
    assert cfg.omp_config().max_iters == 20


def test_header_leaves_out_runtime_knobs(tmp_path):
    a = ExperimentConfig(scenario=ScenarioName.Ase, out=tmp_path / "a", workers=1)
    b = ExperimentConfig(scenario=ScenarioName.Ase, out=tmp_path / "b", workers=4)
    assert a.header() == b.header()
    assert "out" not in a.header() and "workers" not in a.header()
    assert a.header()["scenario"] == "Ase"
    assert a.header()["seed"] == 0
