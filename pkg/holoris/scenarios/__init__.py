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

from typing import Dict, Type
from pathlib import Path

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from .experiment import ExperimentConfig, ScenarioName, load_experiment
from .base import Scenario, MonteCarloScenario
from .patterns import BeamPatternNBS, BeamPatternSBF, CmsConvergence
from .downlink import DownlinkFailure
from .overhead import OverheadTradeoff
from .uplink import UplinkNmseVsPilots, UplinkNmseVsUes, UplinkNmseVsPower
from .spectral import Ase, Quantization

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "ExperimentConfig",
    "ScenarioName",
    "Scenario",
    "MonteCarloScenario",
    "load_experiment",
    "scenario_by_name",
    "run_scenario",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

scenario_by_name: Dict[ScenarioName, Type[Scenario]] = {
    cls.name: cls
    for cls in (
        BeamPatternNBS,
        BeamPatternSBF,
        CmsConvergence,
        DownlinkFailure,
        OverheadTradeoff,
        UplinkNmseVsPilots,
        UplinkNmseVsUes,
        UplinkNmseVsPower,
        Ase,
        Quantization,
    )
}


def run_scenario(cfg: ExperimentConfig) -> Path:
    """
    Run the scenario named by `cfg.scenario` and return the path of the CSV
    it wrote.
    """
    return scenario_by_name[cfg.scenario](cfg).run()
