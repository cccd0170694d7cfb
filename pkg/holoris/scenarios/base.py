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

from typing import Any, Callable, ClassVar, Iterable, List, Sequence, Tuple
from pathlib import Path

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.logger import get_logger
from holoris.csv_output import write_csv
from holoris.trials import run_trials
from .experiment import ExperimentConfig, ScenarioName
from .common import SWEEP_HEADER

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["Scenario", "MonteCarloScenario"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


class Scenario:
    """
    Base-class of every experiment.  A subclass names the study it
    reproduces, lists the config knobs it reads and yields the CSV rows; the
    base-class writes them to `<out>/<name>.csv` below the resolved-config
    header.

    Attributes
    ----------
    name: ScenarioName
        Registry key, also the output file stem.

    description: str
        One-line summary shown by `holoris list`.

    figure: str
        Title of the published figure the scenario reproduces.

    knobs: tuple of str
        ExperimentConfig fields the scenario reads.

    header: tuple of str
        CSV column names.
    """

    name: ClassVar[ScenarioName]
    description: ClassVar[str]
    figure: ClassVar[str]
    knobs: ClassVar[Tuple[str, ...]]
    header: ClassVar[Tuple[str, ...]] = SWEEP_HEADER

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg

    @property
    def output_path(self) -> Path:
        return Path(self.cfg.out) / f"{self.name.value}.csv"

    def rows(self) -> Iterable[Sequence[Any]]:
        raise NotImplementedError()

    def run(self) -> Path:
        log = get_logger()
        log.info(f"{self.name.value}: starting, seed={self.cfg.seed}")
        path = write_csv(self.output_path, self.header, self.rows(), self.cfg.header())
        log.info(f"{self.name.value}: wrote {path}")
        return path


class MonteCarloScenario(Scenario):
    """
    Scenario whose rows reduce `cfg.trials` independent trials.  Subclasses
    set `trial_func` to a module-level function (so it can be shipped to
    worker processes) and implement `context` and `reduce`.
    """

    trial_func: ClassVar[Callable]

    def context(self) -> Any:
        raise NotImplementedError()

    def reduce(self, results: List[Any]) -> Iterable[Sequence[Any]]:
        raise NotImplementedError()

    def rows(self) -> Iterable[Sequence[Any]]:
        results = run_trials(
            type(self).trial_func,
            self.context(),
            self.cfg.seed,
            self.cfg.trials,
            self.cfg.workers,
        )
        return self.reduce(results)
