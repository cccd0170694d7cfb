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
Command line interface:

    holoris list
    holoris scenario NAME [--config PATH] [--seed N] [--trials N] [--out DIR]
    holoris run --config PATH [--seed N] [--trials N] [--out DIR]

Option values override the config file.  Configuration problems exit with
status 2 and a message, numerical failures with status 1 and a traceback.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Optional
from pathlib import Path
import sys
import traceback

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import click

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError, HolorisError
from holoris.logger import setup_logging
from holoris.scenarios import (
    ExperimentConfig,
    ScenarioName,
    load_experiment,
    run_scenario,
    scenario_by_name,
)

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["cli"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

EXIT_NUMERIC = 1
EXIT_CONFIG = 2


def _execute(cfg: ExperimentConfig):
    try:
        path = run_scenario(cfg)
    except ConfigurationError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except HolorisError:
        click.echo(traceback.format_exc(), err=True)
        sys.exit(EXIT_NUMERIC)

    click.echo(str(path))


def _load(config: Optional[Path], **overrides) -> ExperimentConfig:
    try:
        return load_experiment(config, **overrides)
    except ConfigurationError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


def run_options(func):
    """options shared by `scenario` and `run`"""
    options = (
        click.option("--seed", type=int, help="master seed of the trial streams"),
        click.option("--trials", type=int, help="Monte-Carlo trials per sweep point"),
        click.option(
            "--out",
            type=click.Path(file_okay=False, path_type=Path),
            help="output directory",
        ),
        click.option("--workers", type=int, help="worker processes for the trials"),
    )
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.option(
    "--log-level",
    default="WARNING",
    show_default=True,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
)
def cli(log_level: str):
    """holographic RIS beam patterns and closed-loop channel estimation"""
    setup_logging(log_level)


@cli.command(name="list")
def list_scenarios():
    """list the scenarios, the figure each reproduces and the knobs it reads"""
    for name, cls in scenario_by_name.items():
        click.echo(f"{name.value}: {cls.description}")
        click.echo(f"    figure: {cls.figure}")
        click.echo(f"    knobs: {', '.join(cls.knobs)}")


@cli.command()
@click.argument("name", type=click.Choice([name.value for name in ScenarioName]))
@click.option("--config", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@run_options
def scenario(name: str, config: Optional[Path], **overrides):
    """run scenario NAME, optionally tuned by a config file"""
    _execute(_load(config, **overrides, scenario=name))


@cli.command()
@click.option(
    "--config",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@run_options
def run(config: Path, **overrides):
    """run the scenario named inside a config file"""
    _execute(_load(config, **overrides))
