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

from pathlib import Path

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
import pytest

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.config import SystemConfig
from holoris.beampattern import SurfaceGeometry

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

PAYLOADS = Path(__file__).parent / "payloads"


@pytest.fixture()
def payloads() -> Path:
    return PAYLOADS


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260101)


@pytest.fixture()
def sys_cfg() -> SystemConfig:
    """system with the default numerology, noiseless unless a test says so"""
    return SystemConfig()


@pytest.fixture()
def wavelength(sys_cfg) -> float:
    return sys_cfg.wavelength


@pytest.fixture()
def ris_desk(wavelength) -> SurfaceGeometry:
    """16 lambda square RIS at half-wavelength spacing, 32 x 32 elements"""
    return SurfaceGeometry.dpa(16 * wavelength, 16 * wavelength, wavelength / 2, wavelength)
