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
System-level configuration shared across the package: carrier and OFDM
numerology, array sizes, transmit and noise powers, deployment geometry and
link-budget parameters.  Also hosts the reader for flat `key = value`
configuration files.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Dict, Tuple
from pathlib import Path
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError
from holoris.beampattern import SurfaceGeometry

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "SPEED_OF_LIGHT",
    "SectorGeometry",
    "SystemConfig",
    "PathLossParams",
    "dbm_to_watt",
    "db_to_linear",
    "read_config_file",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

SPEED_OF_LIGHT = 299_792_458.0


def dbm_to_watt(dbm: float) -> float:
    return 10 ** (dbm / 10) / 1000


def db_to_linear(db: float) -> float:
    """dB to linear power ratio; +inf maps to +inf"""
    return math.inf if math.isinf(db) and db > 0 else 10 ** (db / 10)


class SectorGeometry(BaseModel):
    """
    Deployment geometry: UEs lie in a 120 degree sector of radius R in front
    of the RIS, mounted at height h1; UE antennas sit at height h2.  The BS
    faces the RIS at distance R along its normal.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    R: float = Field(20.0, gt=0)
    h1: float = Field(10.0, gt=0)
    h2: float = Field(1.5, ge=0)
    central_angle: float = Field(2 * math.pi / 3, gt=0, le=math.pi)


class SystemConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    f_c: float = Field(150e9, gt=0)
    T_s: float = Field(2e-9, gt=0)
    N_CP: PositiveInt = 16
    K: PositiveInt = 64
    M_B: Tuple[PositiveInt, PositiveInt] = (8, 8)
    M_U: Tuple[PositiveInt, PositiveInt] = (4, 4)
    N_RF: PositiveInt = 4
    P_tx_dl: float = Field(1.0, ge=0)
    P_tx_ul: float = Field(0.2, ge=0)
    sigma_n2: float = Field(dbm_to_watt(-87.0), ge=0)
    geometry: SectorGeometry = SectorGeometry()

    @model_validator(mode="after")
    def _check_numerology(self) -> "SystemConfig":
        if self.K % self.N_CP:
            raise ValueError(f"N_CP={self.N_CP} does not divide K={self.K}")
        return self

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.f_c

    @property
    def bs_geometry(self) -> SurfaceGeometry:
        return SurfaceGeometry.half_wavelength(*self.M_B, self.wavelength)

    @property
    def ue_geometry(self) -> SurfaceGeometry:
        return SurfaceGeometry.half_wavelength(*self.M_U, self.wavelength)


class PathLossParams(BaseModel):
    """constituents of the BS-RIS and RIS-UE coefficient magnitudes"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    G_tx: float = Field(gt=0)
    G_ris: float = Field(gt=0)
    G_rx: float = Field(gt=0)
    S_eff: float = Field(gt=0)
    S_ele: float = Field(gt=0)
    absorption_coeff: float = Field(0.0, ge=0)
    d_ris_ue: float = Field(gt=0)


def read_config_file(path: Path) -> Dict[str, str]:
    """
    Read a flat configuration file.  One `key = value` per line; text after
    `#` is a comment; blank lines are ignored.  Values are returned as
    stripped strings, type conversion is left to the consuming model.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        if key in values:
            raise ConfigurationError(f"{path}:{lineno}: duplicate key '{key}'")

        values[key] = value

    return values
