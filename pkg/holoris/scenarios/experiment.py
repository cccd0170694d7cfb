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
Experiment configuration.  Every knob of every scenario is a flat field of
`ExperimentConfig`, so a config file is a plain list of `key = value` lines.
Angles are given in normalized units (lambda/2pi) psi, apertures and element
spacings in wavelengths, powers in dBm.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Any, Dict, Optional, Tuple
from enum import Enum
from pathlib import Path
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import ConfigurationError
from holoris.config import SystemConfig, SectorGeometry, dbm_to_watt, read_config_file
from holoris.beampattern import SurfaceKind, QuantizerConfig
from holoris.ce_downlink import GroupingConfig
from holoris.ce_uplink import DscScheme
from holoris.sparse_recovery import OmpConfig

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["ScenarioName", "ExperimentConfig", "load_experiment", "CMS_SURFACE"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

# surface label used in `surfaces_sweep` for the continuous metasurface
CMS_SURFACE = "cms"

# knobs that only control where and how fast a run executes; they are kept
# out of the CSV headers so they never change output bytes
RUNTIME_KEYS = frozenset({"out", "workers"})


class ScenarioName(str, Enum):
    BeamPatternNBS = "BeamPatternNBS"
    BeamPatternSBF = "BeamPatternSBF"
    CmsConvergence = "CmsConvergence"
    DownlinkFailure = "DownlinkFailure"
    OverheadTradeoff = "OverheadTradeoff"
    UplinkNmseVsPilots = "UplinkNmseVsPilots"
    UplinkNmseVsUes = "UplinkNmseVsUes"
    UplinkNmseVsPower = "UplinkNmseVsPower"
    Ase = "Ase"
    Quantization = "Quantization"


def _is_inf(value: Any) -> bool:
    return isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "none")


def _split(value: Any):
    if isinstance(value, str):
        return tuple(item.strip() for item in value.split(",") if item.strip())
    return value


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: ScenarioName
    seed: int = Field(0, ge=0, lt=2**64)
    trials: PositiveInt = 50
    workers: PositiveInt = 1
    out: Path = Path("results")

    # system numerology and deployment
    f_c: float = Field(150e9, gt=0)
    T_s: float = Field(2e-9, gt=0)
    N_CP: PositiveInt = 16
    K: PositiveInt = 64
    M_B: Tuple[PositiveInt, PositiveInt] = (16, 16)
    M_U: Tuple[PositiveInt, PositiveInt] = (4, 4)
    N_RF: PositiveInt = 4
    R: float = Field(2.0, gt=0)
    h1: float = Field(1.0, gt=0)
    h2: float = Field(0.15, ge=0)
    noise_dbm: float = -87.0
    ptx_dl_dbm: float = 50.0
    ptx_ul_dbm: float = 23.0
    rolloff: float = Field(0.8, ge=0, le=1)
    T_coh: float = Field(5e-3, gt=0)

    # channel
    L: NonNegativeInt = 1
    K_f_db: float = 30.0
    absorption_coeff: float = Field(0.0, ge=0)

    # RIS
    ris_kind: SurfaceKind = SurfaceKind.DPA
    ris_aperture: float = Field(32.0, gt=0)
    ris_spacing: float = Field(0.5, gt=0, le=0.5)
    S_ele: float = Field(4e-8, gt=0)
    quant_bits: Optional[PositiveInt] = None
    gain_quad_points: PositiveInt = 64
    sbf_quad_points: int = Field(64, ge=64)

    # grouping, pilots and recovery
    G_x: PositiveInt = 4
    G_y: PositiveInt = 4
    N_P: PositiveInt = 40
    N_UE: PositiveInt = 4
    dsc: DscScheme = DscScheme.RANDOM
    N_max: PositiveInt = 20
    residual_tol: float = Field(0.0, ge=0)

    # beam pattern scenarios
    pattern_points: int = Field(256, ge=2)
    psi_opt: Tuple[float, float] = (0.6, -0.2)
    band_min: Tuple[float, float] = (-0.2, 0.2)
    band_max: Tuple[float, float] = (0.2, 0.6)

    # sweeps
    ptx_dl_sweep: Tuple[float, ...] = (10.0, 20.0, 30.0, 40.0, 50.0)
    ptx_ul_sweep: Tuple[float, ...] = (0.0, 10.0, 20.0, 30.0, 40.0)
    n_p_sweep: Tuple[PositiveInt, ...] = (8, 16, 24, 32, 40)
    n_ue_sweep: Tuple[PositiveInt, ...] = (1, 2, 4, 8)
    groups_sweep: Tuple[PositiveInt, ...] = (1, 2, 4, 8, 16, 32)
    surfaces_sweep: Tuple[str, ...] = ("0.5", "0.125", CMS_SURFACE)
    spacing_sweep: Tuple[float, ...] = (0.5, 0.25, 0.125, 0.0625)
    bits_sweep: Tuple[Optional[PositiveInt], ...] = (1, 2, 3, None)

    # -------------------------------------------------------------------------
    # parsing
    # -------------------------------------------------------------------------

    @field_validator(
        "M_B",
        "M_U",
        "psi_opt",
        "band_min",
        "band_max",
        "ptx_dl_sweep",
        "ptx_ul_sweep",
        "n_p_sweep",
        "n_ue_sweep",
        "groups_sweep",
        "surfaces_sweep",
        "spacing_sweep",
        mode="before",
    )
    @classmethod
    def _parse_list(cls, value):
        return _split(value)

    @field_validator("bits_sweep", mode="before")
    @classmethod
    def _parse_bits(cls, value):
        return tuple(None if _is_inf(v) else v for v in _split(value))

    @field_validator("quant_bits", mode="before")
    @classmethod
    def _parse_quant_bits(cls, value):
        return None if _is_inf(value) else value

    @field_validator("K_f_db", mode="before")
    @classmethod
    def _parse_k_factor(cls, value):
        return math.inf if _is_inf(value) else value

    @field_validator("surfaces_sweep")
    @classmethod
    def _check_surfaces(cls, value):
        for label in value:
            if label == CMS_SURFACE:
                continue
            try:
                spacing = float(label)
            except ValueError:
                raise ValueError(
                    f"surface '{label}' is neither '{CMS_SURFACE}' nor a spacing"
                ) from None
            if not 0 < spacing <= 0.5:
                raise ValueError(f"surface spacing {spacing} outside (0, 0.5]")
        return value

    @field_validator("spacing_sweep")
    @classmethod
    def _check_spacings(cls, value):
        if any(not 0 < s <= 0.5 for s in value):
            raise ValueError("every spacing must lie in (0, 0.5] wavelengths")
        return value

    @model_validator(mode="after")
    def _check_numerology(self) -> "ExperimentConfig":
        if self.K % self.N_CP:
            raise ValueError(f"N_CP={self.N_CP} does not divide K={self.K}")
        for n_ue in (self.N_UE, *self.n_ue_sweep):
            if self.N_CP % n_ue:
                raise ValueError(f"N_UE={n_ue} does not divide N_CP={self.N_CP}")
        return self

    # -------------------------------------------------------------------------
    # derived configuration objects
    # -------------------------------------------------------------------------

    @property
    def wavelength(self) -> float:
        return self.system().wavelength

    def system(
        self, ptx_dl_dbm: Optional[float] = None, ptx_ul_dbm: Optional[float] = None
    ) -> SystemConfig:
        return SystemConfig(
            f_c=self.f_c,
            T_s=self.T_s,
            N_CP=self.N_CP,
            K=self.K,
            M_B=self.M_B,
            M_U=self.M_U,
            N_RF=self.N_RF,
            P_tx_dl=dbm_to_watt(self.ptx_dl_dbm if ptx_dl_dbm is None else ptx_dl_dbm),
            P_tx_ul=dbm_to_watt(self.ptx_ul_dbm if ptx_ul_dbm is None else ptx_ul_dbm),
            sigma_n2=dbm_to_watt(self.noise_dbm),
            geometry=SectorGeometry(R=self.R, h1=self.h1, h2=self.h2),
        )

    def grouping(self, groups: Optional[int] = None) -> GroupingConfig:
        if groups is not None:
            return GroupingConfig(G_x=groups, G_y=groups)
        return GroupingConfig(G_x=self.G_x, G_y=self.G_y)

    def omp_config(self) -> OmpConfig:
        return OmpConfig(max_iters=self.N_max, residual_tol=self.residual_tol)

    def quantizer(self, bits: Optional[int] = None) -> Optional[QuantizerConfig]:
        bits = self.quant_bits if bits is None else bits
        return None if bits is None else QuantizerConfig(bits=bits)

    def header(self) -> Dict[str, Any]:
        """resolved configuration echoed into every CSV"""
        values = self.model_dump(mode="json", exclude=set(RUNTIME_KEYS))
        values["scenario"] = self.scenario.value
        return values


def load_experiment(path: Optional[Path] = None, **overrides) -> ExperimentConfig:
    """
    Build an ExperimentConfig from an optional config file with `overrides`
    applied on top; overrides whose value is None are ignored.

    Raises
    ------
    ConfigurationError
        The file cannot be parsed, or a key is unknown or has a bad value.
    """
    values: Dict[str, Any] = read_config_file(path) if path else {}
    values.update({key: val for key, val in overrides.items() if val is not None})

    try:
        return ExperimentConfig(**values)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in exc.errors()
        )
        raise ConfigurationError(f"invalid experiment configuration: {problems}") from exc
