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
Value types shared by the beam-pattern routines: physical and spatial
directions, surface geometry, reflection-coefficient maps, the angular
weightings behind the NBS and SBF designs, and the phase quantizer.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import NamedTuple, Optional, Union
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
import math

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.errors import DomainError, StructuralError

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = [
    "PhysicalAngle",
    "AngularPair",
    "BROADSIDE",
    "SurfaceKind",
    "SurfaceGeometry",
    "ReflectionMap",
    "NbsCombs",
    "SbfIndicator",
    "AngularWeighting",
    "QuantizerConfig",
]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

TWO_PI = 2.0 * math.pi

# relative slack used when checking N*d == A and d <= lambda/2
GEOMETRY_RTOL = 1e-12


def _domain_error(exc: ValidationError) -> DomainError:
    errs = "; ".join(err["msg"] for err in exc.errors())
    return DomainError(errs)


class PhysicalAngle(BaseModel):
    """azimuth / elevation pair of a propagation direction, in radians"""

    model_config = ConfigDict(frozen=True)

    theta_azi: float
    theta_ele: float

    @field_validator("theta_azi")
    @classmethod
    def _check_azi(cls, value: float) -> float:
        if not 0.0 <= value < TWO_PI:
            raise ValueError(f"theta_azi={value} outside [0, 2pi)")
        return value

    @field_validator("theta_ele")
    @classmethod
    def _check_ele(cls, value: float) -> float:
        if not 0.0 <= value <= math.pi / 2:
            raise ValueError(f"theta_ele={value} outside [0, pi/2]")
        return value

    @classmethod
    def from_radians(cls, theta_azi: float, theta_ele: float) -> "PhysicalAngle":
        """same as the constructor, but range violations raise DomainError"""
        try:
            return cls(theta_azi=theta_azi, theta_ele=theta_ele)
        except ValidationError as exc:
            raise _domain_error(exc) from exc


class AngularPair(NamedTuple):
    """
    Spatial-frequency pair psi = [psi_azi, psi_ele] in rad/m.  Components are
    floats or numpy arrays of a common (broadcastable) shape, so a single
    AngularPair can carry a whole grid of directions.
    """

    psi_azi: Union[float, np.ndarray]
    psi_ele: Union[float, np.ndarray]

    @classmethod
    def from_normalized(
        cls, azi_norm, ele_norm, wavelength: float
    ) -> "AngularPair":
        """build from (lambda/2pi)*psi values, i.e. direction cosines"""
        scale = TWO_PI / wavelength
        return cls(np.multiply(azi_norm, scale), np.multiply(ele_norm, scale))

    def normalized(self, wavelength: float) -> "AngularPair":
        scale = wavelength / TWO_PI
        return AngularPair(
            np.multiply(self.psi_azi, scale), np.multiply(self.psi_ele, scale)
        )

    def minus(self, other: "AngularPair") -> "AngularPair":
        return AngularPair(
            np.subtract(self.psi_azi, other.psi_azi),
            np.subtract(self.psi_ele, other.psi_ele),
        )


BROADSIDE = AngularPair(0.0, 0.0)


class SurfaceKind(str, Enum):
    DPA = "DPA"
    CMS = "CMS"


class SurfaceGeometry(BaseModel):
    """
    Aperture description of a planar surface.

    For a discrete planar array (DPA) the element count and spacing satisfy
    N_x * d = A_x and N_y * d = A_y, with 0 < d <= lambda/2.  For a continuous
    metasurface (CMS) only the aperture and wavelength are meaningful.

    Use the `dpa`, `dpa_elements` and `cms` constructors; they report
    violations as DomainError.
    """

    model_config = ConfigDict(frozen=True)

    kind: SurfaceKind
    A_x: float = Field(gt=0)
    A_y: float = Field(gt=0)
    wavelength: float = Field(gt=0)
    d: Optional[float] = None
    N_x: Optional[int] = None
    N_y: Optional[int] = None

    @model_validator(mode="after")
    def _check_dpa(self) -> "SurfaceGeometry":
        if self.kind is not SurfaceKind.DPA:
            return self

        if self.d is None or self.N_x is None or self.N_y is None:
            raise ValueError("DPA geometry requires d, N_x and N_y")

        if self.d <= 0 or self.d > self.wavelength / 2 * (1 + GEOMETRY_RTOL):
            raise ValueError(
                f"element spacing d={self.d} outside (0, lambda/2] "
                f"for lambda={self.wavelength}"
            )

        for count, side, axis in ((self.N_x, self.A_x, "x"), (self.N_y, self.A_y, "y")):
            if count < 1:
                raise ValueError(f"N_{axis}={count} must be positive")
            if abs(count * self.d - side) > GEOMETRY_RTOL * side:
                raise ValueError(
                    f"N_{axis}*d={count * self.d} does not match A_{axis}={side}"
                )

        return self

    # -------------------------------------------------------------------------
    # constructors
    # -------------------------------------------------------------------------

    @classmethod
    def dpa(cls, A_x: float, A_y: float, d: float, wavelength: float):
        """element counts derived from the aperture, A / d must be integral"""
        try:
            return cls(
                kind=SurfaceKind.DPA,
                A_x=A_x,
                A_y=A_y,
                d=d,
                N_x=int(round(A_x / d)),
                N_y=int(round(A_y / d)),
                wavelength=wavelength,
            )
        except ValidationError as exc:
            raise _domain_error(exc) from exc

    @classmethod
    def dpa_elements(cls, N_x: int, N_y: int, d: float, wavelength: float):
        """aperture derived from the element counts"""
        try:
            return cls(
                kind=SurfaceKind.DPA,
                A_x=N_x * d,
                A_y=N_y * d,
                d=d,
                N_x=N_x,
                N_y=N_y,
                wavelength=wavelength,
            )
        except ValidationError as exc:
            raise _domain_error(exc) from exc

    @classmethod
    def cms(cls, A_x: float, A_y: float, wavelength: float):
        try:
            return cls(kind=SurfaceKind.CMS, A_x=A_x, A_y=A_y, wavelength=wavelength)
        except ValidationError as exc:
            raise _domain_error(exc) from exc

    @classmethod
    def half_wavelength(cls, N_x: int, N_y: int, wavelength: float):
        """conventional lambda/2 array, used for the BS and UE panels"""
        return cls.dpa_elements(N_x, N_y, wavelength / 2, wavelength)

    # -------------------------------------------------------------------------
    # properties
    # -------------------------------------------------------------------------

    @property
    def is_dpa(self) -> bool:
        return self.kind is SurfaceKind.DPA

    @property
    def num_elements(self) -> int:
        if not self.is_dpa:
            raise DomainError("a continuous metasurface has no element count")
        return self.N_x * self.N_y

    @cached_property
    def x(self) -> np.ndarray:
        """element x coordinates (m-1)*d, m = 1..N_x"""
        return np.arange(self.N_x) * self.d

    @cached_property
    def y(self) -> np.ndarray:
        return np.arange(self.N_y) * self.d


@dataclass(frozen=True)
class ReflectionMap:
    """
    Complex reflection coefficients Phi(m, n) on an N_x by N_y grid.  Every
    element is passive, |Phi| <= 1.  Maps built by the synthesis routines are
    additionally normalized so that max |Phi| = 1.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 2:
            raise StructuralError(
                f"reflection map must be 2-D, got shape {coeffs.shape}"
            )
        if np.any(np.abs(coeffs) > 1.0 + 1e-9):
            raise DomainError("reflection coefficient magnitude exceeds 1")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def normalized(cls, raw: np.ndarray) -> "ReflectionMap":
        """scale raw coefficients so the largest magnitude is exactly one"""
        raw = np.asarray(raw, dtype=complex)
        peak = np.max(np.abs(raw))
        if peak == 0.0 or not np.isfinite(peak):
            raise DomainError(f"cannot normalize coefficients with peak {peak}")
        return cls(raw / peak)

    @property
    def shape(self):
        return self.coeffs.shape


# -----------------------------------------------------------------------------
# angular-domain weightings
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class NbsCombs:
    """Dirac-comb weighting centred on the steering offset (k_opt, l_opt)"""

    k_opt: float
    l_opt: float

    @classmethod
    def toward(cls, psi_opt: AngularPair, psi_in: AngularPair) -> "NbsCombs":
        k, l = psi_opt.minus(psi_in)
        return cls(k_opt=float(k), l_opt=float(l))


@dataclass(frozen=True)
class SbfIndicator:
    """
    Periodic indicator weighting of a spatial bandpass design.  One period
    [a, a + 2pi/d) x [b, b + 2pi/d) contains the pass band
    [k_min, k_max] x [l_min, l_max].
    """

    k_min: float
    k_max: float
    l_min: float
    l_max: float
    a: float
    b: float
    period: float

    def __post_init__(self):
        for lo, hi, anchor, axis in (
            (self.k_min, self.k_max, self.a, "azimuth"),
            (self.l_min, self.l_max, self.b, "elevation"),
        ):
            if lo > hi:
                raise DomainError(f"{axis} cut-offs reversed: {lo} > {hi}")
            if not (anchor < lo and hi < anchor + self.period):
                raise DomainError(
                    f"{axis} band [{lo}, {hi}] does not fit in one spatial "
                    f"period of length {self.period}"
                )

    @classmethod
    def centered(
        cls, k_min: float, k_max: float, l_min: float, l_max: float, d: float
    ) -> "SbfIndicator":
        """anchors chosen so the band sits in the middle of its period"""
        period = TWO_PI / d
        a = k_min - (period - (k_max - k_min)) / 2
        b = l_min - (period - (l_max - l_min)) / 2
        return cls(
            k_min=k_min, k_max=k_max, l_min=l_min, l_max=l_max, a=a, b=b, period=period
        )

    def contains(self, k, l) -> np.ndarray:
        """evaluate the periodic indicator at offsets (k, l)"""
        kr = np.mod(np.subtract(k, self.a), self.period) + self.a
        lr = np.mod(np.subtract(l, self.b), self.period) + self.b
        return (
            (kr >= self.k_min) & (kr <= self.k_max) & (lr >= self.l_min) & (lr <= self.l_max)
        )


AngularWeighting = Union[NbsCombs, SbfIndicator]


# -----------------------------------------------------------------------------
# phase quantizer
# -----------------------------------------------------------------------------


class QuantizerConfig(BaseModel):
    """
    B-bit uniform phase quantizer.  `bits=None` stands for unlimited
    resolution (no quantization).
    """

    model_config = ConfigDict(frozen=True)

    bits: Optional[PositiveInt] = None

    @field_validator("bits", mode="before")
    @classmethod
    def _parse_inf(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("inf", "none"):
            return None
        if isinstance(value, float) and math.isinf(value):
            return None
        return value

    @property
    def unquantized(self) -> bool:
        return self.bits is None

    @property
    def phase_set(self) -> np.ndarray:
        """the 2^B phases 2pi(i - 2^(B-1))/2^B, i = 1..2^B, ascending"""
        if self.bits is None:
            raise DomainError("an unquantized configuration has no phase set")
        levels = 2**self.bits
        i = np.arange(1, levels + 1)
        return TWO_PI * (i - levels // 2) / levels
