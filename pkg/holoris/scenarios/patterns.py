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
Beam-pattern scenarios: pattern grids of the NBS and SBF designs and the
convergence of dense arrays to the continuous metasurface.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Iterator, Tuple

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.beampattern import (
    AngularPair,
    BROADSIDE,
    SurfaceGeometry,
    beam_pattern_grid,
    nbs_coefficients,
    nbs_pattern_closed_form,
    sbf_coefficients,
    sbf_pattern,
    cms_nbs_pattern,
    cms_sbf_pattern,
    quantize_phases,
)
from .experiment import ExperimentConfig, ScenarioName
from .common import ris_geometry
from .base import Scenario

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["BeamPatternNBS", "BeamPatternSBF", "CmsConvergence", "PATTERN_HEADER"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

PATTERN_HEADER = ("psi_azi_norm", "psi_ele_norm", "magnitude", "phase")


def _normalized_axis(cfg: ExperimentConfig) -> np.ndarray:
    return np.linspace(-1.0, 1.0, cfg.pattern_points)


def _pattern_rows(axis: np.ndarray, g: np.ndarray) -> Iterator[Tuple]:
    mag = np.abs(g)
    phase = np.angle(g)
    for i, azi in enumerate(axis):
        for j, ele in enumerate(axis):
            yield azi, ele, mag[i, j], phase[i, j]


def _band(cfg: ExperimentConfig, wavelength: float) -> Tuple[AngularPair, AngularPair]:
    return (
        AngularPair.from_normalized(*cfg.band_min, wavelength),
        AngularPair.from_normalized(*cfg.band_max, wavelength),
    )


class BeamPatternNBS(Scenario):
    name = ScenarioName.BeamPatternNBS
    figure = "example NBS beam pattern, 64 x 64 elements at d = lambda/2"
    description = "NBS beam pattern over the visible region, steered to psi_opt"
    knobs = ("ris_kind", "ris_aperture", "ris_spacing", "psi_opt", "pattern_points", "quant_bits")
    header = PATTERN_HEADER

    def rows(self):
        cfg = self.cfg
        geom = ris_geometry(cfg)
        wavelength = geom.wavelength
        axis = _normalized_axis(cfg)
        k = axis * 2 * np.pi / wavelength
        psi_opt = AngularPair.from_normalized(*cfg.psi_opt, wavelength)

        if geom.is_dpa:
            phi = nbs_coefficients(geom, psi_opt, BROADSIDE)
            if (quantizer := cfg.quantizer()) is not None:
                phi = quantize_phases(phi, quantizer)
            g = beam_pattern_grid(phi, geom, k, k, BROADSIDE)
        else:
            psi = AngularPair(k[:, None], k[None, :])
            g = cms_nbs_pattern(geom.A_x, geom.A_y, psi, BROADSIDE, psi_opt)

        return _pattern_rows(axis, g)


class BeamPatternSBF(Scenario):
    name = ScenarioName.BeamPatternSBF
    figure = "example SBF beam pattern, 64 x 64 elements at d = lambda/2"
    description = "SBF beam pattern over the visible region for the band_min..band_max rectangle"
    knobs = (
        "ris_kind",
        "ris_aperture",
        "ris_spacing",
        "band_min",
        "band_max",
        "pattern_points",
        "sbf_quad_points",
        "quant_bits",
    )
    header = PATTERN_HEADER

    def rows(self):
        cfg = self.cfg
        geom = ris_geometry(cfg)
        wavelength = geom.wavelength
        axis = _normalized_axis(cfg)
        k = axis * 2 * np.pi / wavelength
        lo, hi = _band(cfg, wavelength)

        if geom.is_dpa:
            phi = sbf_coefficients(geom, lo, hi, BROADSIDE)
            if (quantizer := cfg.quantizer()) is not None:
                phi = quantize_phases(phi, quantizer)
            g = beam_pattern_grid(phi, geom, k, k, BROADSIDE)
        else:
            psi = AngularPair(k[:, None], k[None, :])
            g = cms_sbf_pattern(
                geom.A_x, geom.A_y, psi, BROADSIDE, lo, hi, cfg.sbf_quad_points
            )

        return _pattern_rows(axis, g)


def _peak_normalized(g: np.ndarray) -> np.ndarray:
    mag = np.abs(g)
    return mag / mag.max()


def convergence_gap(
    cfg: ExperimentConfig, geom: SurfaceGeometry
) -> Tuple[float, float]:
    """
    Largest difference between the peak-normalized magnitudes of the array
    and the continuous patterns along an azimuth cut, for the NBS and the
    SBF designs.  The NBS cut passes through psi_opt, the SBF cut through
    the band centre.
    """
    wavelength = geom.wavelength
    k = _normalized_axis(cfg) * 2 * np.pi / wavelength
    psi_opt = AngularPair.from_normalized(*cfg.psi_opt, wavelength)
    lo, hi = _band(cfg, wavelength)

    nbs_cut = AngularPair(k, np.full_like(k, psi_opt.psi_ele))
    dpa = nbs_pattern_closed_form(geom, nbs_cut, BROADSIDE, psi_opt)
    cms = cms_nbs_pattern(geom.A_x, geom.A_y, nbs_cut, BROADSIDE, psi_opt)
    nbs_gap = np.max(np.abs(_peak_normalized(dpa) - _peak_normalized(cms)))

    sbf_cut = AngularPair(k, np.full_like(k, (lo.psi_ele + hi.psi_ele) / 2))
    dpa = sbf_pattern(geom, sbf_cut, BROADSIDE, lo, hi)
    cms = cms_sbf_pattern(geom.A_x, geom.A_y, sbf_cut, BROADSIDE, lo, hi, cfg.sbf_quad_points)
    sbf_gap = np.max(np.abs(_peak_normalized(dpa) - _peak_normalized(cms)))

    return float(nbs_gap), float(sbf_gap)


class CmsConvergence(Scenario):
    name = ScenarioName.CmsConvergence
    figure = "normalized NBS and SBF beam patterns for shrinking element spacing"
    description = "array-to-continuous pattern gap as the element spacing shrinks"
    knobs = ("ris_aperture", "spacing_sweep", "psi_opt", "band_min", "band_max", "pattern_points")

    def rows(self):
        for spacing in self.cfg.spacing_sweep:
            nbs_gap, sbf_gap = convergence_gap(self.cfg, ris_geometry(self.cfg, spacing))
            yield "nbs", spacing, nbs_gap, 0.0, 1
            yield "sbf", spacing, sbf_gap, 0.0, 1
