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
CSV output.  Every file starts with `# key=value` comment lines carrying the
package version and the resolved configuration, followed by a header row.
Floats are written with 17 significant digits, lines end with a bare LF.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Any, Iterable, Mapping, Sequence
from pathlib import Path
import csv

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

import holoris

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["package_version", "format_value", "write_csv", "write_taps_csv", "write_matrix_csv"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def package_version() -> str:
    return holoris.__version__


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(v) for v in value)
    if value is None:
        return "inf"
    return str(value)


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    meta: Mapping[str, Any] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", encoding="utf-8", newline="") as ofile:
        ofile.write(f"# holoris={package_version()}\n")
        for key, value in (meta or {}).items():
            ofile.write(f"# {key}={format_value(value)}\n")

        writer = csv.writer(ofile, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])

    return path


def write_taps_csv(path: Path, taps: np.ndarray, meta: Mapping[str, Any] = None) -> Path:
    """channel realization dump, one `tap_index,re,im` row per tap"""
    rows = ((d, float(t.real), float(t.imag)) for d, t in enumerate(np.asarray(taps)))
    return write_csv(path, ("tap_index", "re", "im"), rows, meta)


def write_matrix_csv(path: Path, name: str, matrix: np.ndarray) -> Path:
    """complex matrix as `row,col,re,im` triplets with its shape in the header"""
    matrix = np.atleast_2d(matrix)
    rows = (
        (i, j, float(matrix[i, j].real), float(matrix[i, j].imag))
        for i in range(matrix.shape[0])
        for j in range(matrix.shape[1])
    )
    meta = {"matrix": name, "shape": tuple(matrix.shape)}
    return write_csv(path, ("row", "col", "re", "im"), rows, meta)
