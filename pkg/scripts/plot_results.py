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
Plot the CSV files written by `holoris`.  Needs the `plot` extra:

    pip install holoris[plot]
    python scripts/plot_results.py results/*.csv --out figures
"""

from collections import defaultdict
from pathlib import Path
import csv

import click
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

LOG_SCALE_SERIES = (
    "omp",
    "open_loop",
    "ls",
    "block",
    "uniform",
    "random",
    "T_DL",
    "T_UL",
    "T_total",
)


def read_rows(path: Path):
    with path.open(encoding="utf-8") as ifile:
        lines = [line for line in ifile if not line.startswith("#")]
    return list(csv.DictReader(lines))


def _x_value(text: str) -> float:
    return np.inf if text == "inf" else float(text)


def plot_pattern(rows, ax):
    azi = np.array([float(r["psi_azi_norm"]) for r in rows])
    ele = np.array([float(r["psi_ele_norm"]) for r in rows])
    mag = np.array([float(r["magnitude"]) for r in rows])
    n = int(round(np.sqrt(mag.size)))
    image = ax.imshow(
        mag.reshape(n, n).T,
        origin="lower",
        extent=(azi.min(), azi.max(), ele.min(), ele.max()),
        aspect="equal",
    )
    ax.set_xlabel("azimuth (normalized)")
    ax.set_ylabel("elevation (normalized)")
    plt.colorbar(image, ax=ax, label="|g|")


def plot_downlink(rows, ax):
    curves = defaultdict(list)
    for r in rows:
        curves[(r["surface"], r["groups"])].append((float(r["ptx_dbm"]), float(r["failure_prob"])))
    for (surface, groups), points in curves.items():
        x, y = zip(*sorted(points))
        ax.semilogy(x, np.maximum(y, 1e-4), marker="o", label=f"{surface}, G={groups}")
    ax.set_xlabel("BS transmit power (dBm)")
    ax.set_ylabel("grouping failure probability")
    ax.legend(fontsize="small")


def plot_sweep(rows, ax):
    curves = defaultdict(list)
    for r in rows:
        curves[r["series"]].append(
            (_x_value(r["x_value"]), float(r["metric"]), float(r["ci_halfwidth"]))
        )
    for series, points in curves.items():
        x, y, ci = map(np.array, zip(*sorted(points)))
        finite = np.isfinite(x)
        ax.errorbar(x[finite], y[finite], yerr=ci[finite], marker="o", capsize=3, label=series)
    if any(series in LOG_SCALE_SERIES for series in curves):
        ax.set_yscale("log")
    ax.set_xlabel("x_value")
    ax.set_ylabel("metric")
    ax.legend(fontsize="small")


@click.command()
@click.argument("csv_files", nargs=-1, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", default="figures", type=click.Path(file_okay=False, path_type=Path))
def main(csv_files, out: Path):
    """render one PNG per scenario CSV"""
    out.mkdir(parents=True, exist_ok=True)
    for path in csv_files:
        rows = read_rows(path)
        if not rows:
            continue

        fig, ax = plt.subplots(figsize=(6, 4.5))
        ax.set_title(path.stem)
        if "magnitude" in rows[0]:
            plot_pattern(rows, ax)
        elif "failure_prob" in rows[0]:
            plot_downlink(rows, ax)
        else:
            plot_sweep(rows, ax)

        fig.tight_layout()
        fig.savefig(out / f"{path.stem}.png", dpi=150)
        plt.close(fig)
        click.echo(out / f"{path.stem}.png")


if __name__ == "__main__":
    main()
