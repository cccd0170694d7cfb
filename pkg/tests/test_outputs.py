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
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np
import pytest

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

import holoris
from holoris.csv_output import format_value, write_csv, write_matrix_csv, write_taps_csv
from holoris.trials import run_trials, substream, trial_rng, trial_seed

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------


def _draw(context, seed):
    return context + float(np.random.default_rng(seed).uniform())


# -----------------------------------------------------------------------------
# CSV output
# -----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "value, text",
    [
        (0.1, "0.10000000000000001"),
        (np.float64(2.5), "2.5"),
        (True, "true"),
        (np.bool_(False), "false"),
        (None, "inf"),
        ((8, 8), "8,8"),
        ([0.5, "cms"], "0.5,cms"),
        (7, "7"),
        ("random", "random"),
    ],
)
def test_format_value(value, text):
    assert format_value(value) == text


def test_write_csv_layout(tmp_path):
    path = write_csv(
        tmp_path / "nested" / "out.csv",
        ("series", "x_value"),
        [("omp", 1.0 / 3.0), ("ls", 2)],
        {"seed": 5, "M_U": [4, 4]},
    )
    raw = path.read_bytes()
    assert b"\r" not in raw

    lines = raw.decode("utf-8").split("\n")
    assert lines[0] == f"# holoris={holoris.__version__}"
    assert lines[1:3] == ["# seed=5", "# M_U=4,4"]
    assert lines[3] == "series,x_value"
    assert lines[4] == "omp,0.33333333333333331"
    assert lines[5] == "ls,2"
    assert lines[6] == ""


def test_channel_dumps(tmp_path):
    taps = np.array([1.0 + 2.0j, 0.25 - 0.5j])
    lines = write_taps_csv(tmp_path / "taps.csv", taps, {"ue": 1}).read_text().splitlines()
    assert lines[1] == "# ue=1"
    assert lines[2:] == ["tap_index,re,im", "0,1,2", "1,0.25,-0.5"]

    matrix = np.arange(6).reshape(2, 3) * (1 + 1j)
    lines = write_matrix_csv(tmp_path / "H.csv", "H", matrix).read_text().splitlines()
    assert lines[1:3] == ["# matrix=H", "# shape=2,3"]
    assert lines[3] == "row,col,re,im"
    assert lines[-1] == "1,2,5,5"
    assert len(lines) == 4 + 6


# -----------------------------------------------------------------------------
# trial streams
# -----------------------------------------------------------------------------


def test_trial_streams_are_reproducible_and_distinct():
    a = trial_rng(42, 3).uniform(size=4)
    assert np.array_equal(a, trial_rng(42, 3).uniform(size=4))
    assert not np.array_equal(a, trial_rng(42, 4).uniform(size=4))
    assert not np.array_equal(a, trial_rng(43, 3).uniform(size=4))


def test_substreams_depend_only_on_their_keys():
    seed = trial_seed(7, 0)
    first = substream(seed, 1, 2).uniform(size=3)
    substream(seed, 0).uniform(size=100)
    assert np.array_equal(first, substream(seed, 1, 2).uniform(size=3))
    assert not np.array_equal(first, substream(seed, 1, 3).uniform(size=3))
    assert not np.array_equal(first, substream(trial_seed(7, 1), 1, 2).uniform(size=3))


def test_run_trials_keeps_trial_order():
    results = run_trials(_draw, 10.0, master_seed=3, n_trials=5)
    assert len(results) == 5
    assert results == [
        10.0 + float(np.random.default_rng(trial_seed(3, t)).uniform()) for t in range(5)
    ]
    assert results == run_trials(_draw, 10.0, master_seed=3, n_trials=5)
