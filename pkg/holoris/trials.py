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
Monte-Carlo trial dispatch.  Trial t always receives the seed sequence
SeedSequence(master_seed, spawn_key=(t,)), so results depend only on the
master seed and never on how trials are spread over workers.
"""

# -----------------------------------------------------------------------------
# System Imports
# -----------------------------------------------------------------------------

from typing import Any, Callable, List, TypeVar
from concurrent.futures import ProcessPoolExecutor
import asyncio

# -----------------------------------------------------------------------------
# Public Imports
# -----------------------------------------------------------------------------

import numpy as np

# -----------------------------------------------------------------------------
# Private Imports
# -----------------------------------------------------------------------------

from holoris.logger import get_logger

# -----------------------------------------------------------------------------
# Exports
# -----------------------------------------------------------------------------

__all__ = ["trial_seed", "trial_rng", "substream", "run_trials"]

# -----------------------------------------------------------------------------
#
#                                 CODE BEGINS
#
# -----------------------------------------------------------------------------

T = TypeVar("T")

# callable(context, seed_sequence) -> trial result; must be picklable
TrialFunc = Callable[[Any, np.random.SeedSequence], T]


def trial_seed(master_seed: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master_seed, spawn_key=(trial,))


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(trial_seed(master_seed, trial))


def substream(seed: np.random.SeedSequence, *keys: int) -> np.random.Generator:
    """
    Independent generator for one sub-experiment of a trial, e.g. one sweep
    point.  Depends only on the trial seed and `keys`.
    """
    child = np.random.SeedSequence(seed.entropy, spawn_key=(*seed.spawn_key, *keys))
    return np.random.default_rng(child)


async def _run_pool(func: TrialFunc, context: Any, seeds, workers: int) -> List[T]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        tasks = [loop.run_in_executor(pool, func, context, seed) for seed in seeds]
        return list(await asyncio.gather(*tasks))


def run_trials(
    func: TrialFunc,
    context: Any,
    master_seed: int,
    n_trials: int,
    workers: int = 1,
) -> List[T]:
    """
    Run `func(context, seed)` for trials 0..n_trials-1 and return the results
    in trial order.  With more than one worker the trials go to a process
    pool through asyncio; otherwise they run inline.
    """
    seeds = [trial_seed(master_seed, t) for t in range(n_trials)]
    get_logger().info(f"running {n_trials} trials on {workers} worker(s)")

    if workers <= 1:
        return [func(context, seed) for seed in seeds]

    return asyncio.run(_run_pool(func, context, seeds, workers))
