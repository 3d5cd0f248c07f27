"""Wall-clock scaling measurements for the two algorithms."""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass

from .generators import random_width_d
from .greedy import greedy_run
from .poset import chain_index
from .width2 import width2_run


@dataclass
class Timing:
    n: int
    seconds: float
    max_red_degree: int


def _run_once(algo: str, p, pi):
    index = chain_index(p, pi)
    if algo == "greedy":
        return greedy_run(p, pi, index=index, verify=False).max_red_degree
    if algo == "width2":
        return width2_run(p, pi, index=index, verify=False).max_red_degree
    raise ValueError(f"unknown algorithm {algo!r}")


def time_algorithm(algo: str, n: int, d: int = 2, density: float = 0.5, seeds=(0,),
                   repeat: int = 3) -> Timing:
    """Total over ``seeds`` of the best-of-``repeat`` wall time per instance.

    The collector is paused while timing.  Instance generation is excluded;
    the chain index is included since both algorithms need it.  Several
    seeds smooth out instance-to-instance variation in the work done.
    """
    total = 0.0
    degree = 0
    enabled = gc.isenabled()
    # one untimed run so the allocator already holds memory for this size
    _run_once(algo, *random_width_d(n, d, density, seeds[0]))
    try:
        for seed in seeds:
            p, pi = random_width_d(n, d, density, seed)
            gc.collect()
            gc.disable()
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                degree = max(degree, _run_once(algo, p, pi))
                best = min(best, time.perf_counter() - t0)
            total += best
            if enabled:
                gc.enable()
    finally:
        if enabled:
            gc.enable()
    return Timing(n, total, degree)


def scaling(algo: str, sizes, d: int = 2, density: float = 0.5, seeds=(0,),
            repeat: int = 3) -> list[Timing]:
    return [time_algorithm(algo, n, d, density, seeds, repeat) for n in sizes]


def ratios(timings: list[Timing]) -> list[float]:
    return [b.seconds / a.seconds for a, b in zip(timings, timings[1:])]
