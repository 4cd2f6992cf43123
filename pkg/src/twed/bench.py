"""Timing helpers: per-length wall time of one distance call, for every
available backend, plus an empirical quadratic-scaling check."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import kernel
from .model import TimeSeries, TwedParams, pad

SCALING_FACTOR_LIMIT = 4.5


@dataclass(frozen=True)
class BenchRow:
    backend: str
    length: int
    seconds: float


def _random_pair(length: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    times = np.arange(1.0, length + 1)
    A = TimeSeries(rng.standard_normal((length, 1)), times)
    B = TimeSeries(rng.standard_normal((length, 1)), times)
    return A, B


def time_distance(
    A: TimeSeries, B: TimeSeries, params: TwedParams, repetitions: int, backend
) -> float:
    """Best-of-repetitions wall time of one distance call on a backend."""
    va, ta = pad(A).values, pad(A).times
    vb, tb = pad(B).values, pad(B).times
    best = float("inf")
    for _ in range(repetitions):
        start = time.perf_counter()
        backend.twed_dist(va, ta, vb, tb, params.lam, params.gamma, params.norm_code)
        best = min(best, time.perf_counter() - start)
    return best


def run_benchmark(
    lengths: list[int],
    repetitions: int = 3,
    params: TwedParams | None = None,
    seed: int = 0,
) -> list[BenchRow]:
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    if any(n < 1 for n in lengths):
        raise ValueError("lengths must be >= 1")
    params = params or TwedParams()
    rows = []
    for name, backend in kernel.available_backends().items():
        for length in lengths:
            A, B = _random_pair(length, seed)
            rows.append(BenchRow(name, length, time_distance(A, B, params, repetitions, backend)))
    return rows


def check_quadratic_scaling(rows: list[BenchRow], backend: str | None = None) -> bool:
    """True when each doubling of the length costs at most 4.5x the time,
    consistent with the O(p*q) kernel."""
    backend = backend or kernel.backend_name()
    by_len = {r.length: r.seconds for r in rows if r.backend == backend}
    lengths = sorted(by_len)
    for small, big in zip(lengths, lengths[1:]):
        if big == 2 * small and by_len[big] > SCALING_FACTOR_LIMIT * by_len[small]:
            return False
    return True
