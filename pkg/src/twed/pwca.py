"""Piecewise constant approximation of a time series.

Segments a series into a given number of contiguous pieces minimizing the
total squared error, extracts the per-segment extremity series, and
verifies the closed-form upper bound on the distance between the
approximation and its extremities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import twed
from .model import EmptySeries, TimeSeries, TooManySegments, TwedParams


@dataclass(frozen=True)
class PwcaResult:
    """A segmentation outcome.

    ``approx`` keeps the original p timestamps with values flattened to
    each segment's mean; ``segments`` are (start, end, constant) with
    1-based inclusive indices; ``extremities`` holds one sample per
    segment (the segment constant at the segment's last timestamp);
    ``delta_t`` is the mean time gap between successive samples inside a
    segment; ``sse`` the total squared approximation error.
    """

    original: TimeSeries
    approx: TimeSeries
    segments: tuple[tuple[int, int, tuple[float, ...]], ...]
    extremities: TimeSeries
    delta_t: float
    sse: float


def _segment_sse(values: np.ndarray) -> float:
    """Squared error of one segment against its mean, computed directly."""
    return float(((values - values.mean(axis=0)) ** 2).sum())


def _cost_table(values: np.ndarray) -> np.ndarray:
    """C[i, j] = SSE of rows i..j inclusive against their mean, via prefix
    sums, clamped against tiny negative rounding residue."""
    p, k = values.shape
    s1 = np.zeros((p + 1, k))
    s2 = np.zeros(p + 1)
    np.cumsum(values, axis=0, out=s1[1:])
    np.cumsum((values * values).sum(axis=1), out=s2[1:])
    C = np.zeros((p, p))
    for i in range(p):
        n = np.arange(1, p - i + 1)
        sums = s1[i + 1 :] - s1[i]
        C[i, i:] = (s2[i + 1 :] - s2[i]) - (sums * sums).sum(axis=1) / n
    np.maximum(C, 0.0, out=C)
    return C


def _dp_tables(values: np.ndarray, r_max: int):
    """Suffix DP over the cost table: F[s, i] is the minimal cost of
    splitting rows i..p-1 into s segments, arg[s, i] the end of the first
    segment of one such optimum (smallest end among ties)."""
    p = values.shape[0]
    C = _cost_table(values)
    F = np.full((r_max + 1, p + 1), np.inf)
    arg = np.full((r_max + 1, p + 1), -1, dtype=np.int64)
    F[1, :p] = C[:, p - 1]
    arg[1, :p] = p - 1
    for s in range(2, r_max + 1):
        # the first segment must leave s-1 rows for the remaining pieces
        for i in range(p - s + 1):
            cand = C[i, i : p - s + 1] + F[s - 1, i + 1 : p - s + 2]
            e = int(np.argmin(cand))  # first occurrence: smallest end
            F[s, i] = cand[e]
            arg[s, i] = i + e
    return F, arg


def _reconstruct(arg: np.ndarray, r: int) -> list[tuple[int, int]]:
    bounds = []
    i = 0
    for s in range(r, 0, -1):
        e = int(arg[s, i])
        bounds.append((i, e))
        i = e + 1
    return bounds


def _segmentation(values: np.ndarray, r: int) -> list[tuple[int, int]]:
    """Minimal-SSE split of rows 0..p-1 into r contiguous pieces.

    Forward reconstruction with ties preferring the smaller segment end,
    so the returned boundary set is the lexicographically smallest among
    the optima.
    """
    _, arg = _dp_tables(values, r)
    return _reconstruct(arg, r)


def pwca_approximate(A: TimeSeries, num_segments: int) -> PwcaResult:
    """Optimal-SSE piecewise constant approximation with the given number
    of segments; each segment's constant is the mean of its values."""
    p = len(A)
    if p == 0:
        raise EmptySeries("cannot approximate the empty series")
    if not 1 <= num_segments <= p:
        raise TooManySegments(f"num_segments={num_segments} not in 1..{p}")
    return _build_result(A, _segmentation(A.values, num_segments))


def pwca_sweep(A: TimeSeries) -> list[PwcaResult]:
    """Optimal approximations for every admissible segment count 1..p,
    sharing one dynamic-programming pass."""
    p = len(A)
    if p == 0:
        raise EmptySeries("cannot approximate the empty series")
    _, arg = _dp_tables(A.values, p)
    return [_build_result(A, _reconstruct(arg, r)) for r in range(1, p + 1)]


def _build_result(A: TimeSeries, bounds: list[tuple[int, int]]) -> PwcaResult:
    approx_values = np.empty_like(A.values)
    segments = []
    ext_values, ext_times = [], []
    sse = 0.0
    dt_sum, dt_count = 0.0, 0
    for start, end in bounds:
        seg = A.values[start : end + 1]
        constant = seg.mean(axis=0)
        approx_values[start : end + 1] = constant
        segments.append((start + 1, end + 1, tuple(float(c) for c in constant)))
        ext_values.append(constant)
        ext_times.append(A.times[end])
        sse += _segment_sse(seg)
        for idx in range(start + 1, end + 1):
            dt_sum += float(A.times[idx] - A.times[idx - 1])
            dt_count += 1

    approx = TimeSeries(approx_values, A.times.copy(), dim=A.dim)
    extremities = TimeSeries(np.array(ext_values), np.array(ext_times), dim=A.dim)
    delta_t = dt_sum / dt_count if dt_count else 0.0
    return PwcaResult(
        original=A,
        approx=approx,
        segments=tuple(segments),
        extremities=extremities,
        delta_t=delta_t,
        sse=sse,
    )


def segment_extremities(result: PwcaResult) -> TimeSeries:
    """The last sample of each segment (constant value, original
    timestamp), one per segment."""
    return result.extremities


def mean_intrasegment_dt(result: PwcaResult) -> float:
    """Mean time gap over consecutive sample pairs lying within one
    segment; 0 by convention when every segment is a singleton."""
    return result.delta_t


def pwca_bound(p: int, r: int, delta_t: float, params: TwedParams) -> float:
    """Closed-form upper bound on the distance between the approximation
    and its extremity series: lam*(p - r) + gamma*delta_t*(2p - r)."""
    if not 1 <= r <= p:
        raise TooManySegments(f"r={r} not in 1..{p}")
    if delta_t < 0:
        raise ValueError("delta_t must be >= 0")
    return params.lam * (p - r) + params.gamma * delta_t * (2 * p - r)


def verify_pwca_bound(
    A: TimeSeries, num_segments: int, params: TwedParams
) -> tuple[float, float, bool]:
    """Compute the approximation, the distance to its extremities and the
    bound; returns (distance, bound, pass flag)."""
    result = pwca_approximate(A, num_segments)
    distance = twed(result.approx, result.extremities, params)
    bound = pwca_bound(len(A), num_segments, result.delta_t, params)
    return distance, bound, distance <= bound + 1e-9
