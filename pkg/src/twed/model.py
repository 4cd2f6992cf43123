"""Core data model: samples, time series, distance parameters.

All types are immutable after construction and therefore safe to share
across threads or processes without synchronization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class TwedError(Exception):
    """Base class for all errors raised by this package."""


class NonIncreasingTimestamps(TwedError):
    """Timestamps must be strictly increasing within a series."""


class DimensionMismatch(TwedError):
    """Value vectors of different dimension were mixed."""


class NonFiniteValue(TwedError):
    """A value or timestamp was NaN or infinite."""


class LengthMismatch(TwedError):
    """Operation requires series of equal length."""


class EmptySeries(TwedError):
    """Operation requires a non-empty series."""


class TooManySegments(TwedError):
    """Requested more segments than there are samples."""


class InstanceTooLarge(TwedError):
    """Instance exceeds the exhaustive oracle's size limit."""


class ConfigError(TwedError):
    """Invalid configuration for a verification run."""


class MalformedHeader(TwedError):
    """Input file header does not match the expected layout."""


class NonNumericField(TwedError):
    """A field that should be numeric could not be parsed."""


@dataclass(frozen=True)
class Sample:
    """One observation: a value vector in R^k plus a real timestamp."""

    value: tuple[float, ...]
    timestamp: float

    def __post_init__(self):
        if len(self.value) < 1:
            raise DimensionMismatch("sample value must have dimension >= 1")
        if not all(math.isfinite(v) for v in self.value):
            raise NonFiniteValue(f"non-finite value component in {self.value!r}")
        if not math.isfinite(self.timestamp):
            raise NonFiniteValue(f"non-finite timestamp {self.timestamp!r}")

    @property
    def dim(self) -> int:
        return len(self.value)


class TimeSeries:
    """An ordered, possibly empty, sequence of samples with strictly
    increasing timestamps and a constant value dimension.

    Backed by read-only float64 arrays: ``values`` of shape (p, k) and
    ``times`` of shape (p,).
    """

    __slots__ = ("values", "times", "dim")

    def __init__(self, values: np.ndarray, times: np.ndarray, dim: int | None = None):
        values = np.ascontiguousarray(values, dtype=np.float64)
        times = np.ascontiguousarray(times, dtype=np.float64)
        if values.ndim != 2:
            values = values.reshape(len(times), -1) if values.size else values.reshape(0, dim or 1)
        if dim is None:
            dim = values.shape[1] if values.size else (values.shape[1] or 1)
        if values.shape[0] != times.shape[0]:
            raise LengthMismatch(
                f"{values.shape[0]} value rows vs {times.shape[0]} timestamps"
            )
        if values.size and values.shape[1] != dim:
            raise DimensionMismatch(f"expected dimension {dim}, got {values.shape[1]}")
        if dim < 1:
            raise DimensionMismatch("dimension must be >= 1")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue("non-finite value component in series")
        if not np.all(np.isfinite(times)):
            raise NonFiniteValue("non-finite timestamp in series")
        if len(times) > 1 and not np.all(np.diff(times) > 0):
            bad = int(np.argmax(np.diff(times) <= 0)) + 1
            raise NonIncreasingTimestamps(
                f"timestamp at index {bad} ({times[bad]}) is <= its predecessor ({times[bad - 1]})"
            )
        values.flags.writeable = False
        times.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "dim", int(dim))

    def __setattr__(self, name, value):
        raise AttributeError("TimeSeries is immutable")

    def __len__(self) -> int:
        return self.times.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            len(self) == len(other)
            and self.dim == other.dim
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.times, other.times)
        )

    def __hash__(self):
        return hash((self.values.tobytes(), self.times.tobytes()))

    def __repr__(self) -> str:
        return f"TimeSeries(p={len(self)}, k={self.dim})"

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def sample(self, i: int) -> Sample:
        """The i-th sample, 1-based to match the usual series indexing."""
        if not 1 <= i <= len(self):
            raise IndexError(f"sample index {i} out of range 1..{len(self)}")
        return Sample(tuple(self.values[i - 1]), float(self.times[i - 1]))

    def samples(self) -> list[Sample]:
        return [self.sample(i) for i in range(1, len(self) + 1)]


def empty_series(dim: int = 1) -> TimeSeries:
    """The distinguished empty series (length zero)."""
    return TimeSeries(np.empty((0, dim)), np.empty(0), dim=dim)


def make_series(rows: Iterable[tuple[float, Sequence[float]]], dim: int | None = None) -> TimeSeries:
    """Build a validated series from (timestamp, value vector) rows.

    Row order is preserved; every invalid input is rejected with a
    specific error rather than silently coerced.
    """
    rows = list(rows)
    if not rows:
        return empty_series(dim or 1)
    times = []
    values = []
    k = dim
    for t, v in rows:
        v = tuple(float(x) for x in v)
        if k is None:
            k = len(v)
        elif len(v) != k:
            raise DimensionMismatch(f"row dimension {len(v)} != {k}")
        times.append(float(t))
        values.append(v)
    return TimeSeries(np.array(values, dtype=np.float64), np.array(times, dtype=np.float64), dim=k)


class PaddedSeries:
    """A series viewed with the virtual index-0 sample (zero vector, time 0).

    Index 0 yields the zero sample; indices 1..p delegate to the series.
    """

    __slots__ = ("series", "values", "times")

    def __init__(self, series: TimeSeries):
        p, k = len(series), series.dim
        values = np.zeros((p + 1, k))
        times = np.zeros(p + 1)
        values[1:] = series.values
        times[1:] = series.times
        values.flags.writeable = False
        times.flags.writeable = False
        object.__setattr__(self, "series", series)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "times", times)

    def __setattr__(self, name, value):
        raise AttributeError("PaddedSeries is immutable")

    def __len__(self) -> int:
        return len(self.series)

    @property
    def dim(self) -> int:
        return self.series.dim

    def sample(self, i: int) -> Sample:
        if not 0 <= i <= len(self):
            raise IndexError(f"padded index {i} out of range 0..{len(self)}")
        return Sample(tuple(self.values[i]), float(self.times[i]))


def pad(series: TimeSeries) -> PaddedSeries:
    """Prepend the conventional zero sample at index 0."""
    return PaddedSeries(series)


_NORM_CODES = {1: 1, 1.0: 1, 2: 2, 2.0: 2, math.inf: 0, "1": 1, "2": 2, "inf": 0}


@dataclass(frozen=True)
class TwedParams:
    """Distance parameters: gap penalty, stiffness, and Lp exponent.

    ``lam >= 0`` and ``gamma > 0`` are required for the metric axioms.
    ``norm_p`` selects the Lp norm on value vectors: 1, 2 or inf.
    """

    lam: float = 1.0
    gamma: float = 0.001
    norm_p: float = 2.0

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise ConfigError(f"gap penalty must be >= 0, got {self.lam}")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ConfigError(f"stiffness must be > 0, got {self.gamma}")
        if self.norm_p not in _NORM_CODES:
            raise ConfigError(f"norm exponent must be 1, 2 or inf, got {self.norm_p}")

    @property
    def norm_code(self) -> int:
        """Integer code for the kernel: 1 -> L1, 2 -> L2, 0 -> Linf."""
        return _NORM_CODES[self.norm_p]
