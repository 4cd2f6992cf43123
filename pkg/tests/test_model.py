import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twed import (
    DimensionMismatch,
    NonFiniteValue,
    NonIncreasingTimestamps,
    Sample,
    empty_series,
    make_series,
    pad,
)


def test_empty_construction():
    s = make_series([])
    assert len(s) == 0
    assert s.is_empty
    assert s == empty_series(1)


def test_two_sample_construction():
    s = make_series([(1, [0]), (2, [1])])
    assert len(s) == 2
    assert s.dim == 1
    assert s.sample(1) == Sample((0.0,), 1.0)
    assert s.sample(2) == Sample((1.0,), 2.0)


def test_non_increasing_timestamps_rejected():
    with pytest.raises(NonIncreasingTimestamps):
        make_series([(2, [0]), (1, [1])])
    with pytest.raises(NonIncreasingTimestamps):
        make_series([(1, [0]), (1, [1])])


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionMismatch):
        make_series([(1, [0, 1]), (2, [1])])


def test_non_finite_rejected():
    with pytest.raises(NonFiniteValue):
        make_series([(1, [float("nan")])])
    with pytest.raises(NonFiniteValue):
        make_series([(math.inf, [0.0])])


def test_negative_timestamps_allowed():
    s = make_series([(-5, [1]), (-1, [2])])
    assert s.times[0] == -5


def test_pad_conventions():
    assert pad(make_series([])).sample(0) == Sample((0.0,), 0.0)
    ps = pad(make_series([(1, [5])]))
    assert ps.sample(0) == Sample((0.0,), 0.0)
    assert ps.sample(1) == Sample((5.0,), 1.0)
    assert len(ps) == 1


def test_immutability():
    s = make_series([(1, [0])])
    with pytest.raises(ValueError):
        s.values[0, 0] = 9.0
    with pytest.raises(AttributeError):
        s.dim = 3


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=20, unique=True))
def test_sorted_timestamps_always_accepted(times):
    times = sorted(times)
    s = make_series([(t, [0.0]) for t in times])
    assert all(b > a for a, b in zip(s.times, s.times[1:]))


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=20, unique=True))
def test_unsorted_timestamps_always_rejected(times):
    if times != sorted(times):
        with pytest.raises(NonIncreasingTimestamps):
            make_series([(t, [0.0]) for t in times])
