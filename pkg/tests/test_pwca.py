from itertools import combinations

import numpy as np
import pytest

from twed import (
    EmptySeries,
    TooManySegments,
    TwedParams,
    empty_series,
    make_series,
    mean_intrasegment_dt,
    pwca_approximate,
    pwca_bound,
    segment_extremities,
    verify_pwca_bound,
)
from twed.oracle import random_series


def exhaustive_min_sse(values: np.ndarray, r: int) -> float:
    """Brute-force minimum SSE over all boundary placements."""
    p = len(values)
    best = float("inf")
    for cuts in combinations(range(1, p), r - 1):
        edges = [0, *cuts, p]
        sse = 0.0
        for a, b in zip(edges, edges[1:]):
            seg = values[a:b]
            sse += float(((seg - seg.mean(axis=0)) ** 2).sum())
        best = min(best, sse)
    return best


STEP = make_series([(1, [1]), (2, [1]), (3, [5]), (4, [5])])


class TestApproximate:
    def test_step_series_two_segments(self):
        result = pwca_approximate(STEP, 2)
        assert result.segments == ((1, 2, (1.0,)), (3, 4, (5.0,)))
        assert result.sse == 0.0
        assert result.approx == STEP

    def test_every_sample_its_own_segment(self):
        result = pwca_approximate(STEP, 4)
        assert len(result.segments) == 4
        assert result.sse == 0.0
        assert result.approx == STEP

    def test_single_segment_is_global_mean(self):
        result = pwca_approximate(STEP, 1)
        assert result.segments == ((1, 4, (3.0,)),)
        assert np.all(result.approx.values == 3.0)

    def test_errors(self):
        with pytest.raises(EmptySeries):
            pwca_approximate(empty_series(1), 1)
        with pytest.raises(TooManySegments):
            pwca_approximate(STEP, 5)
        with pytest.raises(TooManySegments):
            pwca_approximate(STEP, 0)

    def test_timestamps_preserved(self):
        rng = np.random.default_rng(1)
        A = random_series(rng, 10, 2)
        result = pwca_approximate(A, 3)
        assert np.array_equal(result.approx.times, A.times)
        assert len(result.approx) == len(A)

    def test_piecewise_constant_input_reproduced(self):
        A = make_series([(t, [v]) for t, v in zip(range(1, 7), [2, 2, 2, 7, 7, 7])])
        for r in (2, 3, 6):
            result = pwca_approximate(A, r)
            assert result.approx == A
            assert result.sse == 0.0

    def test_optimal_sse_matches_exhaustive_search(self):
        rng = np.random.default_rng(8)
        for _ in range(60):
            p = int(rng.integers(2, 13))
            A = random_series(rng, p, 1)
            r = int(rng.integers(1, p + 1))
            result = pwca_approximate(A, r)
            assert result.sse == exhaustive_min_sse(A.values, r)


class TestExtremities:
    def test_step_series(self):
        ext = segment_extremities(pwca_approximate(STEP, 2))
        assert ext == make_series([(2, [1]), (4, [5])])

    def test_single_segment(self):
        ext = segment_extremities(pwca_approximate(STEP, 1))
        assert len(ext) == 1
        assert ext.times[0] == 4.0

    def test_all_singletons_is_approx_itself(self):
        result = pwca_approximate(STEP, 4)
        assert segment_extremities(result) == result.approx


class TestDeltaT:
    def test_step_series(self):
        assert mean_intrasegment_dt(pwca_approximate(STEP, 2)) == 1.0

    def test_singletons_zero_by_convention(self):
        assert mean_intrasegment_dt(pwca_approximate(STEP, 4)) == 0.0

    def test_uneven_gaps(self):
        A = make_series([(1, [0]), (2, [0]), (4, [0])])
        assert mean_intrasegment_dt(pwca_approximate(A, 1)) == 1.5


class TestBound:
    def test_formula(self):
        assert pwca_bound(4, 2, 1.0, TwedParams(lam=1, gamma=0.5)) == 5.0
        assert pwca_bound(4, 4, 0.0, TwedParams(lam=1, gamma=0.5)) == 0.0
        assert pwca_bound(3, 1, 2.0, TwedParams(lam=0, gamma=1)) == 10.0

    def test_r_greater_than_p_rejected(self):
        with pytest.raises(TooManySegments):
            pwca_bound(3, 4, 1.0, TwedParams())


class TestVerifyBound:
    def test_identity_segmentation(self):
        d, bound, ok = verify_pwca_bound(STEP, 4, TwedParams(lam=1, gamma=0.5))
        assert d == 0.0
        assert ok

    def test_step_series(self):
        d, bound, ok = verify_pwca_bound(STEP, 2, TwedParams(lam=1, gamma=0.5, norm_p=1))
        assert bound == 5.0
        assert ok

    def test_random_series_all_r(self):
        rng = np.random.default_rng(12)
        params = TwedParams(lam=0.5, gamma=1.0, norm_p=2)
        for _ in range(10):
            p = int(rng.integers(1, 20))
            A = random_series(rng, p, 1)
            for r in range(1, p + 1):
                d, bound, ok = verify_pwca_bound(A, r, params)
                assert ok, (p, r, d, bound)
