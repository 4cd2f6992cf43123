import numpy as np
import pytest

from twed import (
    ConfigError,
    InstanceTooLarge,
    TwedParams,
    check_lp_bound,
    check_metric_axioms,
    check_monotonicity,
    check_oracle_equivalence,
    empty_series,
    make_series,
    twed,
    twed_bruteforce,
)
from twed.oracle import DEFAULT_PARAM_PAIRS, random_series


class TestBruteforce:
    def test_identity(self):
        A = make_series([(1, [2]), (2, [3])])
        assert twed_bruteforce(A, A, TwedParams()) == 0.0

    def test_single_sample_pair(self):
        A = make_series([(1, [0])])
        B = make_series([(1, [1])])
        params = TwedParams(lam=1, gamma=1, norm_p=1)
        # the three monotone paths cost 1, 4 and 4
        assert twed_bruteforce(A, B, params) == 1.0
        assert twed(A, B, params) == 1.0

    def test_empty_vs_two(self):
        B = make_series([(1, [1]), (2, [1])])
        params = TwedParams(lam=1, gamma=1, norm_p=1)
        # unique path: the two boundary delete terms, (1+1) + (0+1)
        assert twed_bruteforce(empty_series(1), B, params) == 3.0

    def test_instance_too_large(self):
        A = make_series([(t, [0]) for t in range(1, 8)])
        with pytest.raises(InstanceTooLarge):
            twed_bruteforce(A, A, TwedParams())

    def test_agrees_with_dp(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            p = int(rng.integers(0, 6))
            q = int(rng.integers(0, 6))
            A = random_series(rng, p, 2)
            B = random_series(rng, q, 2)
            params = TwedParams(lam=0.5, gamma=1.0, norm_p=2)
            ref = twed_bruteforce(A, B, params)
            assert twed(A, B, params) == pytest.approx(ref, rel=1e-12, abs=1e-12)


class TestMetricAxioms:
    def test_all_pass_on_small_run(self):
        reports = check_metric_axioms(trials=60, seed=1)
        assert [r.name for r in reports] == [
            "non_negativity",
            "identity_of_indiscernibles",
            "symmetry",
            "triangle_inequality",
        ]
        for r in reports:
            assert r.passed, r.to_dict()

    def test_gamma_zero_grid_rejected(self):
        with pytest.raises(ConfigError):
            check_metric_axioms(trials=5, seed=0, gammas=(0.0, 1.0))

    def test_negative_lambda_grid_rejected(self):
        with pytest.raises(ConfigError):
            check_metric_axioms(trials=5, seed=0, lambdas=(-1.0,))

    def test_zero_trials_rejected(self):
        with pytest.raises(ConfigError):
            check_metric_axioms(trials=0)

    def test_deterministic_given_seed(self):
        a = [r.to_dict() for r in check_metric_axioms(trials=20, seed=9)]
        b = [r.to_dict() for r in check_metric_axioms(trials=20, seed=9)]
        assert a == b


class TestLpBound:
    def test_passes(self):
        report = check_lp_bound(trials=100, seed=3)
        assert report.passed, report.to_dict()

    def test_report_serializable(self):
        report = check_lp_bound(trials=10, seed=3)
        assert '"lp_upper_bound"' in report.to_json()


class TestMonotonicity:
    def test_passes(self):
        report = check_monotonicity(trials=100, seed=4)
        assert report.passed, report.to_dict()

    def test_two_sample_example(self):
        A = make_series([(1, [0]), (2, [1])])
        B = make_series([(1, [1])])
        low = twed(A, B, TwedParams(lam=0, gamma=1, norm_p=1))
        high = twed(A, B, TwedParams(lam=1, gamma=1, norm_p=1))
        assert low == 3.0
        assert low <= high

    def test_equal_params_give_equality(self):
        rng = np.random.default_rng(6)
        A = random_series(rng, 5, 1)
        B = random_series(rng, 4, 1)
        p = TwedParams(lam=0.5, gamma=0.5)
        assert twed(A, B, p) == twed(A, B, p)

    def test_unordered_pair_rejected(self):
        with pytest.raises(ConfigError):
            check_monotonicity(trials=5, param_pairs=(((1.0, 1.0), (0.5, 1.0)),))

    def test_default_pairs_are_ordered(self):
        for (lam, gam), (lam2, gam2) in DEFAULT_PARAM_PAIRS:
            assert lam2 >= lam and gam2 >= gam


class TestOracleEquivalence:
    def test_passes(self):
        report = check_oracle_equivalence(trials=150, seed=5)
        assert report.passed, report.to_dict()

    def test_has_teeth_against_broken_kernel(self):
        # a kernel that ignores the previous-pair match term must be caught
        from twed._pykernel import twed_dist
        from twed.model import pad

        def mutant(A, B, params):
            pa, pb = pad(A), pad(B)
            return twed_dist(pa.values, pa.times, pb.values, pb.times,
                             params.lam, params.gamma, params.norm_code,
                             drop_prev_match=True)

        report = check_oracle_equivalence(trials=150, seed=5, distance_fn=mutant)
        assert report.violations > 0
