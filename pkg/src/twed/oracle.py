"""Independent exhaustive oracle and randomized property harness.

The oracle re-derives the distance by enumerating every monotone edit
path without memoization, so it shares nothing with the DP kernel beyond
the cost definitions. The check_* functions machine-verify the metric
axioms, the 2x Lp upper bound, parameter monotonicity and the
approximation bound on randomized instances, producing replayable
reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .kernel import local_dist, series_lp_distance, twed
from .model import (
    ConfigError,
    InstanceTooLarge,
    TimeSeries,
    TwedParams,
    pad,
)

DEFAULT_LAMBDAS = (0.0, 0.5, 1.0)
DEFAULT_GAMMAS = (0.1, 1.0, 10.0)

TRIANGLE_TOL = 1e-9
IDENTITY_TOL = 1e-12
LP_BOUND_TOL = 1e-12
MONOTONICITY_TOL = 1e-12
ORACLE_REL_TOL = 1e-12
PWCA_BOUND_TOL = 1e-9


@dataclass
class PropertyReport:
    """Outcome of one randomized property check.

    A report passes iff it found zero violations; the worst witness (by
    largest gap) is kept so any failure can be replayed from the seed.
    """

    name: str
    trials: int
    seed: int
    tolerance: float
    violations: int = 0
    worst: dict | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, gap: float, witness: dict):
        self.violations += 1
        if self.worst is None or gap > self.worst["gap"]:
            self.worst = {"gap": gap, **witness}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "violations": self.violations,
            "passed": self.passed,
            "worst_witness": self.worst,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def twed_bruteforce(A: TimeSeries, B: TimeSeries, params: TwedParams) -> float:
    """Distance by exhaustive enumeration of all monotone edit paths.

    No memoization: every path from (0, 0) to (p, q) is costed and the
    minimum taken. Exponential; limited to p + q <= 12.
    """
    p, q = len(A), len(B)
    if p + q > 12:
        raise InstanceTooLarge(f"p + q = {p + q} exceeds the oracle limit of 12")
    pa, pb = pad(A), pad(B)

    def step_delete_a(i: int) -> float:
        c = local_dist(pa.sample(i), pa.sample(i - 1), params)
        return c + params.lam

    def step_delete_b(j: int) -> float:
        c = local_dist(pb.sample(j), pb.sample(j - 1), params)
        return c + params.lam

    def best(i: int, j: int) -> float:
        if i == 0 and j == 0:
            return 0.0
        candidates = []
        if i > 0:
            # along the boundary the cumulative initialization applies,
            # without the gap penalty
            c = local_dist(pa.sample(i), pa.sample(i - 1), params)
            candidates.append(best(i - 1, j) + (c if j == 0 else c + params.lam))
        if i > 0 and j > 0:
            c = local_dist(pa.sample(i), pb.sample(j), params) + local_dist(
                pa.sample(i - 1), pb.sample(j - 1), params
            )
            candidates.append(best(i - 1, j - 1) + c)
        if j > 0:
            c = local_dist(pb.sample(j), pb.sample(j - 1), params)
            candidates.append(best(i, j - 1) + (c if i == 0 else c + params.lam))
        return min(candidates)

    return best(p, q)


def random_series(
    rng: np.random.Generator,
    length: int,
    dim: int,
    times: np.ndarray | None = None,
) -> TimeSeries:
    """Random series: standard-normal values, sorted distinct uniform
    timestamps (strict increase by construction)."""
    if times is None:
        times = np.sort(rng.uniform(0.0, 10.0, size=length))
        while length > 1 and np.any(np.diff(times) <= 0):  # pragma: no cover
            times = np.sort(rng.uniform(0.0, 10.0, size=length))
    values = rng.standard_normal((length, dim))
    return TimeSeries(values, times, dim=dim)


def _random_params(rng, lambdas, gammas, norms=(1.0, 2.0, float("inf"))) -> TwedParams:
    return TwedParams(
        lam=float(rng.choice(lambdas)),
        gamma=float(rng.choice(gammas)),
        norm_p=float(rng.choice(norms)),
    )


def _validate_grid(lambdas, gammas):
    if any(l < 0 for l in lambdas):
        raise ConfigError("gap penalty grid must be >= 0")
    if any(g <= 0 for g in gammas):
        raise ConfigError("stiffness grid must be > 0")


def check_metric_axioms(
    trials: int = 500,
    seed: int = 0,
    length_range: tuple[int, int] = (1, 8),
    dims: Sequence[int] = (1, 2),
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    gammas: Sequence[float] = DEFAULT_GAMMAS,
    distance_fn: Callable = twed,
) -> list[PropertyReport]:
    """Check the four metric axioms on random triples.

    Returns one report per axiom: non-negativity, identity of
    indiscernibles, symmetry (exact equality), triangle inequality.
    """
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    _validate_grid(lambdas, gammas)
    rng = np.random.default_rng(seed)
    nonneg = PropertyReport("non_negativity", trials, seed, 0.0)
    identity = PropertyReport("identity_of_indiscernibles", trials, seed, IDENTITY_TOL)
    symmetry = PropertyReport("symmetry", trials, seed, 0.0)
    triangle = PropertyReport("triangle_inequality", trials, seed, TRIANGLE_TOL)
    lo, hi = length_range
    for trial in range(trials):
        k = int(rng.choice(dims))
        params = _random_params(rng, lambdas, gammas)
        A, B, C = (
            random_series(rng, int(rng.integers(lo, hi + 1)), k) for _ in range(3)
        )
        witness = {"trial": trial, "params": (params.lam, params.gamma, params.norm_p)}

        d_ab = distance_fn(A, B, params)
        d_ba = distance_fn(B, A, params)
        if d_ab < 0:
            nonneg.record(-d_ab, witness)
        if d_ab != d_ba:
            symmetry.record(abs(d_ab - d_ba), witness)

        d_self = distance_fn(A, TimeSeries(A.values.copy(), A.times.copy()), params)
        if not abs(d_self) <= IDENTITY_TOL:
            identity.record(abs(d_self), {**witness, "side": "equal->zero"})
        if A != B and d_ab <= IDENTITY_TOL:
            identity.record(IDENTITY_TOL - d_ab, {**witness, "side": "zero->equal"})

        d_ac = distance_fn(A, C, params)
        d_bc = distance_fn(B, C, params)
        gap = d_ac - (d_ab + d_bc)
        if gap > TRIANGLE_TOL:
            triangle.record(gap, witness)
    return [nonneg, identity, symmetry, triangle]


def check_lp_bound(
    trials: int = 200,
    seed: int = 0,
    length_range: tuple[int, int] = (1, 8),
    dims: Sequence[int] = (1, 2),
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    gammas: Sequence[float] = DEFAULT_GAMMAS,
    distance_fn: Callable = twed,
) -> PropertyReport:
    """Check distance <= 2x the series-level Lp distance on random
    equal-length pairs sharing their timestamps."""
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    _validate_grid(lambdas, gammas)
    rng = np.random.default_rng(seed)
    report = PropertyReport("lp_upper_bound", trials, seed, LP_BOUND_TOL)
    lo, hi = length_range
    for trial in range(trials):
        k = int(rng.choice(dims))
        n = int(rng.integers(lo, hi + 1))
        params = _random_params(rng, lambdas, gammas)
        times = np.sort(rng.uniform(0.0, 10.0, size=n))
        A = random_series(rng, n, k, times=times)
        B = random_series(rng, n, k, times=times)
        d = distance_fn(A, B, params)
        ref = series_lp_distance(A, B, params.norm_p)
        gap = d - 2.0 * ref
        if gap > LP_BOUND_TOL:
            report.record(gap, {"trial": trial, "lhs": d, "rhs": 2.0 * ref})
    return report


DEFAULT_PARAM_PAIRS = (
    ((0.0, 0.1), (0.5, 0.1)),
    ((0.0, 0.1), (0.0, 1.0)),
    ((0.5, 1.0), (1.0, 1.0)),
    ((0.0, 0.1), (1.0, 10.0)),
    ((1.0, 1.0), (1.0, 1.0)),
)


def check_monotonicity(
    trials: int = 200,
    seed: int = 0,
    param_pairs=DEFAULT_PARAM_PAIRS,
    length_range: tuple[int, int] = (1, 8),
    dims: Sequence[int] = (1, 2),
    distance_fn: Callable = twed,
) -> PropertyReport:
    """Check that the distance never decreases when the gap penalty and
    stiffness both increase."""
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    for (lam, gam), (lam2, gam2) in param_pairs:
        if lam2 < lam or gam2 < gam:
            raise ConfigError(f"unordered parameter pair {(lam, gam)} -> {(lam2, gam2)}")
    rng = np.random.default_rng(seed)
    report = PropertyReport("parameter_monotonicity", trials, seed, MONOTONICITY_TOL)
    lo, hi = length_range
    for trial in range(trials):
        k = int(rng.choice(dims))
        A = random_series(rng, int(rng.integers(lo, hi + 1)), k)
        B = random_series(rng, int(rng.integers(lo, hi + 1)), k)
        for (lam, gam), (lam2, gam2) in param_pairs:
            lo_d = distance_fn(A, B, TwedParams(lam=lam, gamma=gam))
            hi_d = distance_fn(A, B, TwedParams(lam=lam2, gamma=gam2))
            gap = lo_d - hi_d
            if gap > MONOTONICITY_TOL:
                report.record(
                    gap,
                    {"trial": trial, "low": (lam, gam), "high": (lam2, gam2),
                     "lhs": lo_d, "rhs": hi_d},
                )
    return report


def check_oracle_equivalence(
    trials: int = 1000,
    seed: int = 0,
    max_total_length: int = 10,
    dims: Sequence[int] = (1, 2),
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    gammas: Sequence[float] = DEFAULT_GAMMAS,
    distance_fn: Callable = twed,
) -> PropertyReport:
    """Check the DP result against the exhaustive path-enumeration oracle
    on small random instances (1e-12 relative)."""
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    _validate_grid(lambdas, gammas)
    rng = np.random.default_rng(seed)
    report = PropertyReport("oracle_equivalence", trials, seed, ORACLE_REL_TOL)
    for trial in range(trials):
        k = int(rng.choice(dims))
        p = int(rng.integers(0, max_total_length + 1))
        q = int(rng.integers(0, max_total_length - p + 1))
        params = _random_params(rng, lambdas, gammas)
        A = random_series(rng, p, k)
        B = random_series(rng, q, k)
        d = distance_fn(A, B, params)
        ref = twed_bruteforce(A, B, params)
        gap = abs(d - ref)
        if gap > ORACLE_REL_TOL * max(1.0, abs(ref)):
            report.record(gap, {"trial": trial, "dp": d, "oracle": ref})
    return report


def check_pwca_bound(
    trials: int = 100,
    seed: int = 0,
    max_length: int = 64,
    param_settings: Sequence[TwedParams] = (
        TwedParams(lam=1.0, gamma=0.5, norm_p=2.0),
        TwedParams(lam=0.0, gamma=1.0, norm_p=1.0),
    ),
    distance_fn: Callable = twed,
) -> PropertyReport:
    """Check the approximation bound for random series over every
    admissible segment count."""
    from .pwca import pwca_bound, pwca_sweep  # avoid import cycle

    if trials < 1:
        raise ConfigError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = PropertyReport("pwca_bound", trials, seed, PWCA_BOUND_TOL)
    for trial in range(trials):
        p = int(rng.integers(1, max_length + 1))
        A = random_series(rng, p, 1)
        for r, result in enumerate(pwca_sweep(A), start=1):
            for params in param_settings:
                d = distance_fn(result.approx, result.extremities, params)
                bound = pwca_bound(p, r, result.delta_t, params)
                gap = d - bound
                if gap > PWCA_BOUND_TOL:
                    report.record(
                        gap, {"trial": trial, "r": r, "distance": d, "bound": bound}
                    )
    return report


SUITE_NAMES = ("metric", "oracle", "lp-bound", "monotonicity", "pwca")


def run_suites(
    suites: Sequence[str],
    trials: int | None = None,
    seed: int = 0,
    distance_fn: Callable = twed,
) -> list[PropertyReport]:
    """Run the named verification suites and return all reports.

    ``trials`` overrides each suite's default trial count when given.
    """
    reports: list[PropertyReport] = []
    for suite in suites:
        if suite == "metric":
            reports.extend(
                check_metric_axioms(trials or 500, seed, distance_fn=distance_fn)
            )
        elif suite == "oracle":
            reports.append(
                check_oracle_equivalence(trials or 1000, seed, distance_fn=distance_fn)
            )
        elif suite == "lp-bound":
            reports.append(check_lp_bound(trials or 200, seed, distance_fn=distance_fn))
        elif suite == "monotonicity":
            reports.append(
                check_monotonicity(trials or 200, seed, distance_fn=distance_fn)
            )
        elif suite == "pwca":
            reports.append(check_pwca_bound(trials or 100, seed, distance_fn=distance_fn))
        else:
            raise ConfigError(f"unknown suite {suite!r}")
    return reports
