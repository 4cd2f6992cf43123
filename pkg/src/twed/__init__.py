"""Time Warp Edit Distance on timestamped multidimensional time series.

Distance kernel (compiled extension with a pure-Python fallback),
property-verification harness, piecewise constant approximation, dataset
tooling and a CLI.
"""

from .model import (
    ConfigError,
    DimensionMismatch,
    EmptySeries,
    InstanceTooLarge,
    LengthMismatch,
    MalformedHeader,
    NonFiniteValue,
    NonIncreasingTimestamps,
    NonNumericField,
    PaddedSeries,
    Sample,
    TimeSeries,
    TooManySegments,
    TwedError,
    TwedParams,
    empty_series,
    make_series,
    pad,
)
from .kernel import (
    EditPath,
    EditStep,
    backend_name,
    cost_delete_a,
    cost_delete_b,
    cost_match,
    local_dist,
    series_lp_distance,
    twed,
    twed_cost_matrix,
    twed_with_path,
)
from .oracle import (
    PropertyReport,
    check_lp_bound,
    check_metric_axioms,
    check_monotonicity,
    check_oracle_equivalence,
    check_pwca_bound,
    run_suites,
    twed_bruteforce,
)
from .pwca import (
    PwcaResult,
    mean_intrasegment_dt,
    pwca_approximate,
    pwca_bound,
    pwca_sweep,
    segment_extremities,
    verify_pwca_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DimensionMismatch",
    "EditPath",
    "EditStep",
    "EmptySeries",
    "InstanceTooLarge",
    "LengthMismatch",
    "MalformedHeader",
    "NonFiniteValue",
    "NonIncreasingTimestamps",
    "NonNumericField",
    "PaddedSeries",
    "PropertyReport",
    "PwcaResult",
    "Sample",
    "TimeSeries",
    "TooManySegments",
    "TwedError",
    "TwedParams",
    "backend_name",
    "check_lp_bound",
    "check_metric_axioms",
    "check_monotonicity",
    "check_oracle_equivalence",
    "check_pwca_bound",
    "cost_delete_a",
    "cost_delete_b",
    "cost_match",
    "empty_series",
    "local_dist",
    "make_series",
    "mean_intrasegment_dt",
    "pad",
    "pwca_approximate",
    "pwca_bound",
    "pwca_sweep",
    "run_suites",
    "segment_extremities",
    "series_lp_distance",
    "twed",
    "twed_bruteforce",
    "twed_cost_matrix",
    "twed_with_path",
    "verify_pwca_bound",
]
