"""Time Warp Edit Distance kernel.

The distance is the minimal cost over monotone sequences of three edit
operations (match, delete-in-A, delete-in-B) whose costs act on pairs of
successive samples, with a gap penalty on deletes and a stiffness weight
on timestamp differences.

The distance-only path runs on a compiled extension when available
(rolling two-row DP, O(p*q) time, O(min(p, q)) memory); a pure-Python
fallback with identical arithmetic is selected at import time otherwise.
Set TWED_BACKEND=python or TWED_BACKEND=c to force a backend.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import fabs

import numpy as np

from . import _pykernel
from .model import (
    DimensionMismatch,
    LengthMismatch,
    PaddedSeries,
    Sample,
    TimeSeries,
    TwedParams,
    pad,
)

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - build-dependent
    _ckernel = None


def _select_backend():
    forced = os.environ.get("TWED_BACKEND")
    if forced == "python":
        return _pykernel
    if forced == "c":
        if _ckernel is None:
            raise ImportError("TWED_BACKEND=c but the compiled kernel is not built")
        return _ckernel
    return _ckernel if _ckernel is not None else _pykernel


_backend = _select_backend()


def backend_name() -> str:
    """Name of the kernel backend selected at import ('c' or 'python')."""
    return _backend.BACKEND_NAME


def available_backends() -> dict[str, object]:
    out = {"python": _pykernel}
    if _ckernel is not None:
        out["c"] = _ckernel
    return out


def local_dist(x: Sample, y: Sample, params: TwedParams) -> float:
    """Local distance between two (possibly padded) samples.

    Lp distance between the value vectors plus stiffness times the
    absolute timestamp difference. Symmetric; zero iff the samples are
    equal in both value and timestamp.
    """
    if x.dim != y.dim:
        raise DimensionMismatch(f"sample dimensions differ: {x.dim} vs {y.dim}")
    return _pykernel._vdist(x.value, y.value, params.norm_code) + params.gamma * fabs(
        x.timestamp - y.timestamp
    )


def cost_match(A: PaddedSeries, i: int, B: PaddedSeries, j: int, params: TwedParams) -> float:
    """Cost of matching sample i of A with sample j of B: current-pair
    distance plus previous-pair distance."""
    if not (1 <= i <= len(A) and 1 <= j <= len(B)):
        raise IndexError(f"match indices ({i}, {j}) out of range")
    return local_dist(A.sample(i), B.sample(j), params) + local_dist(
        A.sample(i - 1), B.sample(j - 1), params
    )


def cost_delete_a(A: PaddedSeries, i: int, params: TwedParams) -> float:
    """Cost of deleting sample i of A: distance to its predecessor plus
    the gap penalty."""
    if not 1 <= i <= len(A):
        raise IndexError(f"delete index {i} out of range")
    return local_dist(A.sample(i), A.sample(i - 1), params) + params.lam


def cost_delete_b(B: PaddedSeries, j: int, params: TwedParams) -> float:
    """Mirror of cost_delete_a on the second series."""
    if not 1 <= j <= len(B):
        raise IndexError(f"delete index {j} out of range")
    return local_dist(B.sample(j - 1), B.sample(j), params) + params.lam


def _check_dims(A: TimeSeries, B: TimeSeries):
    if A.dim != B.dim:
        raise DimensionMismatch(f"series dimensions differ: {A.dim} vs {B.dim}")


def _padded_arrays(S: TimeSeries):
    ps = pad(S)
    return ps.values, ps.times


def twed(A: TimeSeries, B: TimeSeries, params: TwedParams) -> float:
    """The distance between A and B.

    Deterministic, symmetric, non-negative; zero iff A equals B.
    """
    _check_dims(A, B)
    va, ta = _padded_arrays(A)
    vb, tb = _padded_arrays(B)
    # roll over the shorter side; symmetry of the costs makes this exact
    if len(B) > len(A):
        va, ta, vb, tb = vb, tb, va, ta
    return float(
        _backend.twed_dist(va, ta, vb, tb, params.lam, params.gamma, params.norm_code)
    )


def twed_cost_matrix(A: TimeSeries, B: TimeSeries, params: TwedParams) -> np.ndarray:
    """Full (p+1) x (q+1) prefix-distance matrix; entry (i, j) is the
    distance between the length-i prefix of A and the length-j prefix of B.
    """
    _check_dims(A, B)
    pa, pb = pad(A), pad(B)
    p, q = len(A), len(B)
    M = np.zeros((p + 1, q + 1))
    for j in range(1, q + 1):
        M[0, j] = M[0, j - 1] + local_dist(pb.sample(j), pb.sample(j - 1), params)
    for i in range(1, p + 1):
        M[i, 0] = M[i - 1, 0] + local_dist(pa.sample(i), pa.sample(i - 1), params)
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            del_a = M[i - 1, j] + cost_delete_a(pa, i, params)
            # summed in the same order as the rolling kernel so that the
            # final entry is bit-identical to twed()
            match = (
                M[i - 1, j - 1]
                + local_dist(pa.sample(i), pb.sample(j), params)
                + local_dist(pa.sample(i - 1), pb.sample(j - 1), params)
            )
            del_b = M[i, j - 1] + cost_delete_b(pb, j, params)
            M[i, j] = min(del_a, match, del_b)
    return M


@dataclass(frozen=True)
class EditStep:
    """One edit operation of an alignment: 'match', 'delete_a' or
    'delete_b', with 1-based indices (unused index is None)."""

    op: str
    i: int | None
    j: int | None
    cost: float

    def to_dict(self) -> dict:
        return {"op": self.op, "i": self.i, "j": self.j, "cost": self.cost}


@dataclass(frozen=True)
class EditPath:
    """An optimal alignment realizing the distance; the step costs sum to
    the distance up to floating-point rounding (1e-12 relative)."""

    steps: tuple[EditStep, ...]

    @property
    def total_cost(self) -> float:
        total = 0.0
        for s in self.steps:
            total += s.cost
        return total

    def to_dicts(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]


def twed_with_path(A: TimeSeries, B: TimeSeries, params: TwedParams):
    """Distance plus an optimal edit path and the full cost matrix.

    Ties are broken deterministically so that the forward path prefers a
    match over delete-in-A over delete-in-B at the earliest opportunity.
    """
    M = twed_cost_matrix(A, B, params)
    pa, pb = pad(A), pad(B)
    i, j = len(A), len(B)
    steps: list[EditStep] = []
    while i > 0 or j > 0:
        if i == 0:
            c = local_dist(pb.sample(j), pb.sample(j - 1), params)
            steps.append(EditStep("delete_b", None, j, c))
            j -= 1
            continue
        if j == 0:
            c = local_dist(pa.sample(i), pa.sample(i - 1), params)
            steps.append(EditStep("delete_a", i, None, c))
            i -= 1
            continue
        cell = M[i, j]
        # reverse-walk preference delete_b > delete_a > match yields the
        # forward preference match > delete_a > delete_b
        c = cost_delete_b(pb, j, params)
        if M[i, j - 1] + c == cell:
            steps.append(EditStep("delete_b", None, j, c))
            j -= 1
            continue
        c = cost_delete_a(pa, i, params)
        if M[i - 1, j] + c == cell:
            steps.append(EditStep("delete_a", i, None, c))
            i -= 1
            continue
        lab = local_dist(pa.sample(i), pb.sample(j), params)
        lab_prev = local_dist(pa.sample(i - 1), pb.sample(j - 1), params)
        assert M[i - 1, j - 1] + lab + lab_prev == cell
        steps.append(EditStep("match", i, j, lab + lab_prev))
        i -= 1
        j -= 1
    steps.reverse()
    return float(M[len(A), len(B)]), EditPath(tuple(steps)), M


def series_lp_distance(A: TimeSeries, B: TimeSeries, norm_p: float = 2.0) -> float:
    """Sum over indices of the Lp distance between value vectors of two
    equal-length series (timestamps excluded).

    This is the reference quantity for the 2x upper bound, which holds
    for equal-length series sharing their timestamps.
    """
    if len(A) != len(B):
        raise LengthMismatch(f"series lengths differ: {len(A)} vs {len(B)}")
    _check_dims(A, B)
    code = TwedParams(norm_p=norm_p).norm_code
    total = 0.0
    for av, bv in zip(A.values.tolist(), B.values.tolist()):
        total += _pykernel._vdist(av, bv, code)
    return total
