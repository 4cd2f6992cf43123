"""Pure-Python fallback for the distance kernel.

Mirrors the compiled extension operation-for-operation so that both
backends produce bit-identical results. Arrays come in already padded
with the conventional zero sample at row 0.
"""

from __future__ import annotations

from math import fabs, sqrt

BACKEND_NAME = "python"


def _vdist(x, y, norm_code: int) -> float:
    """Lp distance between two value vectors (lists of floats)."""
    if norm_code == 2:
        s = 0.0
        for a, b in zip(x, y):
            d = a - b
            s += d * d
        return sqrt(s)
    if norm_code == 1:
        s = 0.0
        for a, b in zip(x, y):
            s += fabs(a - b)
        return s
    m = 0.0
    for a, b in zip(x, y):
        d = fabs(a - b)
        if d > m:
            m = d
    return m


def _local(xv, xt, yv, yt, gamma: float, norm_code: int) -> float:
    return _vdist(xv, yv, norm_code) + gamma * fabs(xt - yt)


def twed_dist(va, ta, vb, tb, lam, gamma, norm_code, drop_prev_match=False):
    """Distance between two padded series by the rolling two-row DP.

    ``va``/``vb`` are (p+1, k) value arrays with a zero row 0; ``ta``/``tb``
    the matching padded timestamp arrays. ``drop_prev_match`` is a
    mutation-testing hook that removes the previous-pair term from the
    match cost; it must never be set in production use.
    """
    va = va.tolist()
    ta = ta.tolist()
    vb = vb.tolist()
    tb = tb.tolist()
    p = len(ta) - 1
    q = len(tb) - 1

    # init row: cumulative predecessor distances along B, no gap penalty
    prev = [0.0] * (q + 1)
    gap_b = [0.0] * (q + 1)
    lab_prev = [0.0] * (q + 1)
    for j in range(1, q + 1):
        d = _local(vb[j], tb[j], vb[j - 1], tb[j - 1], gamma, norm_code)
        gap_b[j] = d + lam
        prev[j] = prev[j - 1] + d
    for j in range(q + 1):
        lab_prev[j] = _local(va[0], ta[0], vb[j], tb[j], gamma, norm_code)

    cur = [0.0] * (q + 1)
    lab_cur = [0.0] * (q + 1)
    for i in range(1, p + 1):
        d_aa = _local(va[i], ta[i], va[i - 1], ta[i - 1], gamma, norm_code)
        gap_a = d_aa + lam
        cur[0] = prev[0] + d_aa
        lab_cur[0] = _local(va[i], ta[i], vb[0], tb[0], gamma, norm_code)
        for j in range(1, q + 1):
            lab = _local(va[i], ta[i], vb[j], tb[j], gamma, norm_code)
            lab_cur[j] = lab
            del_a = prev[j] + gap_a
            if drop_prev_match:
                match = prev[j - 1] + lab
            else:
                match = prev[j - 1] + lab + lab_prev[j - 1]
            del_b = cur[j - 1] + gap_b[j]
            best = del_a
            if match < best:
                best = match
            if del_b < best:
                best = del_b
            cur[j] = best
        prev, cur = cur, prev
        lab_prev, lab_cur = lab_cur, lab_prev
    return prev[q]
