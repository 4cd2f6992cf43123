# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled distance kernel. Mirrors _pykernel operation-for-operation."""

from libc.math cimport fabs, sqrt
from libc.stdlib cimport free, malloc

import numpy as np

BACKEND_NAME = "c"


cdef inline double _vdist(const double* x, const double* y, Py_ssize_t k, int norm_code) noexcept nogil:
    cdef double s = 0.0
    cdef double d, m
    cdef Py_ssize_t c
    if norm_code == 2:
        for c in range(k):
            d = x[c] - y[c]
            s += d * d
        return sqrt(s)
    if norm_code == 1:
        for c in range(k):
            s += fabs(x[c] - y[c])
        return s
    m = 0.0
    for c in range(k):
        d = fabs(x[c] - y[c])
        if d > m:
            m = d
    return m


cdef inline double _local(const double* xv, double xt, const double* yv, double yt,
                          Py_ssize_t k, double gamma, int norm_code) noexcept nogil:
    return _vdist(xv, yv, k, norm_code) + gamma * fabs(xt - yt)


def twed_dist(const double[:, ::1] va, const double[::1] ta,
              const double[:, ::1] vb, const double[::1] tb,
              double lam, double gamma, int norm_code):
    """Distance between two padded series by the rolling two-row DP.

    Inputs are (p+1, k) / (p+1,) C-contiguous arrays whose row 0 is the
    conventional zero sample. Releases the GIL for the whole computation.
    """
    cdef Py_ssize_t p = ta.shape[0] - 1
    cdef Py_ssize_t q = tb.shape[0] - 1
    cdef Py_ssize_t k = va.shape[1]
    cdef Py_ssize_t i, j
    cdef double d, d_aa, gap_a, lab, del_a, match, del_b, best, result
    cdef double *prev
    cdef double *cur
    cdef double *gap_b
    cdef double *lab_prev
    cdef double *lab_cur
    cdef double *tmp

    cdef const double* pva = &va[0, 0]
    cdef const double* pvb = &vb[0, 0]
    cdef const double* pta = &ta[0]
    cdef const double* ptb = &tb[0]

    prev = <double*> malloc(5 * (q + 1) * sizeof(double))
    if prev == NULL:
        raise MemoryError()
    cur = prev + (q + 1)
    gap_b = prev + 2 * (q + 1)
    lab_prev = prev + 3 * (q + 1)
    lab_cur = prev + 4 * (q + 1)

    with nogil:
        prev[0] = 0.0
        gap_b[0] = 0.0
        for j in range(1, q + 1):
            d = _local(pvb + j * k, ptb[j], pvb + (j - 1) * k, ptb[j - 1], k, gamma, norm_code)
            gap_b[j] = d + lam
            prev[j] = prev[j - 1] + d
        for j in range(q + 1):
            lab_prev[j] = _local(pva, pta[0], pvb + j * k, ptb[j], k, gamma, norm_code)

        for i in range(1, p + 1):
            d_aa = _local(pva + i * k, pta[i], pva + (i - 1) * k, pta[i - 1], k, gamma, norm_code)
            gap_a = d_aa + lam
            cur[0] = prev[0] + d_aa
            lab_cur[0] = _local(pva + i * k, pta[i], pvb, ptb[0], k, gamma, norm_code)
            for j in range(1, q + 1):
                lab = _local(pva + i * k, pta[i], pvb + j * k, ptb[j], k, gamma, norm_code)
                lab_cur[j] = lab
                del_a = prev[j] + gap_a
                match = prev[j - 1] + lab + lab_prev[j - 1]
                del_b = cur[j - 1] + gap_b[j]
                best = del_a
                if match < best:
                    best = match
                if del_b < best:
                    best = del_b
                cur[j] = best
            tmp = prev; prev = cur; cur = tmp
            tmp = lab_prev; lab_prev = lab_cur; lab_cur = tmp
        result = prev[q]

    # prev may have been swapped away from the allocation base
    if prev < cur:
        free(prev)
    else:
        free(cur)
    return result
