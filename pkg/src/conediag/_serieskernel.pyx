# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled series-fill kernels.

The float kernel runs fully in C types; the exact kernel keeps the
rational coefficient objects but does all index bookkeeping in C.
Semantics and accumulation order match _serieskernel_py exactly.
"""

import numpy as np


def fill_box_float(long long[:, ::1] rs, long long[::1] order,
                   long long[:, ::1] svecs, long long[::1] soffs,
                   double[::1] coeffs, double[:, ::1] bfac,
                   int axis_pref, Py_ssize_t size):
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t d = rs.shape[1]
    cdef Py_ssize_t m = soffs.shape[0]
    out_arr = np.zeros(size, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, t, k
    cdef long long idx, rj
    cdef int j
    cdef double acc
    cdef bint ok
    out[<Py_ssize_t> order[0]] = 1.0
    for i in range(1, n):
        idx = order[i]
        j = axis_pref
        if j < 0 or rs[i, j] == 0:
            j = 0
            while rs[i, j] == 0:
                j += 1
        rj = rs[i, j]
        acc = 0.0
        for t in range(m):
            ok = True
            for k in range(d):
                if rs[i, k] < svecs[t, k]:
                    ok = False
                    break
            if not ok:
                continue
            acc = acc + coeffs[t] * ((<double> rj) + bfac[t, j]) * out[<Py_ssize_t> (idx - soffs[t])]
        out[<Py_ssize_t> idx] = -acc / (<double> rj)
    return out_arr


def fill_box_exact(long long[:, ::1] rs, long long[::1] order,
                   long long[:, ::1] svecs, long long[::1] soffs,
                   list coeffs, list bfac_flat,
                   int axis_pref, Py_ssize_t size, one, zero):
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t d = rs.shape[1]
    cdef Py_ssize_t m = soffs.shape[0]
    cdef list out = [None] * size
    cdef Py_ssize_t i, t, k
    cdef long long idx, rj
    cdef int j
    cdef bint ok
    cdef object acc
    out[<Py_ssize_t> order[0]] = one
    for i in range(1, n):
        idx = order[i]
        j = axis_pref
        if j < 0 or rs[i, j] == 0:
            j = 0
            while rs[i, j] == 0:
                j += 1
        rj = rs[i, j]
        acc = zero
        for t in range(m):
            ok = True
            for k in range(d):
                if rs[i, k] < svecs[t, k]:
                    ok = False
                    break
            if not ok:
                continue
            acc = acc + coeffs[t] * (rj + bfac_flat[t * d + j]) * out[<Py_ssize_t> (idx - soffs[t])]
        out[<Py_ssize_t> idx] = (-acc) / rj
    return out
