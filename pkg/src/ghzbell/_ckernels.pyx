# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_pykernels`` for the reference contracts."""

import numpy as np

from libc.math cimport cos, sqrt

from .errors import DegenerateBranchError

cdef double PROB_FLOOR = 1e-15


def sample_sequence(state, ops, uniforms):
    st_arr = np.ascontiguousarray(state, dtype=np.complex128)
    op_arr = np.ascontiguousarray(ops, dtype=np.complex128)
    cdef const double[:, ::1] u = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef Py_ssize_t n = u.shape[0], m = u.shape[1], d = st_arr.shape[0]
    if op_arr.ndim != 3 or op_arr.shape != (m, d, d):
        raise ValueError(f"ops shape {op_arr.shape} does not match ({m}, {d}, {d})")
    # split real and imaginary parts; C complex multiply goes through a slow NaN-aware helper
    cdef const double[:, :, ::1] opr = np.ascontiguousarray(op_arr.real)
    cdef const double[:, :, ::1] opi = np.ascontiguousarray(op_arr.imag)
    cdef const double[::1] s_re = np.ascontiguousarray(st_arr.real)
    cdef const double[::1] s_im = np.ascontiguousarray(st_arr.imag)
    out_arr = np.empty((n, m), dtype=np.int8)
    cdef signed char[:, ::1] out = out_arr
    cdef double[::1] pr = np.empty(d), pi = np.empty(d), wr = np.empty(d), wi = np.empty(d)
    cdef Py_ssize_t t, j, r, c
    cdef double overlap, p_plus, p_minus, norm2, scale, re, im
    cdef int v
    cdef bint degenerate = False
    with nogil:
        for t in range(n):
            for r in range(d):
                pr[r] = s_re[r]
                pi[r] = s_im[r]
            for j in range(m):
                overlap = 0.0
                for r in range(d):
                    re = 0.0
                    im = 0.0
                    for c in range(d):
                        re = re + opr[j, r, c] * pr[c] - opi[j, r, c] * pi[c]
                        im = im + opr[j, r, c] * pi[c] + opi[j, r, c] * pr[c]
                    wr[r] = re
                    wi[r] = im
                    overlap = overlap + pr[r] * re + pi[r] * im
                p_plus = 0.5 * (1.0 + overlap)
                p_minus = 0.5 * (1.0 - overlap)
                if p_plus <= PROB_FLOOR:
                    v = -1
                elif p_minus <= PROB_FLOOR:
                    v = 1
                elif u[t, j] < p_plus:
                    v = 1
                else:
                    v = -1
                norm2 = 0.0
                for r in range(d):
                    pr[r] = 0.5 * (pr[r] + v * wr[r])
                    pi[r] = 0.5 * (pi[r] + v * wi[r])
                    norm2 = norm2 + pr[r] * pr[r] + pi[r] * pi[r]
                if norm2 < PROB_FLOOR:
                    degenerate = True
                    break
                scale = 1.0 / sqrt(norm2)
                for r in range(d):
                    pr[r] = pr[r] * scale
                    pi[r] = pi[r] * scale
                out[t, j] = v
            if degenerate:
                break
    if degenerate:
        raise DegenerateBranchError("selected branch has zero probability")
    return out_arr


def product_sums(data):
    cdef const signed char[:, ::1] x = np.ascontiguousarray(data, dtype=np.int8)
    cdef Py_ssize_t k = x.shape[0], n = x.shape[1], i, j, t
    out_arr = np.zeros((k, k), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef long long s
    with nogil:
        for i in range(k):
            for j in range(i, k):
                s = 0
                for t in range(n):
                    s = s + x[i, t] * x[j, t]
                out[i, j] = s
                out[j, i] = s
    return out_arr


def bell3_residual(a, b, c):
    cdef const signed char[::1] x = np.ascontiguousarray(a, dtype=np.int8)
    cdef const signed char[::1] y = np.ascontiguousarray(b, dtype=np.int8)
    cdef const signed char[::1] z = np.ascontiguousarray(c, dtype=np.int8)
    cdef Py_ssize_t n = x.shape[0], t
    if y.shape[0] != n or z.shape[0] != n:
        raise ValueError("length mismatch")
    cdef long long worst = 0, r
    with nogil:
        for t in range(n):
            r = <long long>x[t] * y[t] - <long long>x[t] * z[t] - <long long>x[t] * y[t] * (1 - <long long>y[t] * z[t])
            if r < 0:
                r = -r
            if r > worst:
                worst = r
    return int(worst)


def lhv_outcomes(angles, signs, lambdas):
    cdef const double[::1] ang = np.ascontiguousarray(angles, dtype=np.float64)
    cdef const signed char[::1] sg = np.ascontiguousarray(signs, dtype=np.int8)
    cdef const double[::1] lam = np.ascontiguousarray(lambdas, dtype=np.float64)
    cdef Py_ssize_t k = ang.shape[0], n = lam.shape[0], i, t
    if sg.shape[0] != k:
        raise ValueError("angles and signs differ in length")
    out_arr = np.empty((k, n), dtype=np.int8)
    cdef signed char[:, ::1] out = out_arr
    with nogil:
        for i in range(k):
            for t in range(n):
                out[i, t] = sg[i] if cos(ang[i] - lam[t]) >= 0.0 else -sg[i]
    return out_arr
