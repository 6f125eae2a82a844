# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled iteration kernels.

Expression-for-expression mirror of ``pure.py``; built with FP contraction
disabled so both backends produce bit-identical results. See pure.py for
the contract docs.
"""

from libc.math cimport sin, asin, sqrt, floor, ceil, M_PI
from libc.stdint cimport uint64_t, int64_t

import numpy as np

BACKEND = "compiled"

LOGISTIC = 0
SINE = 1

cdef uint64_t GAMMA = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t MIX1 = <uint64_t>0xBF58476D1CE4E5B9
cdef uint64_t MIX2 = <uint64_t>0x94D049BB133111EB
cdef double U01 = 1.0 / 9007199254740992.0  # 2**-53


cdef inline uint64_t _mix(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline double _step(int code, double mu, double x) nogil:
    if code == 0:
        return mu * x * (1.0 - x)
    return mu * sin(M_PI * x)


def _check_code(int code):
    if code != 0 and code != 1:
        raise ValueError(f"unknown family code {code}")


def splitmix_outputs(seed, n):
    cdef uint64_t s = <uint64_t>seed
    cdef Py_ssize_t i, m = n
    out = np.empty(m, dtype=np.uint64)
    cdef uint64_t[::1] ov = out
    for i in range(m):
        s = s + GAMMA
        ov[i] = _mix(s)
    return out


def iterate_scalar(int code, double mu, double x, long n):
    _check_code(code)
    cdef long i
    with nogil:
        for i in range(n):
            x = _step(code, mu, x)
    return x


def orbit_array(int code, double mu, double x, long n):
    _check_code(code)
    out = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] ov = out
    cdef long i
    with nogil:
        ov[0] = x
        for i in range(n):
            x = _step(code, mu, x)
            ov[i + 1] = x
    return out


def iterate_array(int code, double mu, xs, long n):
    _check_code(code)
    out = np.array(xs, dtype=np.float64, copy=True)
    flat = out.ravel()
    cdef double[::1] fv = flat
    cdef Py_ssize_t i, m = fv.shape[0]
    cdef long k
    cdef double x
    with nogil:
        for i in range(m):
            x = fv[i]
            for k in range(n):
                x = _step(code, mu, x)
            fv[i] = x
    return out


def grid_edges(int code, double mu, double a, double b, long n, double eps):
    _check_code(code)
    cdef double h = (b - a) / n
    cdef double eps_eff = eps + h
    cdef double x, y
    cdef long i
    cdef int64_t lo, hi

    jlo = np.empty(n, dtype=np.int64)
    jhi = np.empty(n, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] lov = jlo
    cdef int64_t[::1] hiv = jhi
    cdef int64_t[::1] pv = indptr
    cdef int64_t total = 0

    with nogil:
        for i in range(n):
            x = a + h * i
            y = _step(code, mu, x)
            lo = <int64_t>floor((y - a - eps_eff) / h) + 1
            hi = <int64_t>ceil((y - a + eps_eff) / h) - 1
            if lo < 0:
                lo = 0
            if hi > n - 1:
                hi = n - 1
            lov[i] = lo
            hiv[i] = hi
            if hi >= lo:
                total = total + (hi - lo + 1)
            pv[i + 1] = total

    indices = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] iv = indices
    cdef int64_t pos = 0, j
    with nogil:
        for i in range(n):
            for j in range(lov[i], hiv[i] + 1):
                iv[pos] = j
                pos = pos + 1
    return indptr, indices


def preimages_scalar(int code, double mu, double y):
    _check_code(code)
    cdef double disc, s, t, v0, v1
    if code == 0:
        disc = 1.0 - 4.0 * y / mu
        if disc < 0.0:
            return ()
        s = sqrt(disc)
        if s == 0.0:
            return ((1.0 - s) * 0.5,)
        return ((1.0 - s) * 0.5, (1.0 + s) * 0.5)
    t = y / mu
    if t > 1.0 or t < 0.0:
        return ()
    v0 = asin(t) / M_PI
    v1 = 1.0 - v0
    if v1 == v0:
        return (v0,)
    return (v0, v1)


def backward_trails(int code, double mu, double x, long depth, long trails, seed):
    _check_code(code)
    cdef long stride = depth + 1
    flat = np.zeros(trails * stride, dtype=np.float64)
    lengths = np.ones(trails, dtype=np.int64)
    cdef double[::1] fv = flat
    cdef int64_t[::1] lv = lengths

    cdef uint64_t master = <uint64_t>seed
    cdef uint64_t sub, z
    cdef double c1
    if code == 0:
        c1 = mu * 0.25
    else:
        c1 = mu
    cdef long t, step, m
    cdef double cur, disc, s, tt, v0, v1, u, chosen
    cdef int nc, cand0, cand1

    with nogil:
        for t in range(trails):
            master = master + GAMMA
            sub = _mix(master)
            fv[t * stride] = x
            cur = x
            m = 1
            for step in range(depth):
                cand0 = 0
                cand1 = 0
                if code == 0:
                    disc = 1.0 - 4.0 * cur / mu
                    if disc >= 0.0:
                        s = sqrt(disc)
                        v0 = (1.0 - s) * 0.5
                        v1 = (1.0 + s) * 0.5
                        if v0 <= c1:
                            cand0 = 1
                        if s > 0.0 and v1 <= c1:
                            cand1 = 1
                else:
                    tt = cur / mu
                    if 0.0 <= tt <= 1.0:
                        v0 = asin(tt) / M_PI
                        v1 = 1.0 - v0
                        if v0 <= c1:
                            cand0 = 1
                        if v1 != v0 and v1 <= c1:
                            cand1 = 1
                nc = cand0 + cand1
                if nc == 0:
                    break
                if nc == 2:
                    sub = sub + GAMMA
                    z = _mix(sub)
                    u = (<double>(z >> 11)) * U01
                    if u < 0.5:
                        chosen = v0
                    else:
                        chosen = v1
                elif cand0 == 1:
                    chosen = v0
                else:
                    chosen = v1
                cur = chosen
                fv[t * stride + m] = cur
                m = m + 1
            lv[t] = m
    return flat, lengths
