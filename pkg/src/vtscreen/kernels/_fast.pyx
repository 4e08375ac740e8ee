# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernel backend.

Twin of ``_pure.py``: identical operations in identical order (plain C
doubles, no fast-math), so results match the pure backend bit for bit.
Keep the two files in lockstep when touching either.
"""

from libc.math cimport sqrt


cdef inline double _clamp(double c) nogil:
    if c > 1.0:
        return 1.0
    if c < -1.0:
        return -1.0
    return c

import numpy as np

cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline double _other_score(double vs, double ts) nogil:
    cdef double p = (1.0 - vs) * (1.0 - ts)
    cdef double q = (1.0 + vs) * (1.0 + ts)
    if p < 0.0:
        p = 0.0
    if q < 0.0:
        q = 0.0
    return 0.5 * (sqrt(p) - sqrt(q))


def other_score(double vs, double ts):
    """Negative-class score for one query pair (see pure backend docs)."""
    return _other_score(vs, ts)


def sparse_cosine(const i64[:] ids_a, const double[:] wa,
                  const i64[:] ids_b, const double[:] wb):
    """Cosine of two sparse vectors given as sorted id / weight arrays."""
    cdef Py_ssize_t na = ids_a.shape[0]
    cdef Py_ssize_t nb = ids_b.shape[0]
    cdef Py_ssize_t i = 0, j = 0
    cdef double dot = 0.0, na2 = 0.0, nb2 = 0.0
    cdef i64 ka, kb

    while i < na and j < nb:
        ka = ids_a[i]
        kb = ids_b[j]
        if ka == kb:
            dot += wa[i] * wb[j]
            i += 1
            j += 1
        elif ka < kb:
            i += 1
        else:
            j += 1

    for i in range(na):
        na2 += wa[i] * wa[i]
    for j in range(nb):
        nb2 += wb[j] * wb[j]
    if na2 == 0.0 or nb2 == 0.0:
        return 0.0
    return _clamp(dot / (sqrt(na2) * sqrt(nb2)))


def dense_cosine(const double[:] u, const double[:] v):
    """Cosine of two dense vectors; 0.0 when either has zero norm."""
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t k
    cdef double dot = 0.0, nu = 0.0, nv = 0.0
    for k in range(n):
        dot += u[k] * v[k]
    for k in range(n):
        nu += u[k] * u[k]
    for k in range(n):
        nv += v[k] * v[k]
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return _clamp(dot / (sqrt(nu) * sqrt(nv)))


def pair_accumulate(const double[:] cos_v, const double[:] cos_t):
    """Kahan-compensated (vs, ts, os) totals over the query Cartesian product."""
    cdef Py_ssize_t nv = cos_v.shape[0]
    cdef Py_ssize_t nt = cos_t.shape[0]
    cdef Py_ssize_t i, j
    cdef double vs = 0.0, cvs = 0.0
    cdef double ts = 0.0, cts = 0.0
    cdef double osum = 0.0, cos_ = 0.0
    cdef double v, t, y, s

    for i in range(nv):
        v = cos_v[i]
        for j in range(nt):
            t = cos_t[j]

            y = v - cvs
            s = vs + y
            cvs = (s - vs) - y
            vs = s

            y = t - cts
            s = ts + y
            cts = (s - ts) - y
            ts = s

            y = _other_score(v, t) - cos_
            s = osum + y
            cos_ = (s - osum) - y
            osum = s
    return vs, ts, osum


def cosine_matrix(const double[:, :] a, const double[:, :] b, double[:, ::1] out):
    """Fill ``out[i, j]`` with the cosine of row i of ``a`` and row j of ``b``."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, na2, sna, dot

    cdef double[::1] snb = np.empty(m, dtype=np.float64)
    for j in range(m):
        s = 0.0
        for k in range(d):
            s += b[j, k] * b[j, k]
        snb[j] = sqrt(s)

    for i in range(n):
        na2 = 0.0
        for k in range(d):
            na2 += a[i, k] * a[i, k]
        sna = sqrt(na2)
        for j in range(m):
            if sna == 0.0 or snb[j] == 0.0:
                out[i, j] = 0.0
                continue
            dot = 0.0
            for k in range(d):
                dot += a[i, k] * b[j, k]
            out[i, j] = _clamp(dot / (sna * snb[j]))


def max_cosine_rows(const double[:, :] a, const double[:, :] b, double[:] out):
    """Fill ``out[i]`` with the maximum cosine of row i of ``a`` over rows of ``b``."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, na2, sna, dot, c, best

    cdef double[::1] snb = np.empty(m, dtype=np.float64)
    for j in range(m):
        s = 0.0
        for k in range(d):
            s += b[j, k] * b[j, k]
        snb[j] = sqrt(s)

    for i in range(n):
        na2 = 0.0
        for k in range(d):
            na2 += a[i, k] * a[i, k]
        sna = sqrt(na2)
        best = -2.0
        for j in range(m):
            if sna == 0.0 or snb[j] == 0.0:
                c = 0.0
            else:
                dot = 0.0
                for k in range(d):
                    dot += a[i, k] * b[j, k]
                c = _clamp(dot / (sna * snb[j]))
            if c > best:
                best = c
        out[i] = best
