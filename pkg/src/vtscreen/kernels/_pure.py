"""Pure-Python kernel backend.

Mirrors the compiled backend in ``_fast.pyx`` operation for operation,
including accumulation order and Kahan compensation, so both backends
produce the same IEEE-754 results. Keep the two files in lockstep when
touching either.
"""

from __future__ import annotations

from math import sqrt


def _as_list(x):
    return x.tolist() if hasattr(x, "tolist") else list(x)


def _clamp(c: float) -> float:
    """Keep a cosine inside [-1, 1]; rounding can push it one ulp outside."""
    if c > 1.0:
        return 1.0
    if c < -1.0:
        return -1.0
    return c


def other_score(vs: float, ts: float) -> float:
    """Negative-class score for one query pair.

    Equals -cos((a + b) / 2) where a, b are the angles whose cosines are
    ``vs`` and ``ts``, via the half-angle product form. Products are
    floored at zero so inputs a rounding error outside [-1, 1] cannot
    produce a domain error.
    """
    p = (1.0 - vs) * (1.0 - ts)
    if p < 0.0:
        p = 0.0
    q = (1.0 + vs) * (1.0 + ts)
    if q < 0.0:
        q = 0.0
    return 0.5 * (sqrt(p) - sqrt(q))


def sparse_cosine(ids_a, wa, ids_b, wb) -> float:
    """Cosine of two sparse vectors given as sorted id / weight arrays.

    Returns 0.0 when either vector has zero norm.
    """
    ids_a = _as_list(ids_a)
    wa = _as_list(wa)
    ids_b = _as_list(ids_b)
    wb = _as_list(wb)
    na = len(ids_a)
    nb = len(ids_b)

    dot = 0.0
    i = 0
    j = 0
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

    na2 = 0.0
    for i in range(na):
        na2 += wa[i] * wa[i]
    nb2 = 0.0
    for j in range(nb):
        nb2 += wb[j] * wb[j]
    if na2 == 0.0 or nb2 == 0.0:
        return 0.0
    return _clamp(dot / (sqrt(na2) * sqrt(nb2)))


def dense_cosine(u, v) -> float:
    """Cosine of two dense vectors; 0.0 when either has zero norm."""
    u = _as_list(u)
    v = _as_list(v)
    n = len(u)
    dot = 0.0
    for k in range(n):
        dot += u[k] * v[k]
    nu = 0.0
    for k in range(n):
        nu += u[k] * u[k]
    nv = 0.0
    for k in range(n):
        nv += v[k] * v[k]
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return _clamp(dot / (sqrt(nu) * sqrt(nv)))


def pair_accumulate(cos_v, cos_t):
    """Accumulate (vs, ts, os) over the Cartesian product of query cosines.

    Kahan-compensated sums, iterated vaccine-major, keep the totals
    independent of float noise buildup for large query sets.
    """
    cos_v = _as_list(cos_v)
    cos_t = _as_list(cos_t)
    vs = cvs = 0.0
    ts = cts = 0.0
    osum = cos_ = 0.0
    for i in range(len(cos_v)):
        v = cos_v[i]
        for j in range(len(cos_t)):
            t = cos_t[j]

            y = v - cvs
            s = vs + y
            cvs = (s - vs) - y
            vs = s

            y = t - cts
            s = ts + y
            cts = (s - ts) - y
            ts = s

            y = other_score(v, t) - cos_
            s = osum + y
            cos_ = (s - osum) - y
            osum = s
    return vs, ts, osum


def cosine_matrix(a, b, out) -> None:
    """Fill ``out[i, j]`` with the cosine of row i of ``a`` and row j of ``b``."""
    a = [_as_list(row) for row in a]
    b = [_as_list(row) for row in b]
    m = len(b)
    d = len(a[0]) if a else (len(b[0]) if b else 0)

    snb = [0.0] * m
    for j in range(m):
        s = 0.0
        for k in range(d):
            s += b[j][k] * b[j][k]
        snb[j] = sqrt(s)

    for i in range(len(a)):
        na2 = 0.0
        for k in range(d):
            na2 += a[i][k] * a[i][k]
        sna = sqrt(na2)
        for j in range(m):
            if sna == 0.0 or snb[j] == 0.0:
                out[i, j] = 0.0
                continue
            dot = 0.0
            for k in range(d):
                dot += a[i][k] * b[j][k]
            out[i, j] = _clamp(dot / (sna * snb[j]))


def max_cosine_rows(a, b, out) -> None:
    """Fill ``out[i]`` with the maximum cosine of row i of ``a`` over rows of ``b``."""
    a = [_as_list(row) for row in a]
    b = [_as_list(row) for row in b]
    m = len(b)
    d = len(a[0]) if a else (len(b[0]) if b else 0)

    snb = [0.0] * m
    for j in range(m):
        s = 0.0
        for k in range(d):
            s += b[j][k] * b[j][k]
        snb[j] = sqrt(s)

    for i in range(len(a)):
        na2 = 0.0
        for k in range(d):
            na2 += a[i][k] * a[i][k]
        sna = sqrt(na2)
        best = -2.0
        for j in range(m):
            if sna == 0.0 or snb[j] == 0.0:
                c = 0.0
            else:
                dot = 0.0
                for k in range(d):
                    dot += a[i][k] * b[j][k]
                c = _clamp(dot / (sna * snb[j]))
            if c > best:
                best = c
        out[i] = best
