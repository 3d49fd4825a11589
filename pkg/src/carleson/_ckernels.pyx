# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, ceil, sqrt, fabs, INFINITY

cnp.import_array()


def arc_accumulate(lo_in, hi_in, w_in, Py_ssize_t M):
    cdef const double[:] lo = np.ascontiguousarray(lo_in, dtype=np.float64)
    cdef const double[:] hi = np.ascontiguousarray(hi_in, dtype=np.float64)
    cdef const double[:] w = np.ascontiguousarray(w_in, dtype=np.float64)
    cdef Py_ssize_t n = lo.shape[0], i, k
    cdef double[:] diff = np.zeros(M + 1)
    cdef double[:] frac = np.zeros(M + 1)
    cdef double a, b, width, turns, shift, base = 0.0, wi, x, sgn
    cdef int side
    for i in range(n):
        wi = w[i]
        a = lo[i]
        b = hi[i]
        width = b - a
        shift = floor(a / M) * M
        a -= shift
        b -= shift
        turns = floor(width / M)
        base += wi * turns
        b -= turns * M
        for side in range(2):
            if side == 0:
                x = b
                sgn = 1.0
            else:
                x = a
                sgn = -1.0
            if x >= M:
                diff[0] += sgn * wi
                diff[M] -= sgn * wi
                x -= M
            k = <Py_ssize_t>floor(x)
            if k > M:
                k = M
            diff[0] += sgn * wi
            diff[k] -= sgn * wi
            frac[k] += sgn * wi * (x - k)
    out = np.empty(M)
    cdef double[:] o = out
    cdef double acc = 0.0
    for k in range(M):
        acc += diff[k]
        o[k] = acc + frac[k] + base
    return out


def arc_max(lo_in, hi_in, v_in, Py_ssize_t M):
    cdef const double[:] lo = np.ascontiguousarray(lo_in, dtype=np.float64)
    cdef const double[:] hi = np.ascontiguousarray(hi_in, dtype=np.float64)
    cdef const double[:] v = np.ascontiguousarray(v_in, dtype=np.float64)
    cdef Py_ssize_t n = lo.shape[0], i, first, last, count, l, r, L, b, size
    cdef int levels = 0
    while (1 << levels) < M:
        levels += 1
    # flat segment tree: level L occupies [off[L], off[L] + (M >> L))
    offsets = np.zeros(levels + 2, dtype=np.int64)
    for L in range(levels + 1):
        offsets[L + 1] = offsets[L] + (M >> L)
    cdef long long[:] off = offsets
    cdef double[:] tree = np.zeros(offsets[levels + 1])
    cdef double a, bb, shift, val
    cdef int piece
    for i in range(n):
        val = v[i]
        a = lo[i]
        bb = hi[i]
        shift = floor(a / M) * M
        a -= shift
        bb -= shift
        first = <Py_ssize_t>floor(a) + 1
        last = <Py_ssize_t>ceil(bb) - 1
        count = last - first + 1
        if count <= 0:
            continue
        if count >= M:
            if val > tree[off[levels]]:
                tree[off[levels]] = val
            continue
        for piece in range(2):
            if piece == 0:
                l = first
                r = last + 1 if last < M else M
            else:
                if last < M:
                    break
                l = 0
                r = last - M + 1
            L = 0
            while l < r:
                if l & 1:
                    if val > tree[off[L] + l]:
                        tree[off[L] + l] = val
                    l += 1
                if r & 1:
                    r -= 1
                    if val > tree[off[L] + r]:
                        tree[off[L] + r] = val
                l >>= 1
                r >>= 1
                L += 1
    for L in range(levels, 0, -1):
        size = M >> L
        for b in range(size):
            val = tree[off[L] + b]
            if val > tree[off[L - 1] + 2 * b]:
                tree[off[L - 1] + 2 * b] = val
            if val > tree[off[L - 1] + 2 * b + 1]:
                tree[off[L - 1] + 2 * b + 1] = val
    return np.asarray(tree[0:M]).copy()


def ball_weights(c_re_in, c_im_in, p_re_in, p_im_in, w_in, double t):
    cdef const double[:] cr = np.ascontiguousarray(c_re_in, dtype=np.float64)
    cdef const double[:] ci = np.ascontiguousarray(c_im_in, dtype=np.float64)
    cdef const double[:] pr = np.ascontiguousarray(p_re_in, dtype=np.float64)
    cdef const double[:] pi = np.ascontiguousarray(p_im_in, dtype=np.float64)
    cdef const double[:] w = np.ascontiguousarray(w_in, dtype=np.float64)
    cdef Py_ssize_t m = cr.shape[0], n = pr.shape[0], i, j
    out = np.zeros(m)
    cdef double[:] o = out
    cdef double t2 = t * t, dr, di, er, ei, acc
    for i in range(m):
        acc = 0.0
        for j in range(n):
            dr = pr[j] - cr[i]
            di = pi[j] - ci[i]
            # 1 - conj(c) p
            er = 1.0 - (cr[i] * pr[j] + ci[i] * pi[j])
            ei = -(cr[i] * pi[j] - ci[i] * pr[j])
            if dr * dr + di * di < t2 * (er * er + ei * ei):
                acc += w[j]
        o[i] = acc
    return out


def min_pseudo_distance(p_re_in, p_im_in):
    re = np.asarray(p_re_in, dtype=np.float64)
    im = np.asarray(p_im_in, dtype=np.float64)
    cdef Py_ssize_t n = re.shape[0], i, j
    if n < 2:
        return np.inf
    order = np.argsort(np.hypot(re, im), kind="stable")
    cdef const double[:] xr = np.ascontiguousarray(re[order])
    cdef const double[:] xi = np.ascontiguousarray(im[order])
    cdef const double[:] r = np.ascontiguousarray(np.hypot(re, im)[order])
    cdef double best = INFINITY, bound, dr, di, er, ei, d
    for i in range(n - 1):
        if best < INFINITY:
            bound = (r[i] + best) / (1.0 + r[i] * best)
        else:
            bound = INFINITY
        for j in range(i + 1, n):
            if r[j] >= bound:
                break
            dr = xr[j] - xr[i]
            di = xi[j] - xi[i]
            er = 1.0 - (xr[i] * xr[j] + xi[i] * xi[j])
            ei = -(xr[i] * xi[j] - xi[i] * xr[j])
            d = sqrt((dr * dr + di * di) / (er * er + ei * ei))
            if d < best:
                best = d
                bound = (r[i] + best) / (1.0 + r[i] * best)
    return best
