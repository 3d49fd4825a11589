"""Pure numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` exactly in semantics; the compiled module
is preferred when it imports.  Interval endpoints are in "bin units" on a
circle of ``M`` bins: bin ``j`` is ``[j, j + 1)`` and the circle wraps
every ``M`` units.
"""
from __future__ import annotations

import numpy as np


def _normalize(lo, hi, M):
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    width = hi - lo
    shift = np.floor(lo / M) * M
    return lo - shift, hi - shift, width


def arc_accumulate(lo, hi, w, M):
    """Bin-averaged sum of weighted circular interval indicators.

    ``out[j] = sum_i w_i * |[lo_i, hi_i] cap bin_j|``, wrapping mod ``M``.
    """
    lo, hi, width = _normalize(lo, hi, M)
    w = np.asarray(w, dtype=float)
    # full turns contribute uniformly
    turns = np.floor(width / M)
    base = float(np.sum(w * turns))
    hi = hi - turns * M
    # coverage = R(hi) - R(lo), with R(x)[j] = clip(x - j, 0, 1) (+ wrap for x >= M)
    diff = np.zeros(M + 1)
    frac = np.zeros(M + 1)
    for x, sgn in ((hi, 1.0), (lo, -1.0)):
        wrap = x >= M
        if np.any(wrap):
            diff[0] += sgn * np.sum(w[wrap])
            diff[M] -= sgn * np.sum(w[wrap])
        xx = np.where(wrap, x - M, x)
        k = np.minimum(np.floor(xx).astype(np.int64), M)
        diff[0] += sgn * np.sum(w)
        np.add.at(diff, k, -sgn * w)
        np.add.at(frac, k, sgn * w * (xx - k))
    out = np.cumsum(diff)[:M] + frac[:M]
    return out + base


def _segment_decompose(first, last, M):
    """Yield ``(level, block_index, mask)`` covering ``[first, last]`` (no wrap)."""
    l = first.copy()
    r = last + 1
    level = 0
    active = l < r
    while np.any(active):
        take_l = active & (l & 1 == 1)
        yield level, l, take_l
        l = np.where(take_l, l + 1, l)
        take_r = active & (r & 1 == 1)
        yield level, r - 1, take_r
        r = np.where(take_r, r - 1, r)
        l >>= 1
        r >>= 1
        level += 1
        active = l < r


def arc_max(lo, hi, v, M):
    """Pointwise max over open circular intervals evaluated at integer samples.

    ``out[j] = max{v_i : lo_i < j < hi_i (mod M)}``, 0 where no interval
    covers ``j``; values are expected to be non-negative.  ``M`` must be a
    power of two.
    """
    lo, hi, width = _normalize(lo, hi, M)
    v = np.asarray(v, dtype=float)
    first = np.floor(lo).astype(np.int64) + 1
    last = np.ceil(hi).astype(np.int64) - 1
    count = last - first + 1
    levels = M.bit_length() - 1
    tree = [np.zeros(M >> L) for L in range(levels + 1)]
    full = count >= M
    if np.any(full):
        tree[levels][0] = max(tree[levels][0], float(np.max(v[full])))
    keep = (~full) & (count > 0)
    first, last, vals = first[keep], last[keep], v[keep]
    # split wrapping intervals
    wraps = last >= M
    f1 = np.concatenate([first, np.zeros(np.count_nonzero(wraps), dtype=np.int64)])
    l1 = np.concatenate([np.where(wraps, M - 1, last), last[wraps] - M])
    v1 = np.concatenate([vals, vals[wraps]])
    for level, idx, mask in _segment_decompose(f1, l1, M):
        if np.any(mask):
            np.maximum.at(tree[level], idx[mask], v1[mask])
    for L in range(levels, 0, -1):
        parent = tree[L]
        child = tree[L - 1]
        np.maximum(child, np.repeat(parent, 2), out=child)
    return tree[0]


def ball_weights(c_re, c_im, p_re, p_im, w, t):
    """For each center, total weight of points within pseudo-distance ``t``."""
    c = np.asarray(c_re, dtype=float) + 1j * np.asarray(c_im, dtype=float)
    p = np.asarray(p_re, dtype=float) + 1j * np.asarray(p_im, dtype=float)
    w = np.asarray(w, dtype=float)
    out = np.zeros(c.shape[0])
    t2 = t * t
    chunk = max(1, 2_000_000 // max(p.shape[0], 1))
    for s in range(0, c.shape[0], chunk):
        cc = c[s : s + chunk, None]
        num = np.abs(p[None, :] - cc) ** 2
        den = np.abs(1.0 - np.conj(cc) * p[None, :]) ** 2
        out[s : s + chunk] = (num < t2 * den) @ w
    return out


def min_pseudo_distance(p_re, p_im):
    """Smallest ``|phi_w(z)|`` over distinct pairs of points."""
    z = np.asarray(p_re, dtype=float) + 1j * np.asarray(p_im, dtype=float)
    n = z.shape[0]
    if n < 2:
        return np.inf
    order = np.argsort(np.abs(z), kind="stable")
    z = z[order]
    r = np.abs(z)
    best = np.inf
    for i in range(n - 1):
        # the radial bound (r_j - r_i) / (1 - r_i r_j) <= |phi| prunes far shells
        j = i + 1
        stop = n
        if np.isfinite(best):
            bound = (r[i] + best) / (1.0 + r[i] * best)
            stop = int(np.searchsorted(r, bound, side="left"))
        if stop <= j:
            continue
        w = z[j:stop]
        d = np.abs(w - z[i]) / np.abs(1.0 - np.conj(z[i]) * w)
        best = min(best, float(np.min(d)))
    return best
