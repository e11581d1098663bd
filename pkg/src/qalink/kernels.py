"""Hot combinatorial kernels.

Two exhaustive enumerations dominate runtime: the Kauffman bracket state sum
(2^n smoothing states) and the spanning-tree census behind the determinant
oracle.  Each has a numba kernel and a vectorised numpy fallback; which one
runs is decided once, at import, by :mod:`qalink._accel`.
"""

from itertools import combinations, islice

import numpy as np

from qalink._accel import USE_NUMBA, njit

_CHUNK = 4096


@njit
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit
def _bracket_histogram_jit(pairs_a, pairs_b, n_edges):
    n = pairs_a.shape[0]
    hist = np.zeros((n + 1, n_edges + 1), dtype=np.int64)
    parent = np.empty(n_edges, dtype=np.int64)
    for state in range(1 << n):
        for e in range(n_edges):
            parent[e] = e
        n_a = 0
        for j in range(n):
            if (state >> j) & 1:
                row = pairs_a[j]
                n_a += 1
            else:
                row = pairs_b[j]
            for p in range(2):
                ra = _find(parent, row[2 * p])
                rb = _find(parent, row[2 * p + 1])
                if ra != rb:
                    parent[ra] = rb
        loops = 0
        for e in range(n_edges):
            if _find(parent, e) == e:
                loops += 1
        hist[n_a, loops] += 1
    return hist


def _propagate_min(labels, us, vs):
    """Min-label propagation along joins ``us[:, k] ~ vs[:, k]`` (row-wise)."""
    rows = np.arange(labels.shape[0])[:, None]
    while True:
        lu = labels[rows, us]
        lv = labels[rows, vs]
        m = np.minimum(lu, lv)
        if np.array_equal(m, lu) and np.array_equal(m, lv):
            return labels
        # several joins may write the same cell; the minimum wins eventually
        np.minimum.at(labels, (np.broadcast_to(rows, us.shape), us), m)
        np.minimum.at(labels, (np.broadcast_to(rows, vs.shape), vs), m)
        # pointer jumping keeps the iteration count logarithmic-ish
        labels = np.take_along_axis(labels, labels, axis=1)


def _bracket_histogram_np(pairs_a, pairs_b, n_edges):
    n = pairs_a.shape[0]
    hist = np.zeros((n + 1, n_edges + 1), dtype=np.int64)
    shifts = np.arange(n)
    for start in range(0, 1 << n, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, 1 << n))
        bits = ((states[:, None] >> shifts) & 1).astype(bool)
        sel = np.where(bits[:, :, None], pairs_a[None, :, :], pairs_b[None, :, :])
        us = np.concatenate([sel[:, :, 0], sel[:, :, 2]], axis=1)
        vs = np.concatenate([sel[:, :, 1], sel[:, :, 3]], axis=1)
        labels = np.tile(np.arange(n_edges), (len(states), 1))
        labels = _propagate_min(labels, us, vs)
        loops = (labels == np.arange(n_edges)).sum(axis=1)
        np.add.at(hist, (bits.sum(axis=1), loops), 1)
    return hist


def bracket_histogram(pairs_a, pairs_b, n_edges, use_numba=None):
    """Count smoothing states by (number of A-smoothings, number of loops).

    ``pairs_a[j] = (e0, e1, e2, e3)`` means the A-smoothing of crossing ``j``
    joins edge ``e0`` to ``e1`` and ``e2`` to ``e3``; ``pairs_b`` likewise.
    """
    pairs_a = np.ascontiguousarray(pairs_a, dtype=np.int64).reshape(-1, 4)
    pairs_b = np.ascontiguousarray(pairs_b, dtype=np.int64).reshape(-1, 4)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _bracket_histogram_jit(pairs_a, pairs_b, n_edges)
    return _bracket_histogram_np(pairs_a, pairs_b, n_edges)


@njit
def _tree_census_jit(n_vertices, eu, ev, positive):
    m = eu.shape[0]
    r = n_vertices - 1
    hist = np.zeros(r + 1, dtype=np.int64)
    if r == 0:
        hist[0] = 1
        return hist
    if m < r:
        return hist
    idx = np.arange(r)
    parent = np.empty(n_vertices, dtype=np.int64)
    while True:
        for v in range(n_vertices):
            parent[v] = v
        ok = True
        k = 0
        for t in range(r):
            e = idx[t]
            a = _find(parent, eu[e])
            b = _find(parent, ev[e])
            if a == b:
                ok = False
                break
            parent[a] = b
            k += positive[e]
        if ok:
            hist[k] += 1
        # next combination in lexicographic order
        i = r - 1
        while i >= 0 and idx[i] == m - r + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, r):
            idx[j] = idx[j - 1] + 1
    return hist


def _tree_census_np(n_vertices, eu, ev, positive):
    r = n_vertices - 1
    hist = np.zeros(r + 1, dtype=np.int64)
    if r == 0:
        hist[0] = 1
        return hist
    it = combinations(range(len(eu)), r)
    while True:
        block = np.array(list(islice(it, _CHUNK)), dtype=np.int64)
        if block.size == 0:
            return hist
        labels = np.tile(np.arange(n_vertices), (len(block), 1))
        labels = _propagate_min(labels, eu[block], ev[block])
        spanning = (labels == 0).all(axis=1)
        np.add.at(hist, positive[block[spanning]].sum(axis=1), 1)


def tree_census(n_vertices, eu, ev, positive, use_numba=None):
    """Histogram of spanning trees by number of positive edges.

    Loops must be removed by the caller.  Cost is C(m, n_vertices - 1).
    """
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    positive = np.ascontiguousarray(positive, dtype=np.int64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _tree_census_jit(n_vertices, eu, ev, positive)
    return _tree_census_np(n_vertices, eu, ev, positive)
