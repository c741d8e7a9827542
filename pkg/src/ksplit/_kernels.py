"""Integer hot loops: augmenting-path max flow and cut boundary enumeration.

Both kernels are compiled with ``numba.njit`` unless the environment variable
``KSPLIT_DISABLE_NUMBA`` is set to a truthy value (or numba is missing), in
which case the plain Python / vectorised numpy versions are used.  The two
paths are interchangeable and give bit-identical results.

Vertices are 0-based here; callers translate.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "boundary_matrix", "max_flow_arrays", "boundary_matrix_numpy", "max_flow_python"]


def _max_flow(n, ea, eb, cap, s, t):
    # Edmonds-Karp on an undirected multigraph kept as one signed net flow per
    # edge: residual a->b is cap - f, residual b->a is cap + f.
    m = ea.shape[0]
    start = np.zeros(n + 1, np.int64)
    for e in range(m):
        start[ea[e] + 1] += 1
        start[eb[e] + 1] += 1
    for v in range(n):
        start[v + 1] += start[v]
    fill = start.copy()
    adj_e = np.empty(2 * m, np.int64)
    adj_w = np.empty(2 * m, np.int64)
    adj_d = np.empty(2 * m, np.int64)
    for e in range(m):
        a = ea[e]
        b = eb[e]
        adj_e[fill[a]] = e
        adj_w[fill[a]] = b
        adj_d[fill[a]] = 1
        fill[a] += 1
        adj_e[fill[b]] = e
        adj_w[fill[b]] = a
        adj_d[fill[b]] = -1
        fill[b] += 1

    flow = np.zeros(m, np.int64)
    seen = np.zeros(n, np.bool_)
    via = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    value = 0
    while True:
        for v in range(n):
            seen[v] = False
        seen[s] = True
        queue[0] = s
        head = 0
        tail = 1
        while head < tail and not seen[t]:
            v = queue[head]
            head += 1
            for j in range(start[v], start[v + 1]):
                w = adj_w[j]
                if seen[w]:
                    continue
                e = adj_e[j]
                if cap[e] - adj_d[j] * flow[e] > 0:
                    seen[w] = True
                    via[w] = j
                    queue[tail] = w
                    tail += 1
        if not seen[t]:
            break
        # bottleneck, then augment
        bottleneck = -1
        w = t
        while w != s:
            j = via[w]
            r = cap[adj_e[j]] - adj_d[j] * flow[adj_e[j]]
            if bottleneck < 0 or r < bottleneck:
                bottleneck = r
            w = ea[adj_e[j]] if adj_d[j] == 1 else eb[adj_e[j]]
        w = t
        while w != s:
            j = via[w]
            flow[adj_e[j]] += adj_d[j] * bottleneck
            w = ea[adj_e[j]] if adj_d[j] == 1 else eb[adj_e[j]]
        value += bottleneck
    return value, flow, seen


def _boundary_loops(n, ea, eb, masks):
    out = np.zeros((masks.shape[0], ea.shape[0]), np.bool_)
    for i in range(masks.shape[0]):
        mask = masks[i]
        for e in range(ea.shape[0]):
            out[i, e] = ((mask >> ea[e]) & 1) != ((mask >> eb[e]) & 1)
    return out


def boundary_matrix_numpy(n, ea, eb, masks):
    """Row ``i`` flags the edges crossing vertex bitmask ``masks[i]``."""
    masks = np.asarray(masks, np.int64)
    side = (masks[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1
    return side[:, ea] != side[:, eb]


max_flow_python = _max_flow


def _numba_enabled() -> bool:
    flag = os.environ.get("KSPLIT_DISABLE_NUMBA", "").strip().lower()
    if flag in ("1", "true", "yes", "on"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


if _numba_enabled():
    from numba import njit

    max_flow_jit = njit(cache=True)(_max_flow)
    boundary_matrix_jit = njit(cache=True)(_boundary_loops)
    BACKEND = "numba"
    _max_flow_impl = max_flow_jit
    _boundary_impl = boundary_matrix_jit
else:
    max_flow_jit = None
    boundary_matrix_jit = None
    BACKEND = "numpy"
    _max_flow_impl = max_flow_python
    _boundary_impl = boundary_matrix_numpy


def max_flow_arrays(n: int, ea: np.ndarray, eb: np.ndarray, cap: np.ndarray, s: int, t: int):
    """Return ``(value, net_flow, source_side)`` for 0-based int64 arrays."""
    return _max_flow_impl(
        n,
        np.ascontiguousarray(ea, np.int64),
        np.ascontiguousarray(eb, np.int64),
        np.ascontiguousarray(cap, np.int64),
        s,
        t,
    )


def boundary_matrix(n: int, ea: np.ndarray, eb: np.ndarray, masks: np.ndarray) -> np.ndarray:
    return _boundary_impl(
        n,
        np.ascontiguousarray(ea, np.int64),
        np.ascontiguousarray(eb, np.int64),
        np.ascontiguousarray(masks, np.int64),
    )
