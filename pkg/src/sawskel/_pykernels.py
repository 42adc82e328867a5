"""Pure-Python walk-enumeration kernels (fallback for the compiled module).

All kernels walk a breadth-first ball given as an ``int32`` neighbour table
``nbr[v, s]`` (vertex 0 is the identity, -1 means "outside the ball").  The
ball radius must be at least the walk length so that no needed edge is cut
(for polygons ``n // 2 + 1`` suffices, since a closed walk stays that close to 1).

``walk_counts(nbr, mode, n_max, heights, prefix)`` counts walks that start
with the letters ``prefix`` and have length ``>= len(prefix)``:

* ``MODE_SAW``: self-avoiding walks, ``counts[n]`` for each length;
* ``MODE_SAP``: closed words whose open part is self-avoiding, length >= 3,
  counted once per word at the length of the closing step;
* ``MODE_BRIDGE``: self-avoiding walks with ``h(p_0) < h(p_i) <= h(p_n)``.

Closing steps of ``MODE_SAP`` are only counted from depth ``len(prefix)``
on, so shards with disjoint prefixes never double count.
"""
from __future__ import annotations

import numpy as np

MODE_SAW = 0
MODE_SAP = 1
MODE_BRIDGE = 2


def walk_counts(nbr, mode: int, n_max: int, heights=None, prefix=()) -> np.ndarray:
    counts = [0] * (n_max + 1)
    n_vert, k = nbr.shape
    if n_vert == 0:
        return np.asarray(counts, dtype=np.int64)
    table = nbr.tolist()
    h = [0] * n_vert if heights is None else [int(x) for x in heights]
    bridge = mode == MODE_BRIDGE
    ext_limit = n_max - 1 if mode == MODE_SAP else n_max
    h0 = h[0]

    visited = bytearray(n_vert)
    visited[0] = 1
    path = [0]
    hmax = [None]
    for s in prefix:
        w = table[path[-1]][s]
        if w < 0 or visited[w] or (bridge and h[w] <= h0):
            return np.asarray(counts, dtype=np.int64)
        visited[w] = 1
        path.append(w)
        hmax.append(h[w] if hmax[-1] is None else max(hmax[-1], h[w]))
    d0 = len(prefix)
    if d0 > ext_limit:
        return np.asarray(counts, dtype=np.int64)

    if mode == MODE_SAW or (bridge and (d0 == 0 or h[path[-1]] >= hmax[-1])):
        counts[d0] += 1
    nxt = [0]
    while nxt:
        d = d0 + len(nxt) - 1
        if d == n_max or nxt[-1] == k:
            nxt.pop()
            if d > d0:
                visited[path.pop()] = 0
                hmax.pop()
            continue
        s = nxt[-1]
        nxt[-1] += 1
        w = table[path[-1]][s]
        if mode == MODE_SAP and w == 0:
            if d >= 2:
                counts[d + 1] += 1
            continue
        if w < 0 or visited[w] or d == ext_limit or (bridge and h[w] <= h0):
            continue
        visited[w] = 1
        path.append(w)
        top = h[w] if hmax[-1] is None else max(hmax[-1], h[w])
        hmax.append(top)
        if mode == MODE_SAW or (bridge and h[w] >= top):
            counts[d + 1] += 1
        nxt.append(0)
    return np.asarray(counts, dtype=np.int64)
