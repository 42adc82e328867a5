"""Kernel selection and deterministic prefix-sharded execution.

The compiled module is used when it imports; setting ``SAWSKEL_PURE_PYTHON=1``
forces the Python fallback.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _pykernels
from ._pykernels import MODE_BRIDGE, MODE_SAP, MODE_SAW

_compiled = None
if os.environ.get("SAWSKEL_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
SHARD_DEPTH = 3

__all__ = ["BACKEND", "MODE_BRIDGE", "MODE_SAP", "MODE_SAW", "kernel", "run_walk_counts", "saw_prefixes"]


def kernel(name: Optional[str] = None):
    """Return the ``walk_counts`` implementation ("cython", "python" or the default)."""
    if name is None:
        name = BACKEND
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled.walk_counts
    if name == "python":
        return _pykernels.walk_counts
    raise ValueError(f"unknown kernel {name!r}")


def saw_prefixes(nbr: np.ndarray, depth: int) -> List[Tuple[int, ...]]:
    """All self-avoiding words of length ``depth``, in lexicographic order."""
    k = nbr.shape[1]
    level = [((), (0,))]
    for _ in range(depth):
        nxt = []
        for word, verts in level:
            v = verts[-1]
            for s in range(k):
                w = int(nbr[v, s])
                if w >= 0 and w not in verts:
                    nxt.append((word + (s,), verts + (w,)))
        level = nxt
    return [w for w, _ in level]


def run_walk_counts(
    nbr: np.ndarray,
    mode: int,
    n_max: int,
    heights: Optional[Sequence[int]] = None,
    workers: int = 1,
    shard_depth: int = SHARD_DEPTH,
    backend: Optional[str] = None,
) -> np.ndarray:
    """Count walks of every length up to ``n_max``, sharded on length-``shard_depth`` prefixes.

    Shard totals are integers summed in a fixed order, so the result does not
    depend on ``workers``.
    """
    fn = kernel(backend)
    nbr = np.ascontiguousarray(nbr, dtype=np.int32)
    h = None if heights is None else np.ascontiguousarray(heights, dtype=np.int64)
    ext_limit = n_max - 1 if mode == MODE_SAP else n_max
    if ext_limit <= shard_depth:
        return fn(nbr, mode, n_max, h, ())
    head_n = shard_depth if mode == MODE_SAP else shard_depth - 1
    total = np.zeros(n_max + 1, dtype=np.int64)
    total[: head_n + 1] += fn(nbr, mode, head_n, h, ())
    prefixes = saw_prefixes(nbr, shard_depth)

    def shard(p):
        return fn(nbr, mode, n_max, h, p)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(shard, prefixes))
    else:
        parts = [shard(p) for p in prefixes]
    for part in parts:
        total += part
    return total
