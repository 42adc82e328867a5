# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled walk-enumeration kernels.

Same contract as ``_pykernels``; see that module for the semantics.
"""
import numpy as np
cimport numpy as cnp
from libc.limits cimport LLONG_MIN

cnp.import_array()

cdef enum:
    MODE_SAW = 0
    MODE_SAP = 1
    MODE_BRIDGE = 2


def walk_counts(const int[:, ::1] nbr, int mode, int n_max, heights=None, prefix=()):
    cdef Py_ssize_t n_vert = nbr.shape[0]
    cdef int k = nbr.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts_arr = np.zeros(n_max + 1, dtype=np.int64)
    if n_vert == 0:
        return counts_arr
    cdef long long[::1] counts = counts_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] h_arr
    if heights is None:
        h_arr = np.zeros(n_vert, dtype=np.int64)
    else:
        h_arr = np.ascontiguousarray(heights, dtype=np.int64)
    cdef long long[::1] h = h_arr
    cdef unsigned char[::1] visited = np.zeros(n_vert, dtype=np.uint8)
    cdef int depth_cap = n_max + 2
    cdef int[::1] path = np.zeros(depth_cap, dtype=np.int32)
    cdef int[::1] nxt = np.zeros(depth_cap, dtype=np.int32)
    cdef long long[::1] hmax = np.zeros(depth_cap, dtype=np.int64)
    cdef int ext_limit = n_max - 1 if mode == MODE_SAP else n_max
    cdef long long h0 = h[0]
    cdef int d0 = len(prefix)
    cdef int v, w, s, d
    cdef bint bridge = mode == MODE_BRIDGE

    # replay the prefix; an invalid prefix contributes nothing
    visited[0] = 1
    path[0] = 0
    hmax[0] = LLONG_MIN
    v = 0
    for d in range(d0):
        s = prefix[d]
        w = nbr[v, s]
        if w < 0 or visited[w] or (bridge and h[w] <= h0):
            return counts_arr
        visited[w] = 1
        path[d + 1] = w
        hmax[d + 1] = hmax[d] if hmax[d] > h[w] else h[w]
        v = w
    if d0 > ext_limit:
        return counts_arr

    with nogil:
        d = d0
        if mode == MODE_SAW or (bridge and (d == 0 or h[path[d]] >= hmax[d])):
            counts[d] += 1
        nxt[d] = 0
        while d >= d0:
            if d == n_max or nxt[d] == k:
                if d > d0:
                    visited[path[d]] = 0
                d -= 1
                continue
            s = nxt[d]
            nxt[d] += 1
            w = nbr[path[d], s]
            if mode == MODE_SAP and w == 0:
                if d >= 2:
                    counts[d + 1] += 1
                continue
            if w < 0 or visited[w] or d == ext_limit:
                continue
            if bridge and h[w] <= h0:
                continue
            d += 1
            path[d] = w
            visited[w] = 1
            hmax[d] = hmax[d - 1] if hmax[d - 1] > h[w] else h[w]
            if mode == MODE_SAW or (bridge and h[w] >= hmax[d]):
                counts[d] += 1
            nxt[d] = 0
    return counts_arr
