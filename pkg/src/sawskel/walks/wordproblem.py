"""Word-problem enumeration from a self-intersection oracle.

``algorithm_M`` builds ``T = WP ∩ S^{<=n}`` level by level using only the
question "does this word label a self-intersecting walk?".  A word of length
``i`` that self-intersects joins ``T`` when it has no proper factor in ``T``
(it is a simple cycle) or when deleting the first occurrence of some factor
``v`` in ``T`` leaves a word in ``T``.
"""
from __future__ import annotations

from itertools import product
from typing import List, Set

import numpy as np

from ..errors import ResourceCapError, SpecError
from ..groups.core import DEFAULT_BALL_CAP, Group, Word


def _digits(codes: np.ndarray, length: int, k: int) -> np.ndarray:
    out = np.empty((len(codes), length), dtype=np.int64)
    c = codes.copy()
    for j in range(length - 1, -1, -1):
        out[:, j] = c % k
        c //= k
    return out


def _decode(code: int, length: int, k: int) -> Word:
    out = []
    for _ in range(length):
        code, r = divmod(code, k)
        out.append(r)
    return tuple(reversed(out))


def algorithm_M(group: Group, n: int, cap: int = DEFAULT_BALL_CAP) -> Set[Word]:
    """Words of length ``<= n`` evaluating to the identity, via the level loop.

    Words of length ``i`` are integer codes in base ``|S|``; the walk trace,
    factor membership and factor deletion are evaluated on whole levels at
    once with numpy.
    """
    if n < 2:
        raise SpecError("algorithm_M needs n >= 2")
    k = group.degree
    if k ** n > 5 * 10**7:
        raise ResourceCapError(f"|S|^n = {k ** n} words is beyond the supported range")
    nbr = group.ball(n, cap).neighbors
    member = {}  # length -> boolean lookup over codes
    powk = [k**e for e in range(n + 1)]

    # traces of all words of the current length; non-SAW flags carried along
    trace = np.zeros((1, 1), dtype=np.int32)
    non_saw = np.zeros(1, dtype=bool)
    for i in range(1, n + 1):
        m = len(trace)
        last = np.repeat(trace[:, -1], k)
        letters = np.tile(np.arange(k), m)
        nxt = nbr[last, letters]
        trace = np.concatenate([np.repeat(trace, k, axis=0), nxt[:, None]], axis=1)
        non_saw = np.repeat(non_saw, k) | (trace[:, :-1] == nxt[:, None]).any(axis=1)
        if i == 1:
            continue
        in_t = np.zeros(powk[i], dtype=bool)
        if i == 2:
            in_t[:] = non_saw
            member[2] = in_t
            continue
        codes = np.nonzero(non_saw)[0]
        digits = _digits(codes, i, k)
        has_factor = np.zeros(len(codes), dtype=bool)
        reducible = np.zeros(len(codes), dtype=bool)
        for length in range(2, i):
            table = member[length]
            rest = i - length
            # factor codes at every start position
            facs = np.zeros((len(codes), rest + 1), dtype=np.int64)
            for j in range(rest + 1):
                f = np.zeros(len(codes), dtype=np.int64)
                for t in range(length):
                    f = f * k + digits[:, j + t]
                facs[:, j] = f
            present = table[facs]
            has_factor |= present.any(axis=1)
            if rest < 2:
                continue
            residue_table = member[rest]
            for j in range(rest + 1):
                first = present[:, j].copy()
                for jj in range(j):
                    first &= facs[:, jj] != facs[:, j]
                if not first.any():
                    continue
                head = codes // powk[i - j] if j else np.zeros_like(codes)
                tail = codes % powk[i - j - length]
                residue = head * powk[i - j - length] + tail
                reducible |= first & residue_table[residue]
        in_t[codes[~has_factor | reducible]] = True
        member[i] = in_t
    out: Set[Word] = set()
    for length, table in member.items():
        for code in np.nonzero(table)[0]:
            out.add(_decode(int(code), length, k))
    return out


def algorithm_M_reference(group: Group, n: int) -> Set[Word]:
    """Literal transcription of the level loop over explicit words (small n only)."""
    if n < 2:
        raise SpecError("algorithm_M needs n >= 2")
    k = group.degree

    def in_l(w: Word) -> bool:
        return not group.is_saw(w)

    def contains(w: Word, v: Word) -> int:
        for j in range(len(w) - len(v) + 1):
            if w[j:j + len(v)] == v:
                return j
        return -1

    t: Set[Word] = set()
    for w in product(range(k), repeat=2):
        if in_l(w):
            t.add(w)
    for i in range(3, n + 1):
        for w in product(range(k), repeat=i):
            if not in_l(w):
                continue
            if not any(contains(w, v) >= 0 for v in t):
                t.add(w)
            for v in list(t):
                j = contains(w, v)
                if j >= 0 and w[:j] + w[j + len(v):] in t:
                    t.add(w)
    return t


def direct_word_problem(group: Group, n: int) -> Set[Word]:
    """``{w in S^{<=n} : w = 1}`` by evaluating every word with the backend."""
    be = group.backend
    ident = be.identity()
    k = group.degree
    out: Set[Word] = set()
    stack: List = [((), ident)]
    while stack:
        w, g = stack.pop()
        if w and g == ident:
            out.add(w)
        if len(w) < n:
            for s in range(k):
                stack.append((w + (s,), be.mul(g, group.images[s])))
    return out
