"""Exact SAW, SAP and bridge counts over a group handle."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import HeightValidationError, SpecError
from ..groups.backends import AffineBackend
from ..groups.core import DEFAULT_BALL_CAP, Group, Word
from ..kernels import MODE_BRIDGE, MODE_SAP, MODE_SAW, run_walk_counts


@dataclass
class WalkCounts:
    """Integer sequence indexed by length, with a certification flag per entry."""

    kind: str
    counts: List[int]
    certified: List[bool]
    fingerprint: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def records(self, start: int = 0) -> List[Dict[str, Any]]:
        return [
            {"kind": self.kind, "n": n, "count": int(c), "certified": bool(ok)}
            for n, (c, ok) in enumerate(zip(self.counts, self.certified))
            if n >= start
        ]

    def root_sequence(self, start: int = 1) -> List[Tuple[int, float]]:
        """``(n, count**(1/n))`` for every positive entry from ``start`` on."""
        return [(n, float(c) ** (1.0 / n)) for n, c in enumerate(self.counts) if n >= max(start, 1) and c > 0]


def _exact(kind: str, group: Group, arr, params) -> WalkCounts:
    counts = [int(x) for x in arr]
    return WalkCounts(kind, counts, [True] * len(counts), group.fingerprint, params)


def count_saws(group: Group, n_max: int, workers: int = 1, cap: int = DEFAULT_BALL_CAP, backend: Optional[str] = None) -> WalkCounts:
    """Number of self-avoiding walks of each length from the identity."""
    if n_max < 0:
        raise SpecError("n_max must be >= 0")
    ball = group.ball(n_max, cap)
    arr = run_walk_counts(ball.neighbors, MODE_SAW, n_max, workers=workers, backend=backend)
    return _exact("saw", group, arr, {"n_max": n_max})


def count_saps(group: Group, n_max: int, workers: int = 1, cap: int = DEFAULT_BALL_CAP, backend: Optional[str] = None) -> WalkCounts:
    """Number of words of each length labelling a simple cycle through the identity.

    Every rotation and orientation is a separate word.  Backtracks ``s s^-1``
    are not cycles, so lengths 0..2 are always zero.
    """
    if n_max < 2:
        raise SpecError("n_max must be >= 2 for polygon counts")
    ball = group.ball(n_max // 2 + 1, cap)
    arr = run_walk_counts(ball.neighbors, MODE_SAP, n_max, workers=workers, backend=backend)
    return _exact("sap", group, arr, {"n_max": n_max})


# -- height functions ----------------------------------------------------------

_LINEAR = re.compile(r"^linear:\s*(-?\d+(?:\s*,\s*-?\d+)*)$")
_INCREMENTS = re.compile(r"^increments:(.+)$")


class HeightFunction:
    """Integer height on group elements, with a record of the validated radius.

    ``"linear:1,0"`` applies the functional to the image of the origin under an
    integer-affine element; ``"increments:a=1,A=-1,b=0,B=0"`` declares the
    change of height along each generator.
    """

    def __init__(self, group: Group, spec: str):
        self.group = group
        self.spec = spec.strip()
        self.validated_radius = -1
        m = _LINEAR.match(self.spec)
        if m:
            if not isinstance(group.backend, AffineBackend):
                raise SpecError("linear heights need an integer-affine group")
            self.functional = tuple(int(x) for x in m.group(1).split(","))
            if len(self.functional) != group.backend.dim:
                raise SpecError(f"linear height needs {group.backend.dim} coefficients")
            self.increments = None
            return
        m = _INCREMENTS.match(self.spec)
        if not m:
            raise SpecError(f"unrecognised height function {spec!r}")
        self.functional = None
        inc = [None] * group.degree
        for item in m.group(1).split(","):
            name, _, val = item.partition("=")
            try:
                inc[group.alphabet.resolve(name.strip())] = int(val)
            except ValueError as exc:
                raise SpecError(f"bad increment {item!r}") from exc
        for s, val in enumerate(inc):
            j = group.alphabet.inverse[s]
            if val is None and inc[j] is not None:
                inc[s] = -inc[j]
        if any(v is None for v in inc):
            raise SpecError("increments must cover every generator or its inverse")
        self.increments = tuple(inc)

    def __repr__(self) -> str:
        return f"HeightFunction({self.spec!r})"

    def of_rep(self, rep) -> int:
        if self.functional is not None:
            return sum(c * x for c, x in zip(self.functional, rep[1]))
        raise ValueError("increment heights are only defined on ball vertices")

    def on_ball(self, ball) -> np.ndarray:
        if self.functional is not None:
            return np.asarray([self.of_rep(e) for e in ball.elements], dtype=np.int64)
        h = np.zeros(ball.size, dtype=np.int64)
        for v in range(1, ball.size):
            h[v] = h[ball.parent[v]] + self.increments[ball.parent_letter[v]]
        return h

    def validate(self, radius: int, cap: int = DEFAULT_BALL_CAP) -> np.ndarray:
        """Check the height axioms on the ball of ``radius``; return the heights.

        Every edge ``v -> v s`` inside the ball must change the height by the
        same amount ``h(s)`` (invariance under the group's left action), and
        every vertex needs a strictly lower and a strictly higher neighbour.
        """
        ball = self.group.ball(radius, cap)
        h = self.on_ball(ball)
        if h[0] != 0:
            raise HeightValidationError("height of the identity is not 0")
        nbr = ball.neighbors
        step = np.asarray([h[nbr[0, s]] for s in range(nbr.shape[1])], dtype=np.int64)
        inside = nbr >= 0
        diffs = np.where(inside, h[np.where(inside, nbr, 0)] - h[:, None], step[None, :])
        bad = np.argwhere(diffs != step[None, :])
        if len(bad):
            v, s = bad[0]
            raise HeightValidationError(
                f"height is not translation invariant along {self.group.alphabet.names[s]!r} "
                f"at {self.group.alphabet.format(ball.geodesic_word(ball.elements[v]))!r}"
            )
        if not (step > 0).any() or not (step < 0).any():
            raise HeightValidationError("some vertex lacks a strictly higher or strictly lower neighbour")
        self.validated_radius = max(self.validated_radius, radius)
        return h

    def word_heights(self, word: Sequence[int]) -> List[int]:
        """Heights of the vertices visited by ``word`` from the identity."""
        if self.functional is not None:
            return [self.of_rep(r) for r in self.group.prefix_reps(word)]
        out = [0]
        for s in word:
            out.append(out[-1] + self.increments[s])
        return out


def as_height(group: Group, h) -> HeightFunction:
    return h if isinstance(h, HeightFunction) else HeightFunction(group, h)


def is_bridge_heights(hs: Sequence[int]) -> bool:
    """``h(p_0) < h(p_i) <= h(p_n)`` for every ``1 <= i <= n``."""
    if len(hs) < 2:
        return False
    return all(hs[0] < x <= hs[-1] for x in hs[1:])


def count_bridges(group: Group, n_max: int, height, workers: int = 1, cap: int = DEFAULT_BALL_CAP, backend: Optional[str] = None) -> WalkCounts:
    """Number of bridges of each length for the given height function."""
    if n_max < 0:
        raise SpecError("n_max must be >= 0")
    height = as_height(group, height)
    radius = n_max + 1
    h = height.validate(radius, cap)
    ball = group.ball(radius, cap)
    arr = run_walk_counts(ball.neighbors, MODE_BRIDGE, n_max, heights=h, workers=workers, backend=backend)
    return _exact("bridge", group, arr, {"n_max": n_max, "height": height.spec, "validated_radius": height.validated_radius})


# -- word-level enumeration helpers -----------------------------------------------

def iter_saw_words(nbr: np.ndarray, n: int) -> Iterator[Word]:
    """All self-avoiding words of length exactly ``n`` in lexicographic order."""
    k = nbr.shape[1]
    word: List[int] = []
    path = [0]
    on_path = {0}

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        v = path[-1]
        for s in range(k):
            w = int(nbr[v, s])
            if w < 0 or w in on_path:
                continue
            word.append(s)
            path.append(w)
            on_path.add(w)
            yield from rec()
            on_path.discard(path.pop())
            word.pop()

    yield from rec()


def saw_words(group: Group, n: int, cap: int = DEFAULT_BALL_CAP) -> List[Word]:
    return list(iter_saw_words(group.ball(n, cap).neighbors, n))


def bridge_words(group: Group, n: int, height, cap: int = DEFAULT_BALL_CAP) -> List[Word]:
    height = as_height(group, height)
    h = height.validate(n + 1, cap)
    ball = group.ball(n + 1, cap)
    out = []
    for w in iter_saw_words(ball.neighbors, n):
        verts = [0]
        for s in w:
            verts.append(int(ball.neighbors[verts[-1], s]))
        if is_bridge_heights([int(h[v]) for v in verts]):
            out.append(w)
    return out
