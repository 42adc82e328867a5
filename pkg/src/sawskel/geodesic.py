"""Geodesic words, geodesic growth and its exponential rate."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import SpecError
from .groups.core import DEFAULT_BALL_CAP, Ball, Group


def is_geodesic(group: Group, word, ball: Optional[Ball] = None, cap: int = DEFAULT_BALL_CAP) -> bool:
    """True iff no shorter word reaches the same element."""
    w = group.word(word)
    if ball is None or ball.radius < len(w):
        ball = group.ball(len(w), cap)
    return ball.norm_of(group.evaluate_rep(w)) == len(w)


@dataclass
class GeodesicCounts:
    strict: List[int]
    fingerprint: str
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def cumulative(self) -> List[int]:
        out, acc = [], 0
        for c in self.strict:
            acc += c
            out.append(acc)
        return out

    def records(self) -> List[Dict[str, Any]]:
        rows = [{"kind": "geodesic-strict", "n": n, "count": c, "certified": True} for n, c in enumerate(self.strict)]
        rows += [{"kind": "geodesic-cumulative", "n": n, "count": c, "certified": True} for n, c in enumerate(self.cumulative)]
        return rows


def _count_dp(ball: Ball, n_max: int) -> List[int]:
    # number of geodesic words ending at each vertex, accumulated shell by shell
    nbr = ball.neighbors
    norms = ball.norms
    geo = [0] * ball.size
    geo[0] = 1
    strict = [1]
    bounds = np.cumsum([0] + ball.shells)
    for r in range(n_max):
        for u in range(bounds[r], bounds[r + 1]):
            gu = geo[u]
            for w in nbr[u]:
                if w >= 0 and norms[w] == r + 1:
                    geo[w] += gu
        strict.append(sum(geo[bounds[r + 1]:bounds[r + 2]]))
    return strict


def _count_dfs(ball: Ball, n_max: int) -> List[int]:
    # word-tree search that abandons a prefix as soon as it stops being geodesic
    nbr = ball.neighbors.tolist()
    norms = ball.norms.tolist()
    strict = [0] * (n_max + 1)
    stack = [(0, 0)]
    while stack:
        v, d = stack.pop()
        strict[d] += 1
        if d == n_max:
            continue
        for w in nbr[v]:
            if w >= 0 and norms[w] == d + 1:
                stack.append((w, d + 1))
    return strict


def count_geodesics(group: Group, n_max: int, method: str = "dp", cap: int = DEFAULT_BALL_CAP) -> GeodesicCounts:
    """Strict counts of geodesic words of each length ``0..n_max``.

    ``method="dp"`` sums path counts shell by shell on the ball; ``"dfs"``
    walks the word tree pruned at non-geodesic prefixes.  Both give the same
    numbers since geodesics are prefix closed.
    """
    if n_max < 0:
        raise SpecError("n_max must be >= 0")
    ball = group.ball(n_max, cap)
    if method == "dp":
        strict = _count_dp(ball, n_max)
    elif method == "dfs":
        strict = _count_dfs(ball, n_max)
    else:
        raise SpecError(f"unknown geodesic counting method {method!r}")
    return GeodesicCounts(strict, group.fingerprint, {"n_max": n_max})


@dataclass
class GeodesicRate:
    roots: List[Tuple[int, float]]
    two_step: List[Tuple[int, float]]
    cumulative_min: Optional[Tuple[int, float]]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "strict_root": [{"n": n, "value": v} for n, v in self.roots],
            "two_step_ratio": [{"n": n, "value": v} for n, v in self.two_step],
            "cumulative_root_min": None if self.cumulative_min is None else {"n": self.cumulative_min[0], "value": self.cumulative_min[1]},
        }


def geodesic_connective(counts: GeodesicCounts) -> GeodesicRate:
    """Rate estimates: ``strict(n)^(1/n)``, ``strict(n+2)/strict(n)`` and ``min Gamma(n)^(1/n)``.

    The two-step ratio estimates the square of the rate; it is the stable
    choice when counts oscillate with the parity of ``n``.
    """
    s = counts.strict
    roots = [(n, s[n] ** (1.0 / n)) for n in range(1, len(s)) if s[n] > 0]
    two = [(n, s[n + 2] / s[n]) for n in range(1, len(s) - 2) if s[n] > 0]
    cum = counts.cumulative
    cands = [(n, cum[n] ** (1.0 / n)) for n in range(1, len(cum))]
    return GeodesicRate(roots, two, min(cands, key=lambda x: x[1]) if cands else None)
