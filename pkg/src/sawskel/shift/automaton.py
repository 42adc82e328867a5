"""Avoid-automata for forbidden languages.

``compile_forbidden`` turns a pattern for the forbidden set F into the
deterministic automaton of words with no factor in F: Thompson NFA for
``S* F S*``, subset construction, complement (drop the absorbing "seen a
forbidden factor" states), then optional trimming to the states that lie
on bi-infinite paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..errors import ResourceCapError
from .regex import Alt, Cat, Eps, Lit, Node, Star

STATE_CAP = 10**6


class _NFA:
    def __init__(self, k: int):
        self.k = k
        self.eps: List[List[int]] = []
        self.moves: List[List[Tuple[int, int]]] = []

    def new(self) -> int:
        self.eps.append([])
        self.moves.append([])
        return len(self.eps) - 1

    def build(self, node: Node) -> Tuple[int, int]:
        start, end = self.new(), self.new()
        if isinstance(node, Lit):
            self.moves[start].append((node.symbol, end))
        elif isinstance(node, Eps):
            self.eps[start].append(end)
        elif isinstance(node, Cat):
            cur = start
            for part in node.parts:
                s, e = self.build(part)
                self.eps[cur].append(s)
                cur = e
            self.eps[cur].append(end)
        elif isinstance(node, Alt):
            for opt in node.options:
                s, e = self.build(opt)
                self.eps[start].append(s)
                self.eps[e].append(end)
        elif isinstance(node, Star):
            s, e = self.build(node.inner)
            self.eps[start] += [s, end]
            self.eps[e] += [s, end]
        else:
            raise TypeError(f"unknown pattern node {node!r}")
        return start, end

    def closure(self, states) -> FrozenSet[int]:
        seen = set(states)
        stack = list(states)
        while stack:
            for t in self.eps[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


@dataclass
class Automaton:
    """Deterministic partial automaton; every state accepts.

    ``delta[q, a]`` is the successor or -1.  A word is accepted iff its run
    from ``start`` never falls off the table.
    """

    delta: np.ndarray
    start: Optional[int]
    labels: Optional[List[str]] = None
    deterministic: bool = True

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    @property
    def k(self) -> int:
        return self.delta.shape[1]

    def trim(self) -> "Automaton":
        """Keep only states with both an incoming and an outgoing path forever."""
        alive = np.ones(self.n_states, dtype=bool)
        delta = self.delta
        while True:
            valid = (delta >= 0) & alive[:, None]
            valid &= alive[np.where(delta >= 0, delta, 0)]
            out_deg = valid.sum(axis=1)
            in_deg = np.bincount(delta[valid], minlength=self.n_states)
            keep = alive & (out_deg > 0) & (in_deg > 0)
            if (keep == alive).all():
                break
            alive = keep
        idx = np.full(self.n_states, -1, dtype=np.int64)
        idx[alive] = np.arange(alive.sum())
        new = np.where(delta[alive] >= 0, idx[np.where(delta[alive] >= 0, delta[alive], 0)], -1)
        labels = [l for l, a in zip(self.labels, alive) if a] if self.labels else None
        start = None if self.start is None or not alive[self.start] else int(idx[self.start])
        return Automaton(new.astype(np.int64), start, labels)

    def transfer_matrix(self) -> sparse.csr_matrix:
        rows, cols = np.nonzero(self.delta >= 0)
        data = np.ones(len(rows), dtype=np.int64)
        m = sparse.csr_matrix((data, (rows, self.delta[rows, cols])), shape=(self.n_states, self.n_states))
        m.sum_duplicates()
        return m

    def dense_matrix(self) -> List[List[int]]:
        out = [[0] * self.n_states for _ in range(self.n_states)]
        for q in range(self.n_states):
            for t in self.delta[q]:
                if t >= 0:
                    out[q][int(t)] += 1
        return out

    def count_words(self, n_max: int) -> List[int]:
        """Number of accepted words of each length ``0..n_max`` (exact)."""
        if self.start is None:
            return [0] * (n_max + 1)
        vec: Dict[int, int] = {self.start: 1}
        out = [1]
        for _ in range(n_max):
            nxt: Dict[int, int] = {}
            for q, c in vec.items():
                for t in self.delta[q]:
                    if t >= 0:
                        nxt[int(t)] = nxt.get(int(t), 0) + c
            vec = nxt
            out.append(sum(vec.values()))
        return out

    def accepts(self, word: Sequence[int]) -> bool:
        q = self.start
        for a in word:
            if q is None or q < 0:
                return False
            q = int(self.delta[q, a])
        return q is not None and q >= 0

    def to_dot(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [str(a) for a in range(self.k)]
        lines = ["digraph avoid {", "  rankdir=LR;"]
        for q in range(self.n_states):
            label = self.labels[q] if self.labels else str(q)
            shape = "doublecircle" if q == self.start else "circle"
            lines.append(f'  q{q} [label="{label}", shape={shape}];')
        for q in range(self.n_states):
            by_target: Dict[int, List[str]] = {}
            for a, t in enumerate(self.delta[q]):
                if t >= 0:
                    by_target.setdefault(int(t), []).append(names[a])
            for t, syms in sorted(by_target.items()):
                lines.append(f'  q{q} -> q{t} [label="{",".join(syms)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def compile_forbidden(pattern: Node, k: int, trim: bool = True, state_cap: int = STATE_CAP) -> Automaton:
    """Deterministic automaton of the words over ``k`` letters avoiding ``pattern`` as a factor."""
    nfa = _NFA(k)
    f_start, f_end = nfa.build(pattern)
    # S* F S*: a looping entry state and a looping accept state
    entry, done = nfa.new(), nfa.new()
    for a in range(k):
        nfa.moves[entry].append((a, entry))
        nfa.moves[done].append((a, done))
    nfa.eps[entry].append(f_start)
    nfa.eps[f_end].append(done)

    start = nfa.closure([entry])
    if done in start:
        return Automaton(np.zeros((0, k), dtype=np.int64), None)
    index: Dict[FrozenSet[int], int] = {start: 0}
    order = [start]
    rows: List[List[int]] = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for a in range(k):
            targets = [t for q in cur for (sym, t) in nfa.moves[q] if sym == a]
            nxt = nfa.closure(targets)
            if done in nxt:
                row.append(-1)
                continue
            j = index.get(nxt)
            if j is None:
                j = len(order)
                if j >= state_cap:
                    raise ResourceCapError(f"avoid-automaton exceeds {state_cap} states")
                index[nxt] = j
                order.append(nxt)
            row.append(j)
        rows.append(row)
        i += 1
    auto = Automaton(np.asarray(rows, dtype=np.int64).reshape(len(rows), k), 0)
    return auto.trim() if trim else auto

