"""Entropy of skeleton subshifts: Rauzy bounds, plain-group SFTs and sofic patterns."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..errors import NotPlainError, ResourceCapError, SpecError
from ..groups.backends import AffineBackend, FreeProductBackend, TableBackend
from ..groups.core import DEFAULT_BALL_CAP, Group, Word
from ..walks.counts import iter_saw_words
from .automaton import Automaton, compile_forbidden
from .regex import Node, parse_pattern, words_pattern
from .spectral import SpectralResult, char_poly, largest_real_root, spectral_radius

LADDER_PATTERN = "s t+ s T | s T+ s t | t s T+ s | T s t+ s | s s | t T | T t"
BUILTIN_PATTERNS = {"ladder-builtin": LADDER_PATTERN}


@dataclass
class Bound:
    """One bound on ``log mu`` with its provenance.

    ``role`` is ``lower``, ``upper``, ``exact`` or ``estimate``; estimates never
    enter the bracket.
    """

    kind: str
    role: str
    value_lo: float
    value_hi: float
    certified: bool
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> float:
        return self.value_hi if self.role == "upper" else self.value_lo

    def as_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["bound"] = self.role
        return d


@dataclass
class EntropyReport:
    bounds: List[Bound] = field(default_factory=list)

    def add(self, bound: Bound) -> None:
        self.bounds.append(bound)

    def lowers(self) -> List[Bound]:
        return [b for b in self.bounds if b.certified and b.role in ("lower", "exact")]

    def uppers(self) -> List[Bound]:
        return [b for b in self.bounds if b.certified and b.role in ("upper", "exact")]

    @property
    def bracket(self) -> Tuple[float, float]:
        lo = max((b.value_lo for b in self.lowers()), default=0.0)
        hi = min((b.value_hi for b in self.uppers()), default=math.inf)
        return lo, hi

    def consistent(self, slack: float = 1e-9) -> bool:
        lo, hi = self.bracket
        return lo <= hi + slack

    def as_dict(self) -> Dict[str, Any]:
        lo, hi = self.bracket
        return {"bounds": [b.as_dict() for b in self.bounds], "bracket": [lo, hi]}


def _log(x: float) -> float:
    return math.log(x) if x > 0 else float("-inf")


def _entry(kind: str, role: str, res: SpectralResult, params: Dict[str, Any]) -> Bound:
    p = dict(params)
    p.update({"rho": res.value, "rho_lo": res.lo, "rho_hi": res.hi, "iterations": res.iterations})
    return Bound(kind, role, _log(res.lo), _log(res.hi), True, p)


# -- Rauzy graphs on locally admissible words ---------------------------------------

def rauzy_matrix(group: Group, order: int, cap: int = DEFAULT_BALL_CAP, state_cap: int = 5 * 10**6) -> Tuple[sparse.csr_matrix, List[Word]]:
    """Transfer matrix on self-avoiding words of length ``order``.

    Edges are the self-avoiding words of length ``order + 1``, joining their
    length-``order`` prefix to their suffix.
    """
    if order < 1:
        raise SpecError("Rauzy order must be >= 1")
    ball = group.ball(order + 1, cap)
    vertices = list(iter_saw_words(ball.neighbors, order))
    if len(vertices) > state_cap:
        raise ResourceCapError(f"Rauzy graph of order {order} exceeds {state_cap} vertices")
    index = {w: i for i, w in enumerate(vertices)}
    rows, cols = [], []
    for w in iter_saw_words(ball.neighbors, order + 1):
        rows.append(index[w[:-1]])
        cols.append(index[w[1:]])
    n = len(vertices)
    m = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return m, vertices


def rauzy_upper_bound(group: Group, order: int, tol: float = 1e-12, cap: int = DEFAULT_BALL_CAP) -> Bound:
    """Upper bound on the skeleton entropy from the order-``order`` Rauzy graph."""
    m, vertices = rauzy_matrix(group, order, cap)
    res = spectral_radius(m, tol)
    return _entry(f"rauzy-{order}", "upper", res, {"order": order, "states": len(vertices)})


# -- plain groups -------------------------------------------------------------------

def _factor_generators(group: Group) -> Dict[int, List[int]]:
    be = group.backend
    if not isinstance(be, FreeProductBackend):
        raise NotPlainError("plain groups are free products of finite and infinite cyclic factors")
    by_factor: Dict[int, List[int]] = {}
    for s, img in enumerate(group.images):
        if len(img) != 1:
            raise NotPlainError(f"generator {group.alphabet.names[s]!r} is not a single syllable")
        by_factor.setdefault(img[0][0], []).append(s)
    for i, f in enumerate(be.factors):
        gens = by_factor.get(i, [])
        if isinstance(f, TableBackend):
            reached = {f.identity()}
            frontier = [f.identity()]
            while frontier:
                x = frontier.pop()
                for s in gens:
                    y = f.mul(x, group.images[s][0][1])
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
            if len(reached) != f.order:
                raise NotPlainError(f"generators in factor {i} do not generate it")
        elif isinstance(f, AffineBackend) and f.dim == 1:
            shifts = sorted(group.images[s][0][1] for s in gens)
            if shifts != [((1,), (-1,)), ((1,), (1,))]:
                raise NotPlainError(f"factor {i} is not infinite cyclic with a free generator pair")
        else:
            raise NotPlainError(f"factor {i} is neither finite nor infinite cyclic")
    return by_factor


def plain_forbidden_words(group: Group) -> List[Word]:
    """Simple cycles inside each finite factor, plus every backtrack ``s s^-1``."""
    be = group.backend
    by_factor = _factor_generators(group)
    words = {(s, group.alphabet.inverse[s]) for s in range(group.degree)}
    for i, gens in by_factor.items():
        f = be.factors[i]
        if not isinstance(f, TableBackend):
            continue
        ident = f.identity()
        elems = [group.images[s][0][1] for s in gens]
        limit = f.order

        def rec(word: List[int], path: List[int]) -> None:
            x = path[-1]
            for s, e in zip(gens, elems):
                y = f.mul(x, e)
                if y == ident and len(word) >= 2:
                    words.add(tuple(word + [s]))
                elif y not in path and len(word) + 1 < limit:
                    rec(word + [s], path + [y])

        rec([], [ident])
    return sorted(words)


@dataclass
class PlainEntropy:
    bound: Bound
    automaton: Automaton
    forbidden: List[Word]
    polynomial: Optional[List[int]]
    root_enclosure: Optional[Tuple[float, float]]


def plain_sft_entropy(group: Group, tol: float = 1e-12, exact_poly: bool = True) -> PlainEntropy:
    """Exact skeleton entropy of a plain group with its standard generators."""
    words = plain_forbidden_words(group)
    auto = compile_forbidden(words_pattern(words), group.degree)
    res = spectral_radius(auto.transfer_matrix(), tol)
    poly = root = None
    if exact_poly and auto.n_states <= 64:
        poly = char_poly(auto.dense_matrix())
        root = largest_real_root(poly)
    bound = _entry("sft-exact", "exact", res, {"forbidden": len(words), "states": auto.n_states})
    if root is not None:
        bound.params["perron_root_exact"] = list(root)
    return PlainEntropy(bound, auto, words, poly, root)


# -- sofic patterns -------------------------------------------------------------

def resolve_pattern(group: Group, pattern: str) -> Node:
    text = BUILTIN_PATTERNS.get(pattern, pattern)
    return parse_pattern(text, group.alphabet)


def sofic_entropy(group: Group, pattern: str, tol: float = 1e-12) -> Tuple[Bound, Automaton]:
    """Entropy of the subshift avoiding ``pattern`` (a pattern text or builtin name)."""
    auto = compile_forbidden(resolve_pattern(group, pattern), group.degree)
    res = spectral_radius(auto.transfer_matrix(), tol)
    return _entry("sofic-exact", "exact", res, {"pattern": BUILTIN_PATTERNS.get(pattern, pattern), "states": auto.n_states}), auto
