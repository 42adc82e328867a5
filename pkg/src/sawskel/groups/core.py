"""Group handles: alphabet, evaluation, equality and the word metric."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    GroupMismatchError,
    InvolutionMismatchError,
    ResourceCapError,
    SpecError,
)
from .backends import (
    AffineBackend,
    Backend,
    DirectProductBackend,
    FreeProductBackend,
    TableBackend,
)

Word = Tuple[int, ...]

DEFAULT_BALL_CAP = 10**7

_INVERSE_SUFFIX = re.compile(r"^(.+?)(\^-1|⁻¹|\^\{-1\})$")


class Alphabet:
    """Ordered generator names with a formal-inverse involution on ids."""

    def __init__(self, names: Sequence[str], inverse: Sequence[int]):
        names = list(names)
        inverse = list(inverse)
        if len(set(names)) != len(names):
            raise SpecError("duplicate generator names")
        if len(inverse) != len(names):
            raise SpecError("involution must give an inverse for every generator")
        for i, j in enumerate(inverse):
            if not 0 <= j < len(names) or inverse[j] != i:
                raise InvolutionMismatchError(f"involution is not self-inverse at {names[i]!r}")
        for n in names:
            if not n or any(ch.isspace() for ch in n) or any(ch in "()|*+{},^" for ch in n):
                raise SpecError(f"invalid generator name {n!r}")
        self.names = names
        self.inverse = inverse
        self.index = {n: i for i, n in enumerate(names)}
        self._by_length = sorted(names, key=len, reverse=True)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({self.names})"

    def invert_word(self, word: Sequence[int]) -> Word:
        return tuple(self.inverse[s] for s in reversed(word))

    def resolve(self, token: str) -> int:
        if token in self.index:
            return self.index[token]
        m = _INVERSE_SUFFIX.match(token)
        if m and m.group(1) in self.index:
            return self.inverse[self.index[m.group(1)]]
        raise SpecError(f"unknown generator {token!r}")

    def parse(self, text: str) -> Word:
        """Parse whitespace-separated tokens, or a run of names matched greedily.

        ``x^-1`` / ``x⁻¹`` denote the formal inverse of ``x``.
        """
        out: List[int] = []
        for chunk in text.split():
            if chunk in self.index or _INVERSE_SUFFIX.match(chunk):
                out.append(self.resolve(chunk))
                continue
            pos = 0
            while pos < len(chunk):
                for name in self._by_length:
                    if chunk.startswith(name, pos):
                        pos += len(name)
                        j = self.index[name]
                        for suffix in ("^-1", "⁻¹"):
                            if chunk.startswith(suffix, pos):
                                pos += len(suffix)
                                j = self.inverse[j]
                                break
                        out.append(j)
                        break
                else:
                    raise SpecError(f"cannot parse word {text!r} at {chunk[pos:]!r}")
        return tuple(out)

    def format(self, word: Sequence[int]) -> str:
        sep = "" if all(len(n) == 1 for n in self.names) else " "
        return sep.join(self.names[s] for s in word)


class Element:
    """An element bound to its group handle; equality is exact."""

    __slots__ = ("group", "rep")

    def __init__(self, group: "Group", rep):
        self.group = group
        self.rep = rep

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.group.fingerprint != self.group.fingerprint:
            raise GroupMismatchError("elements belong to different groups")

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.group, self.group.backend.mul(self.rep, other.rep))

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            return self.inverse() ** (-k)
        return Element(self.group, self.group.backend.power(self.rep, k))

    def inverse(self) -> "Element":
        return Element(self.group, self.group.backend.inv(self.rep))

    def is_identity(self) -> bool:
        return self.rep == self.group.backend.identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element) or other.group.fingerprint != self.group.fingerprint:
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __lt__(self, other: "Element") -> bool:
        self._check(other)
        return repr(self.rep) < repr(other.rep) if type(self.rep) is not type(other.rep) else self.rep < other.rep

    def __repr__(self) -> str:
        return f"Element({self.rep!r})"

    def fingerprint(self) -> str:
        return hashlib.sha1(repr(self.rep).encode()).hexdigest()[:16]


@dataclass
class Ball:
    """Breadth-first ball around the identity.

    Vertices are numbered in BFS order (the identity is vertex 0) so the ball
    of any smaller radius is a prefix.  ``neighbors[v, s]`` is the vertex
    ``v * s`` or -1 when it lies outside the ball.
    """

    radius: int
    elements: List[Any]
    index: Dict[Any, int]
    norms: np.ndarray
    neighbors: np.ndarray
    parent: np.ndarray
    parent_letter: np.ndarray
    shells: List[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def growth(self) -> List[int]:
        """Cumulative counts gamma(0..radius)."""
        out, acc = [], 0
        for s in self.shells:
            acc += s
            out.append(acc)
        return out

    def norm_of(self, rep) -> Optional[int]:
        v = self.index.get(rep)
        return None if v is None else int(self.norms[v])

    def geodesic_word(self, rep) -> Word:
        v = self.index[rep]
        out = []
        while v != 0:
            out.append(int(self.parent_letter[v]))
            v = int(self.parent[v])
        return tuple(reversed(out))

    def restrict(self, radius: int) -> "Ball":
        if radius >= self.radius:
            return self
        n = sum(self.shells[: radius + 1])
        nbr = self.neighbors[:n].copy()
        nbr[nbr >= n] = -1
        elements = self.elements[:n]
        return Ball(
            radius=radius,
            elements=elements,
            index={e: i for i, e in enumerate(elements)},
            norms=self.norms[:n].copy(),
            neighbors=nbr,
            parent=self.parent[:n].copy(),
            parent_letter=self.parent_letter[:n].copy(),
            shells=list(self.shells[: radius + 1]),
        )


class Group:
    """Immutable handle over a backend, an alphabet and generator images."""

    def __init__(self, backend: Backend, alphabet: Alphabet, images: Sequence[Any], spec: Dict[str, Any], name: str = ""):
        self.backend = backend
        self.alphabet = alphabet
        self.images = tuple(images)
        self.spec = spec
        self.name = name or spec.get("name", "")
        canonical = json.dumps(spec, sort_keys=True, separators=(",", ":"))
        self.fingerprint = hashlib.sha256(canonical.encode()).hexdigest()
        self._ball: Optional[Ball] = None
        self._validate()

    def _validate(self) -> None:
        be = self.backend
        ident = be.identity()
        seen = {}
        for s, img in enumerate(self.images):
            name = self.alphabet.names[s]
            if img == ident:
                raise SpecError(f"generator {name!r} evaluates to the identity")
            if img in seen:
                raise SpecError(f"generators {seen[img]!r} and {name!r} have the same image")
            seen[img] = name
            j = self.alphabet.inverse[s]
            if be.mul(self.images[j], img) != ident:
                raise InvolutionMismatchError(
                    f"image of {self.alphabet.names[j]!r} is not the inverse of the image of {name!r}"
                )

    def __repr__(self) -> str:
        return f"Group({self.name or self.fingerprint[:12]}, |S|={len(self.alphabet)})"

    @property
    def degree(self) -> int:
        return len(self.alphabet)

    # -- element operations --------------------------------------------------
    def identity(self) -> Element:
        return Element(self, self.backend.identity())

    def generator(self, s: int) -> Element:
        return Element(self, self.images[s])

    def wrap(self, rep) -> Element:
        return Element(self, rep)

    def _rep(self, x: Element):
        if not isinstance(x, Element) or x.group.fingerprint != self.fingerprint:
            raise GroupMismatchError("element does not belong to this group")
        return x.rep

    def multiply(self, x: Element, y: Element) -> Element:
        return Element(self, self.backend.mul(self._rep(x), self._rep(y)))

    def inverse(self, x: Element) -> Element:
        return Element(self, self.backend.inv(self._rep(x)))

    def is_identity(self, x: Element) -> bool:
        return self._rep(x) == self.backend.identity()

    def element_equal(self, x: Element, y: Element) -> bool:
        return self._rep(x) == self._rep(y)

    def word(self, text) -> Word:
        if isinstance(text, str):
            return self.alphabet.parse(text)
        word = tuple(int(s) for s in text)
        if any(not 0 <= s < self.degree for s in word):
            raise SpecError("word contains an invalid generator id")
        return word

    def evaluate_rep(self, word: Sequence[int]):
        be = self.backend
        g = be.identity()
        for s in word:
            g = be.mul(g, self.images[s])
        return g

    def evaluate(self, word) -> Element:
        return Element(self, self.evaluate_rep(self.word(word)))

    def prefix_reps(self, word: Sequence[int]) -> List[Any]:
        """Vertices g_0 = 1, g_1, ..., g_n visited by the walk labelled ``word``."""
        be = self.backend
        g = be.identity()
        out = [g]
        for s in word:
            g = be.mul(g, self.images[s])
            out.append(g)
        return out

    def is_saw(self, word) -> bool:
        reps = self.prefix_reps(self.word(word))
        return len(set(reps)) == len(reps)

    # -- metric ----------------------------------------------------------------
    def ball(self, radius: int, cap: int = DEFAULT_BALL_CAP) -> Ball:
        if radius < 0:
            raise SpecError("radius must be >= 0")
        if self._ball is not None and self._ball.radius >= radius:
            return self._ball.restrict(radius)
        self._ball = _build_ball(self, radius, cap)
        return self._ball

    def norm(self, x: Element, cutoff: int) -> Optional[int]:
        """Word length of ``x`` if it is at most ``cutoff``, else None."""
        rep = self._rep(x)
        if rep == self.backend.identity():
            return 0
        if self._ball is not None and (rep in self._ball.index or self._ball.radius >= cutoff):
            n = self._ball.norm_of(rep)
            return n if n is not None and n <= cutoff else None
        return self.ball(cutoff).norm_of(rep)

    def distance(self, x: Element, y: Element, cutoff: int) -> Optional[int]:
        return self.norm(self.multiply(self.inverse(x), y), cutoff)


def _build_ball(group: Group, radius: int, cap: int) -> Ball:
    be = group.backend
    images = group.images
    k = len(images)
    ident = be.identity()
    elements = [ident]
    index = {ident: 0}
    norms = [0]
    parent = [0]
    parent_letter = [-1]
    shells = [1]
    level_start = 0
    for r in range(1, radius + 1):
        level_end = len(elements)
        new = 0
        for v in range(level_start, level_end):
            g = elements[v]
            for s in range(k):
                h = be.mul(g, images[s])
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    norms.append(r)
                    parent.append(v)
                    parent_letter.append(s)
                    new += 1
                    if len(elements) > cap:
                        raise ResourceCapError(f"ball of radius {radius} exceeds cap of {cap} elements")
        shells.append(new)
        level_start = level_end
    n = len(elements)
    nbr = np.full((n, k), -1, dtype=np.int32)
    for v, g in enumerate(elements):
        for s in range(k):
            w = index.get(be.mul(g, images[s]))
            if w is not None:
                nbr[v, s] = w
    return Ball(
        radius=radius,
        elements=elements,
        index=index,
        norms=np.asarray(norms, dtype=np.int32),
        neighbors=nbr,
        parent=np.asarray(parent, dtype=np.int64),
        parent_letter=np.asarray(parent_letter, dtype=np.int32),
        shells=shells,
    )


# -- construction from a JSON-like spec ------------------------------------------

def _build_backend(node: Dict[str, Any]) -> Backend:
    if not isinstance(node, dict) or "kind" not in node:
        raise SpecError(f"construction node needs a 'kind': {node!r}")
    kind = node["kind"]
    if kind == "affine":
        return AffineBackend(int(node.get("dim", 0)))
    if kind == "table":
        return TableBackend(node.get("table", []))
    if kind in ("direct_product", "free_product"):
        factors = [_build_backend(f) for f in node.get("factors", [])]
        return DirectProductBackend(factors) if kind == "direct_product" else FreeProductBackend(factors)
    raise SpecError(f"unknown construction kind {kind!r}")


def build_group(spec: Dict[str, Any]) -> Group:
    """Build and validate a group handle from a spec dictionary.

    Schema::

        {"name": str (optional),
         "group": construction tree,
         "alphabet": [{"name": "a", "inverse": "A"}, ...],
         "images": {"a": element, ...},
         "relations": ["a a", ...]   (optional; each must evaluate to 1)}
    """
    if not isinstance(spec, dict):
        raise SpecError("group spec must be a JSON object")
    for key in ("group", "alphabet", "images"):
        if key not in spec:
            raise SpecError(f"group spec is missing {key!r}")
    backend = _build_backend(spec["group"])
    entries = spec["alphabet"]
    try:
        names = [str(e["name"]) for e in entries]
        inv_names = [str(e.get("inverse", e["name"])) for e in entries]
    except (KeyError, TypeError) as exc:
        raise SpecError("alphabet entries need a 'name'") from exc
    pos = {n: i for i, n in enumerate(names)}
    try:
        inverse = [pos[n] for n in inv_names]
    except KeyError as exc:
        raise InvolutionMismatchError(f"inverse {exc.args[0]!r} is not a generator") from exc
    alphabet = Alphabet(names, inverse)
    images = []
    for n in names:
        if n not in spec["images"]:
            raise SpecError(f"generator {n!r} has no image")
        images.append(backend.parse(spec["images"][n]))
    group = Group(backend, alphabet, images, spec)
    for rel in spec.get("relations", []):
        if group.evaluate_rep(alphabet.parse(rel)) != backend.identity():
            raise SpecError(f"relation {rel!r} does not hold")
    return group


def load_group_json(path: str) -> Group:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: invalid JSON: {exc}") from exc
    return build_group(data)
