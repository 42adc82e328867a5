"""Built-in example groups, each expressed as a JSON-style spec."""
from __future__ import annotations

import re
import string
from functools import lru_cache
from itertools import permutations
from typing import Any, Callable, Dict, List

from ..errors import SpecError
from .core import Group, build_group


def _ident(d: int) -> List[List[int]]:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def _translation(d: int, vec) -> Dict[str, Any]:
    return {"matrix": _ident(d), "shift": list(vec)}


def _pairs(names: List[str]) -> List[Dict[str, str]]:
    return [{"name": n, "inverse": n.upper()} for n in names] + [
        {"name": n.upper(), "inverse": n} for n in names
    ]


def zd_spec(d: int) -> Dict[str, Any]:
    if not 1 <= d <= 26:
        raise SpecError("zd(d) needs 1 <= d <= 26")
    names = list(string.ascii_lowercase[:d])
    images = {}
    for i, n in enumerate(names):
        e = [0] * d
        e[i] = 1
        images[n] = _translation(d, e)
        e[i] = -1
        images[n.upper()] = _translation(d, e)
    return {
        "name": "z2" if d == 2 else f"zd({d})",
        "group": {"kind": "affine", "dim": d},
        "alphabet": _pairs(names),
        "images": images,
    }


def heisenberg_spec() -> Dict[str, Any]:
    # integer Heisenberg group acting on Z^2: a shears, b and c translate
    return {
        "name": "heisenberg",
        "group": {"kind": "affine", "dim": 2},
        "alphabet": _pairs(["a", "b", "c"]),
        "images": {
            "a": {"matrix": [[1, 1], [0, 1]], "shift": [0, 0]},
            "A": {"matrix": [[1, -1], [0, 1]], "shift": [0, 0]},
            "b": _translation(2, [0, 1]),
            "B": _translation(2, [0, -1]),
            "c": _translation(2, [1, 0]),
            "C": _translation(2, [-1, 0]),
        },
        "relations": ["a c A C", "b c B C", "a b A B C"],
    }


def dihedral_ab_spec() -> Dict[str, Any]:
    return {
        "name": "dihedral-ab",
        "group": {"kind": "affine", "dim": 1},
        "alphabet": [{"name": "a", "inverse": "a"}, {"name": "b", "inverse": "b"}],
        "images": {
            "a": {"matrix": [[-1]], "shift": [0]},
            "b": {"matrix": [[-1]], "shift": [1]},
        },
        "relations": ["a a", "b b"],
    }


def dihedral_rs_spec() -> Dict[str, Any]:
    return {
        "name": "dihedral-rs",
        "group": {"kind": "affine", "dim": 1},
        "alphabet": _pairs(["r"]) + [{"name": "s", "inverse": "s"}],
        "images": {
            "r": _translation(1, [1]),
            "R": _translation(1, [-1]),
            "s": {"matrix": [[-1]], "shift": [0]},
        },
        "relations": ["s s", "s r s r"],
    }


def ladder_spec() -> Dict[str, Any]:
    # t moves along the ladder, s swaps the two rails
    return {
        "name": "ladder",
        "group": {"kind": "affine", "dim": 2},
        "alphabet": _pairs(["t"]) + [{"name": "s", "inverse": "s"}],
        "images": {
            "t": _translation(2, [1, 0]),
            "T": _translation(2, [-1, 0]),
            "s": {"matrix": [[1, 0], [0, -1]], "shift": [0, 1]},
        },
        "relations": ["s s", "t s T s"],
    }


def a2_coxeter_spec() -> Dict[str, Any]:
    # reflections of the A2 root lattice inside Z^3; c is the affine reflection
    return {
        "name": "a2-coxeter",
        "group": {"kind": "affine", "dim": 3},
        "alphabet": [{"name": n, "inverse": n} for n in "abc"],
        "images": {
            "a": {"matrix": [[0, 1, 0], [1, 0, 0], [0, 0, 1]], "shift": [0, 0, 0]},
            "b": {"matrix": [[1, 0, 0], [0, 0, 1], [0, 1, 0]], "shift": [0, 0, 0]},
            "c": {"matrix": [[0, 0, 1], [0, 1, 0], [1, 0, 0]], "shift": [1, 0, -1]},
        },
        "relations": ["a a", "b b", "c c", "a b a b a b", "a c a c a c", "b c b c b c"],
    }


def _s3_table() -> List[List[int]]:
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # entry [p][q] is the composite x -> p(q(x))
    return [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]


def _cyclic_table(n: int) -> List[List[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def s3_star_z3_spec() -> Dict[str, Any]:
    perms = list(permutations(range(3)))
    s1 = perms.index((1, 0, 2))
    s2 = perms.index((2, 1, 0))
    return {
        "name": "s3-star-z3",
        "group": {
            "kind": "free_product",
            "factors": [{"kind": "table", "table": _s3_table()}, {"kind": "table", "table": _cyclic_table(3)}],
        },
        "alphabet": [
            {"name": "s1", "inverse": "s1"},
            {"name": "s2", "inverse": "s2"},
            {"name": "t", "inverse": "T"},
            {"name": "T", "inverse": "t"},
        ],
        "images": {
            "s1": {"factor": 0, "element": s1},
            "s2": {"factor": 0, "element": s2},
            "t": {"factor": 1, "element": 1},
            "T": {"factor": 1, "element": 2},
        },
        "relations": ["s1 s1", "s2 s2", "s1 s2 s1 s2 s1 s2", "t t t"],
    }


def free_spec(m: int) -> Dict[str, Any]:
    if not 1 <= m <= 26:
        raise SpecError("free(m) needs 1 <= m <= 26")
    names = list(string.ascii_lowercase[:m])
    images = {}
    for i, n in enumerate(names):
        images[n] = {"factor": i, "element": _translation(1, [1])}
        images[n.upper()] = {"factor": i, "element": _translation(1, [-1])}
    return {
        "name": f"free({m})",
        "group": {"kind": "free_product", "factors": [{"kind": "affine", "dim": 1}] * m},
        "alphabet": _pairs(names),
        "images": images,
    }


def ladder_d8_spec() -> Dict[str, Any]:
    return {
        "name": "ladder-d8",
        "group": {
            "kind": "direct_product",
            "factors": [{"kind": "affine", "dim": 1}, {"kind": "table", "table": _cyclic_table(2)}],
        },
        "alphabet": [{"name": n, "inverse": n} for n in "abs"],
        "images": {
            "a": [{"matrix": [[-1]], "shift": [0]}, 0],
            "b": [{"matrix": [[-1]], "shift": [1]}, 0],
            "s": [_translation(1, [0]), 1],
        },
        "relations": ["a a", "b b", "s s", "a s a s", "b s b s"],
    }


_FIXED: Dict[str, Callable[[], Dict[str, Any]]] = {
    "z2": lambda: zd_spec(2),
    "heisenberg": heisenberg_spec,
    "dihedral-ab": dihedral_ab_spec,
    "dihedral-rs": dihedral_rs_spec,
    "ladder": ladder_spec,
    "a2-coxeter": a2_coxeter_spec,
    "s3-star-z3": s3_star_z3_spec,
    "ladder-d8": ladder_d8_spec,
}

_PARAM = re.compile(r"^(zd|free)\((\d+)\)$")

PRESET_NAMES = ("z2", "zd(d)", "heisenberg", "dihedral-ab", "dihedral-rs", "ladder",
                "a2-coxeter", "s3-star-z3", "free(m)", "ladder-d8")

# concrete instances used when iterating over "every preset"
ALL_PRESETS = ("z2", "zd(3)", "heisenberg", "dihedral-ab", "dihedral-rs", "ladder",
               "a2-coxeter", "s3-star-z3", "free(2)", "ladder-d8")


def preset_spec(name: str) -> Dict[str, Any]:
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    m = _PARAM.match(key)
    if m:
        k = int(m.group(2))
        return zd_spec(k) if m.group(1) == "zd" else free_spec(k)
    raise SpecError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


@lru_cache(maxsize=None)
def preset(name: str) -> Group:
    """Return the (shared, immutable) handle for a built-in preset."""
    return build_group(preset_spec(name))
