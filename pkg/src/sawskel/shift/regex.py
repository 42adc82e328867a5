"""Pattern expressions over a generator alphabet.

Syntax: generator names (juxtaposed or space separated, ``x^-1`` allowed),
``|`` for union, postfix ``*``, ``+``, ``?``, ``{m}``, ``{m,n}``, ``{m,}``,
and parentheses.  Bounded repetition is expanded, so exponents are capped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from ..errors import SpecError
from ..groups.core import Alphabet

REPEAT_CAP = 64


@dataclass(frozen=True)
class Lit:
    symbol: int


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Cat:
    parts: Tuple["Node", ...]


@dataclass(frozen=True)
class Alt:
    options: Tuple["Node", ...]


@dataclass(frozen=True)
class Star:
    inner: "Node"


Node = Union[Lit, Eps, Cat, Alt, Star]


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, repeat_cap: int):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet
        self.cap = repeat_cap
        self.names = sorted(alphabet.names, key=len, reverse=True)

    def error(self, msg: str) -> SpecError:
        return SpecError(f"pattern {self.text!r}, position {self.pos}: {msg}")

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Node:
        node = self.alt()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def alt(self) -> Node:
        options = [self.cat()]
        while self.peek() == "|":
            self.pos += 1
            options.append(self.cat())
        return options[0] if len(options) == 1 else Alt(tuple(options))

    def cat(self) -> Node:
        parts: List[Node] = []
        while self.peek() and self.peek() not in "|)":
            parts.append(self.repeat())
        if not parts:
            return Eps()
        return parts[0] if len(parts) == 1 else Cat(tuple(parts))

    def repeat(self) -> Node:
        node = self.atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = Star(node)
            elif ch == "+":
                self.pos += 1
                node = Cat((node, Star(node)))
            elif ch == "?":
                self.pos += 1
                node = Alt((node, Eps()))
            elif ch == "{":
                node = self.bounded(node)
            else:
                return node

    def bounded(self, node: Node) -> Node:
        end = self.text.find("}", self.pos)
        if end < 0:
            raise self.error("unterminated '{'")
        body = self.text[self.pos + 1:end]
        lo_s, comma, hi_s = body.partition(",")
        try:
            lo = int(lo_s)
            hi = None if comma and not hi_s.strip() else int(hi_s) if comma else lo
        except ValueError as exc:
            raise self.error(f"bad repetition {{{body}}}") from exc
        if lo < 0 or (hi is not None and hi < lo):
            raise self.error(f"bad repetition {{{body}}}")
        if max(lo, hi or 0) > self.cap:
            raise self.error(f"repetition exponent exceeds cap {self.cap}")
        self.pos = end + 1
        parts: List[Node] = [node] * lo
        if hi is None:
            parts.append(Star(node))
        else:
            parts.extend([Alt((node, Eps()))] * (hi - lo))
        if not parts:
            return Eps()
        return parts[0] if len(parts) == 1 else Cat(tuple(parts))

    def atom(self) -> Node:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.alt()
            if self.peek() != ")":
                raise self.error("missing ')'")
            self.pos += 1
            return node
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                sym = self.alphabet.index[name]
                for suffix in ("^-1", "⁻¹"):
                    if self.text.startswith(suffix, self.pos):
                        self.pos += len(suffix)
                        sym = self.alphabet.inverse[sym]
                        break
                return Lit(sym)
        raise self.error(f"unknown symbol at {self.text[self.pos:self.pos + 8]!r}")


def parse_pattern(text: str, alphabet: Alphabet, repeat_cap: int = REPEAT_CAP) -> Node:
    return _Parser(text, alphabet, repeat_cap).parse()


def words_pattern(words: Sequence[Sequence[int]]) -> Node:
    """Union of finitely many literal words."""
    options = []
    for w in words:
        if not w:
            raise SpecError("the empty word cannot be forbidden")
        lits = tuple(Lit(int(s)) for s in w)
        options.append(lits[0] if len(lits) == 1 else Cat(lits))
    if not options:
        return Alt(())
    return options[0] if len(options) == 1 else Alt(tuple(options))
