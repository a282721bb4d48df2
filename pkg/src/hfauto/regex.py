"""A small regular-expression front end driving the closure constructions.

Grammar, loosest to tightest::

    alt  := cat ('|' cat)*
    cat  := rep+
    rep  := atom '*'*
    atom := symbol | '(' alt ')' | 'ε' | '∅'

``eps`` and ``empty`` are ASCII spellings of ``ε`` and ``∅``; they are only
recognised where the first letter is not itself an alphabet symbol.
Whitespace is ignored.  Symbols are single characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .automata import Dfa, Symbol
from .constructions import concat_nfa, power_dfa, star_nfa, union_dfa
from .hfset import ord_of
from .minimize import brzozowski


class RegexSyntaxError(ValueError):
    """``offset`` is a byte offset into the UTF-8 encoded expression."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Lit:
    symbol: Symbol


@dataclass(frozen=True)
class Cat:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Alt:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Star:
    inner: "Regex"


Regex = Union[EmptySet, Epsilon, Lit, Cat, Alt, Star]

_SPECIAL = set("()|*")


def regex_parse(text: str, alphabet: Iterable[Symbol]) -> Regex:
    p = _Parser(text, tuple(alphabet))
    p.skip_ws()
    r = p.alt()
    p.skip_ws()
    if p.pos < len(text):
        raise p.error(f"unexpected {text[p.pos]!r}")
    return r


class _Parser:
    def __init__(self, text: str, alphabet: tuple[Symbol, ...]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> RegexSyntaxError:
        pos = self.pos if pos is None else pos
        return RegexSyntaxError(message, len(self.text[:pos].encode("utf-8")))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def alt(self) -> Regex:
        r = self.cat()
        while self.peek() == "|":
            self.pos += 1
            r = Alt(r, self.cat())
        return r

    def cat(self) -> Regex:
        r = self.rep()
        while self.peek() not in ("", "|", ")"):
            r = Cat(r, self.rep())
        return r

    def rep(self) -> Regex:
        r = self.atom()
        while self.peek() == "*":
            self.pos += 1
            r = Star(r)
        return r

    def atom(self) -> Regex:
        c = self.peek()
        if c == "":
            raise self.error("unexpected end of expression")
        if c == "(":
            self.pos += 1
            r = self.alt()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return r
        if c == "ε":
            self.pos += 1
            return Epsilon()
        if c == "∅":
            self.pos += 1
            return EmptySet()
        if c not in self.alphabet:
            for word, node in (("eps", Epsilon()), ("empty", EmptySet())):
                if self.text.startswith(word, self.pos):
                    self.pos += len(word)
                    return node
        if c in _SPECIAL:
            raise self.error(f"unexpected {c!r}")
        if c not in self.alphabet:
            raise self.error(f"symbol {c!r} is not in the alphabet")
        self.pos += 1
        return Lit(c)


def regex_render(r: Regex) -> str:
    """Fully parenthesised rendering; ``regex_parse`` inverts it."""
    if isinstance(r, EmptySet):
        return "∅"
    if isinstance(r, Epsilon):
        return "ε"
    if isinstance(r, Lit):
        return r.symbol
    if isinstance(r, Cat):
        return f"({regex_render(r.left)}{regex_render(r.right)})"
    if isinstance(r, Alt):
        return f"({regex_render(r.left)}|{regex_render(r.right)})"
    return f"({regex_render(r.inner)}*)"


def regex_matches(r: Regex, w: Sequence[Symbol]) -> bool:
    """Decide membership straight from the definition, by trying every split."""
    return _matches(r, tuple(w))


@lru_cache(maxsize=1 << 16)
def _matches(r: Regex, w: tuple[Symbol, ...]) -> bool:
    if isinstance(r, EmptySet):
        return False
    if isinstance(r, Epsilon):
        return not w
    if isinstance(r, Lit):
        return w == (r.symbol,)
    if isinstance(r, Alt):
        return _matches(r.left, w) or _matches(r.right, w)
    if isinstance(r, Cat):
        return any(_matches(r.left, w[:k]) and _matches(r.right, w[k:]) for k in range(len(w) + 1))
    # a star either matches nothing or peels off a nonempty first chunk
    return not w or any(_matches(r.inner, w[:k]) and _matches(r, w[k:]) for k in range(1, len(w) + 1))


def _literal_dfa(alphabet: tuple[Symbol, ...], symbol: Symbol) -> Dfa:
    start, accept, dead = ord_of(0), ord_of(1), ord_of(2)
    nxt = {}
    for x in alphabet:
        nxt[start, x] = accept if x == symbol else dead
        nxt[accept, x] = dead
        nxt[dead, x] = dead
    return Dfa(alphabet, [start, accept, dead], start, [accept], nxt)


def _epsilon_dfa(alphabet: tuple[Symbol, ...]) -> Dfa:
    start, dead = ord_of(0), ord_of(1)
    nxt = {(q, x): dead for q in (start, dead) for x in alphabet}
    return Dfa(alphabet, [start, dead], start, [start], nxt)


def _empty_dfa(alphabet: tuple[Symbol, ...]) -> Dfa:
    dead = ord_of(0)
    return Dfa(alphabet, [dead], dead, [], {(dead, x): dead for x in alphabet})


def regex_compile(r: Regex, alphabet: Iterable[Symbol]) -> Dfa:
    """Compile by structural recursion through the closure constructions.

    Every intermediate machine is minimised so the subset constructions stay
    small; the result is the minimal DFA.
    """
    alphabet = tuple(alphabet)

    def go(r: Regex) -> Dfa:
        if isinstance(r, EmptySet):
            m = _empty_dfa(alphabet)
        elif isinstance(r, Epsilon):
            m = _epsilon_dfa(alphabet)
        elif isinstance(r, Lit):
            if r.symbol not in alphabet:
                raise ValueError(f"symbol {r.symbol!r} is not in the alphabet")
            m = _literal_dfa(alphabet, r.symbol)
        elif isinstance(r, Alt):
            m = union_dfa(go(r.left), go(r.right))
        elif isinstance(r, Cat):
            m = power_dfa(concat_nfa(go(r.left), go(r.right)), mode="reachable")
        else:
            m = power_dfa(star_nfa(go(r.inner)), mode="reachable")
        return brzozowski(m)

    return go(r)
