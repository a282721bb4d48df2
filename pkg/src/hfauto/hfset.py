"""Hereditarily finite sets.

An HF value is a finite set whose elements are again HF values.  Values are
kept in a canonical form: the children are stored strictly descending under
:func:`hf_cmp`, which orders sets exactly as their Ackermann codes
``code(x) = sum(2 ** code(y) for y in x)`` would, without ever computing them.

Instances are interned, so two extensionally equal sets are the same object.
That is an implementation detail; ``==`` is still extensional equality.
"""

from __future__ import annotations

import enum
import functools
import threading
import weakref
from typing import Iterable, Iterator


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Tag(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class HFSyntaxError(ValueError):
    """Malformed HF literal.  ``offset`` is the character index of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_table: "weakref.WeakValueDictionary[tuple, HF]" = weakref.WeakValueDictionary()
_table_lock = threading.Lock()


@functools.total_ordering
class HF:
    """A canonical hereditarily finite set.

    ``HF(xs)`` builds the set of the distinct members of ``xs``; order and
    duplicates in ``xs`` are irrelevant.
    """

    __slots__ = ("_children", "_hash", "_members", "__weakref__")

    _children: tuple[HF, ...]
    _hash: int
    _members: frozenset[HF] | None

    def __new__(cls, elements: Iterable[HF] = ()) -> HF:
        items = set(elements)
        for x in items:
            if not isinstance(x, HF):
                raise TypeError(f"HF elements must be HF values, not {type(x).__name__}")
        children = tuple(sorted(items, key=_cmp_key, reverse=True))
        return cls._make(children)

    @classmethod
    def _make(cls, children: tuple[HF, ...]) -> HF:
        # children must already be canonical (distinct, descending)
        with _table_lock:
            node = _table.get(children)
            if node is None:
                node = object.__new__(cls)
                node._children = children
                node._hash = hash(("HF", children))
                node._members = None
                _table[children] = node
        return node

    def __reduce__(self):
        return (_rebuild, (self._children,))

    def __copy__(self) -> HF:
        return self

    def __deepcopy__(self, memo) -> HF:
        return self

    @property
    def children(self) -> tuple[HF, ...]:
        """Elements in descending order."""
        return self._children

    def members(self) -> frozenset[HF]:
        m = self._members
        if m is None:
            m = frozenset(self._children)
            self._members = m
        return m

    def __iter__(self) -> Iterator[HF]:
        return iter(self._children)

    def __len__(self) -> int:
        return len(self._children)

    def __contains__(self, item: object) -> bool:
        return isinstance(item, HF) and item in self.members()

    def __bool__(self) -> bool:
        return bool(self._children)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, HF):
            return NotImplemented
        return self._hash == other._hash and self._children == other._children

    def __lt__(self, other: HF) -> bool:
        if not isinstance(other, HF):
            return NotImplemented
        return hf_cmp(self, other) is Ordering.LESS

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"HF({render(self)})"


def _rebuild(children: tuple[HF, ...]) -> HF:
    return HF._make(children)


def hf_cmp(a: HF, b: HF) -> Ordering:
    """Compare two sets as their codes would compare.

    Both child sequences are descending, i.e. they list the set bits of the
    codes from the top.  The first position where they differ decides; if one
    sequence is a prefix of the other, the longer one is larger.
    """
    if a is b:
        return Ordering.EQUAL
    xs, ys = a._children, b._children
    for x, y in zip(xs, ys):
        if x is not y and x != y:
            return hf_cmp(x, y)
    if len(xs) == len(ys):
        return Ordering.EQUAL
    return Ordering.GREATER if len(xs) > len(ys) else Ordering.LESS


_cmp_key = functools.cmp_to_key(hf_cmp)

EMPTY = HF._make(())


def empty() -> HF:
    return EMPTY


def from_elements(xs: Iterable[HF]) -> HF:
    return HF(xs)


def elements(x: HF) -> frozenset[HF]:
    return x.members()


def mem(a: HF, b: HF) -> bool:
    return a in b.members()


def subset(a: HF, b: HF) -> bool:
    if len(a) > len(b):
        return False
    bm = b.members()
    return all(c in bm for c in a._children)


def insert(a: HF, b: HF) -> HF:
    """``b ∪ {a}``"""
    if a in b.members():
        return b
    return HF((a, *b._children))


def union(a: HF, b: HF) -> HF:
    return HF((*a._children, *b._children))


def code(x: HF) -> int:
    return sum(1 << code(y) for y in x._children)


@functools.lru_cache(maxsize=4096)
def _decode_small(n: int) -> HF:
    return _decode(n)


def _decode(n: int) -> HF:
    bits = []
    i = 0
    while n:
        if n & 1:
            bits.append(i)
        n >>= 1
        i += 1
    # highest bit first gives the canonical descending order
    return HF._make(tuple(_decode_small(b) if b < 4096 else _decode(b) for b in reversed(bits)))


def decode(n: int) -> HF:
    """The unique HF value with ``code(x) == n``."""
    if n < 0:
        raise ValueError("codes are non-negative")
    if n < 4096:
        return _decode_small(n)
    return _decode(n)


def singleton(a: HF) -> HF:
    return HF._make((a,))


def pair(a: HF, b: HF) -> HF:
    """Kuratowski pair ``{{a}, {a, b}}``."""
    return HF((singleton(a), HF((a, b))))


def _pair_parts(p: HF) -> tuple[HF, HF]:
    kids = p._children
    if len(kids) == 1 and len(kids[0]) == 1:
        (a,) = kids[0]._children
        return a, a
    if len(kids) == 2:
        small, big = (kids[1], kids[0]) if len(kids[1]) == 1 else (kids[0], kids[1])
        if len(small) == 1 and len(big) == 2:
            (a,) = small._children
            if a in big.members():
                b = next(y for y in big._children if y != a)
                return a, b
    raise ValueError(f"{render(p)} is not an ordered pair")


def is_pair(p: HF) -> bool:
    try:
        _pair_parts(p)
    except ValueError:
        return False
    return True


def pair_fst(p: HF) -> HF:
    return _pair_parts(p)[0]


def pair_snd(p: HF) -> HF:
    return _pair_parts(p)[1]


def ord_of(n: int) -> HF:
    """Von Neumann ordinal ``{0, 1, ..., n-1}``."""
    if n < 0:
        raise ValueError("ordinals are non-negative")
    x = EMPTY
    for _ in range(n):
        # x is larger than all of its elements, so it goes in front
        x = HF._make((x, *x._children))
    return x


ZERO = ord_of(0)
ONE = ord_of(1)


def inl(a: HF) -> HF:
    return pair(ZERO, a)


def inr(b: HF) -> HF:
    return pair(ONE, b)


def tag_of(x: HF) -> Tag:
    t = pair_fst(x)
    if t == ZERO:
        return Tag.LEFT
    if t == ONE:
        return Tag.RIGHT
    raise ValueError(f"{render(x)} is not a tagged value")


def untag(x: HF) -> HF:
    tag_of(x)
    return pair_snd(x)


def render(x: HF) -> str:
    return "{" + ",".join(render(c) for c in x._children) + "}"


def render_code(x: HF) -> str:
    """``#n`` shorthand, for small sets."""
    return f"#{code(x)}"


def parse(text: str) -> HF:
    """Parse brace syntax such as ``{{{}},{}}``; ``#n`` stands for ``decode(n)``."""
    parser = _HFParser(text)
    value = parser.value()
    parser.skip_ws()
    if parser.pos != len(text):
        raise HFSyntaxError("trailing characters", parser.pos)
    return value


class _HFParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def value(self) -> HF:
        self.skip_ws()
        c = self.peek()
        if c == "#":
            start = self.pos
            self.pos += 1
            while self.peek().isdigit():
                self.pos += 1
            digits = self.text[start + 1 : self.pos]
            if not digits:
                raise HFSyntaxError("expected digits after '#'", self.pos)
            return decode(int(digits))
        if c != "{":
            raise HFSyntaxError("expected '{' or '#'", self.pos)
        self.pos += 1
        items = []
        self.skip_ws()
        if self.peek() == "}":
            self.pos += 1
            return EMPTY
        while True:
            items.append(self.value())
            self.skip_ws()
            c = self.peek()
            if c == ",":
                self.pos += 1
            elif c == "}":
                self.pos += 1
                return HF(items)
            else:
                raise HFSyntaxError("expected ',' or '}'", self.pos)
