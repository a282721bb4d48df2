"""Language-level tools: bounded enumeration, exact equivalence, witnesses."""

from __future__ import annotations

from collections import deque
from typing import Union

from .automata import Dfa, Nfa, Word, check_dfa, check_nfa, epsclo, same_alphabet
from .constructions import complement_dfa, intersect_dfa
from .minimize import accessible_states

Automaton = Union[Dfa, Nfa]


def enumerate_language(a: Automaton, max_len: int) -> list[Word]:
    """Every accepted word of length at most ``max_len``, length-lexicographically."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if isinstance(a, Dfa):
        check_dfa(a)
        layer = [((), a.init)]
        accepting = lambda q: q in a.final  # noqa: E731

        def step(q, x):
            return a.nxt[q, x]

    else:
        check_nfa(a)
        layer = [((), epsclo(a, a.init))]
        accepting = lambda qs: not qs.isdisjoint(a.final)  # noqa: E731

        def step(qs, x):
            out = set()
            for q in qs:
                out |= a.nxt.get((q, x), frozenset())
            return epsclo(a, out)

    out = []
    for n in range(max_len + 1):
        out.extend(w for w, q in layer if accepting(q))
        if n < max_len:
            layer = [(w + (x,), step(q, x)) for w, q in layer for x in a.alphabet]
    return out


def dfa_equiv(m1: Dfa, m2: Dfa) -> bool:
    """Exact language equality: both halves of the symmetric difference are empty."""
    same_alphabet(m1, m2)
    for left, right in ((m1, complement_dfa(m2)), (complement_dfa(m1), m2)):
        product = intersect_dfa(left, right)
        if not accessible_states(product).isdisjoint(product.final):
            return False
    return True


def distinguishing_word(m1: Dfa, m2: Dfa) -> Word | None:
    """The least word accepted by exactly one of the machines, or ``None``."""
    alphabet = same_alphabet(m1, m2)
    check_dfa(m1)
    check_dfa(m2)
    start = (m1.init, m2.init)
    seen = {start: ()}
    todo = deque([start])
    while todo:
        p, q = todo.popleft()
        w = seen[p, q]
        if (p in m1.final) != (q in m2.final):
            return w
        for x in alphabet:
            nxt = (m1.nxt[p, x], m2.nxt[q, x])
            if nxt not in seen:
                seen[nxt] = w + (x,)
                todo.append(nxt)
    return None
