"""Automaton constructions: determinisation, reversal and the closure properties."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Literal

from .automata import (
    Dfa,
    Nfa,
    check_dfa,
    check_nfa,
    epsclo,
    same_alphabet,
)
from .hfset import EMPTY, HF, inl, inr, pair

PowersetMode = Literal["auto", "full", "reachable"]

#: ``auto`` mode builds every subset up to this many NFA states.
FULL_POWERSET_LIMIT = 12


def power_dfa(n: Nfa, mode: PowersetMode = "auto", full_limit: int = FULL_POWERSET_LIMIT) -> Dfa:
    """Subset construction with ε-closure.

    ``full`` takes the closure of every subset of the states, as in the
    textbook definition.  ``reachable`` only explores closed subsets reachable
    from the initial one.  ``auto`` picks ``full`` when the NFA has at most
    ``full_limit`` states.  Both modes agree on the reachable part.
    """
    check_nfa(n)
    if mode == "auto":
        mode = "full" if len(n.states) <= full_limit else "reachable"
    elif mode not in ("full", "reachable"):
        raise ValueError(f"unknown powerset mode {mode!r}")

    as_hf: dict[frozenset[HF], HF] = {}

    def code(s: frozenset[HF]) -> HF:
        h = as_hf.get(s)
        if h is None:
            h = as_hf[s] = HF(s)
        return h

    def succ(s: frozenset[HF], x: str) -> frozenset[HF]:
        out: set[HF] = set()
        for q in s:
            out |= n.nxt.get((q, x), frozenset())
        return epsclo(n, out)

    start = epsclo(n, n.init)
    nxt: dict[tuple[HF, str], HF] = {}

    if mode == "full":
        closed = {epsclo(n, sub) for k in range(len(n.states) + 1) for sub in combinations(n.states, k)}
        for s in closed:
            for x in n.alphabet:
                nxt[code(s), x] = code(succ(s, x))
    else:
        closed = {start}
        todo = deque([start])
        while todo:
            s = todo.popleft()
            for x in n.alphabet:
                t = succ(s, x)
                nxt[code(s), x] = code(t)
                if t not in closed:
                    closed.add(t)
                    todo.append(t)

    return Dfa(
        alphabet=n.alphabet,
        states=[code(s) for s in closed],
        init=code(start),
        final=[code(s) for s in closed if not s.isdisjoint(n.final)],
        nxt=nxt,
    )


def reverse_nfa(m: Dfa) -> Nfa:
    """Flip every transition and swap the initial and final states."""
    check_dfa(m)
    back: dict[tuple[HF, str], set[HF]] = {}
    for p in m.states:
        for x in m.alphabet:
            back.setdefault((m.nxt[p, x], x), set()).add(p)
    return Nfa(
        alphabet=m.alphabet,
        states=m.states,
        init=m.final,
        final={m.init},
        nxt=back,
    )


def intersect_dfa(m1: Dfa, m2: Dfa) -> Dfa:
    """Product automaton running both machines in parallel."""
    alphabet = same_alphabet(m1, m2)
    check_dfa(m1)
    check_dfa(m2)
    nxt = {}
    for q1 in m1.states:
        for q2 in m2.states:
            p = pair(q1, q2)
            for x in alphabet:
                nxt[p, x] = pair(m1.nxt[q1, x], m2.nxt[q2, x])
    return Dfa(
        alphabet=alphabet,
        states=[pair(q1, q2) for q1 in m1.states for q2 in m2.states],
        init=pair(m1.init, m2.init),
        final=[pair(q1, q2) for q1 in m1.final for q2 in m2.final],
        nxt=nxt,
    )


def complement_dfa(m: Dfa) -> Dfa:
    check_dfa(m)
    return Dfa(
        alphabet=m.alphabet,
        states=m.states,
        init=m.init,
        final=m.state_set - m.final,
        nxt=m.nxt,
    )


def union_dfa(m1: Dfa, m2: Dfa) -> Dfa:
    same_alphabet(m1, m2)
    return complement_dfa(intersect_dfa(complement_dfa(m1), complement_dfa(m2)))


def concat_nfa(m1: Dfa, m2: Dfa) -> Nfa:
    """Disjoint sum of the two machines, with ε-moves from each final state of
    the first machine to the initial state of the second."""
    alphabet = same_alphabet(m1, m2)
    check_dfa(m1)
    check_dfa(m2)
    nxt = {}
    for q in m1.states:
        for x in alphabet:
            nxt[inl(q), x] = {inl(m1.nxt[q, x])}
    for q in m2.states:
        for x in alphabet:
            nxt[inr(q), x] = {inr(m2.nxt[q, x])}
    return Nfa(
        alphabet=alphabet,
        states=[inl(q) for q in m1.states] + [inr(q) for q in m2.states],
        init={inl(m1.init)},
        final={inr(q) for q in m2.final},
        nxt=nxt,
        eps={(inl(q), inr(m2.init)) for q in m1.final},
    )


def star_nfa(m: Dfa) -> Nfa:
    """Kleene star: a fresh initial and final state ``inl(∅)`` in front of the
    machine (whose states are tagged ``inr``), with ε-moves into its initial
    state and back from each of its final states."""
    check_dfa(m)
    fresh = inl(EMPTY)
    nxt = {}
    for q in m.states:
        for x in m.alphabet:
            nxt[inr(q), x] = {inr(m.nxt[q, x])}
    eps = {(fresh, inr(m.init))} | {(inr(q), fresh) for q in m.final}
    return Nfa(
        alphabet=m.alphabet,
        states=[fresh] + [inr(q) for q in m.states],
        init={fresh},
        final={fresh},
        nxt=nxt,
        eps=eps,
    )
