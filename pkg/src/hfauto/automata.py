"""DFA and ε-NFA values, their well-formedness conditions and run semantics.

States are HF values.  Symbols are short strings; the position of a symbol in
the alphabet tuple fixes the symbol order used for length-lexicographic word
order.  A word is any sequence of symbols, so ``"abba"`` works directly when
every symbol is a single character.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import AlphabetMismatchError, AutomatonError, InvalidAutomatonError
from .hfset import HF, render

Symbol = str
Word = tuple[Symbol, ...]


def word(symbols: Iterable[Symbol]) -> Word:
    return tuple(symbols)


def render_word(w: Sequence[Symbol]) -> str:
    if not w:
        return "ε"
    if all(len(x) == 1 for x in w):
        return "".join(w)
    return " ".join(w)


def _alphabet(symbols: Iterable[Symbol]) -> tuple[Symbol, ...]:
    seen: dict[Symbol, None] = {}
    for x in symbols:
        if not isinstance(x, str) or not x:
            raise AutomatonError(f"symbols must be nonempty strings, got {x!r}")
        seen.setdefault(x, None)
    return tuple(seen)


def _state_tuple(states: Iterable[HF]) -> tuple[HF, ...]:
    return tuple(sorted(set(states)))


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: object
    message: str

    def __str__(self) -> str:
        return f"{self.axiom}: {self.message}"


@dataclass(frozen=True, eq=True)
class Dfa:
    """A deterministic automaton with a finite transition table.

    Construction only normalises the components (states sorted ascending,
    final set frozen); it does not check the well-formedness conditions.
    Use :func:`dfa_validate` for that.
    """

    alphabet: tuple[Symbol, ...]
    states: tuple[HF, ...]
    init: HF
    final: frozenset[HF]
    nxt: Mapping[tuple[HF, Symbol], HF] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _alphabet(self.alphabet))
        object.__setattr__(self, "states", _state_tuple(self.states))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "nxt", dict(self.nxt))

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def state_set(self) -> frozenset[HF]:
        return frozenset(self.states)

    def step(self, q: HF, x: Symbol) -> HF:
        try:
            return self.nxt[q, x]
        except KeyError:
            if x not in self.alphabet:
                raise AutomatonError(f"symbol {x!r} is not in the alphabet") from None
            raise AutomatonError(f"no transition from {render(q)} on {x!r}") from None

    def accepts(self, w: Sequence[Symbol]) -> bool:
        return dfa_accepts(self, w)

    def __contains__(self, w: Sequence[Symbol]) -> bool:
        return dfa_accepts(self, w)


@dataclass(frozen=True, eq=True)
class Nfa:
    """A nondeterministic automaton with ε-moves and a set of initial states.

    Missing ``nxt`` entries mean the empty set.  ε-pairs may mention values
    that are not states; the closure simply ignores them.
    """

    alphabet: tuple[Symbol, ...]
    states: tuple[HF, ...]
    init: frozenset[HF]
    final: frozenset[HF]
    nxt: Mapping[tuple[HF, Symbol], frozenset[HF]] = field(repr=False)
    eps: frozenset[tuple[HF, HF]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _alphabet(self.alphabet))
        object.__setattr__(self, "states", _state_tuple(self.states))
        object.__setattr__(self, "init", frozenset(self.init))
        object.__setattr__(self, "final", frozenset(self.final))
        table = {}
        for key, targets in self.nxt.items():
            targets = frozenset(targets)
            if targets:
                table[key] = targets
        object.__setattr__(self, "nxt", table)
        object.__setattr__(self, "eps", frozenset((p, q) for p, q in self.eps))

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def state_set(self) -> frozenset[HF]:
        return frozenset(self.states)

    @cached_property
    def eps_successors(self) -> Mapping[HF, tuple[HF, ...]]:
        succ = defaultdict(list)
        for p, q in self.eps:
            succ[p].append(q)
        return {p: tuple(qs) for p, qs in succ.items()}

    def step(self, q: HF, x: Symbol) -> frozenset[HF]:
        if x not in self.alphabet:
            raise AutomatonError(f"symbol {x!r} is not in the alphabet")
        return self.nxt.get((q, x), frozenset())

    def accepts(self, w: Sequence[Symbol]) -> bool:
        return nfa_accepts(self, w)

    def __contains__(self, w: Sequence[Symbol]) -> bool:
        return nfa_accepts(self, w)


# -- well-formedness ---------------------------------------------------------


def dfa_validate(m: Dfa) -> list[Violation]:
    """Check the DFA axioms; an empty list means the automaton is well formed."""
    out = []
    states = m.state_set
    if not m.alphabet:
        out.append(Violation("alphabet", None, "alphabet is empty"))
    if m.init not in states:
        out.append(Violation("init", m.init, f"initial state {render(m.init)} is not a state"))
    for q in sorted(m.final - states):
        out.append(Violation("final", q, f"final state {render(q)} is not a state"))
    for q in m.states:
        for x in m.alphabet:
            target = m.nxt.get((q, x))
            if target is None:
                out.append(Violation("nxt", (q, x), f"no transition from {render(q)} on {x!r}"))
            elif target not in states:
                out.append(
                    Violation(
                        "nxt",
                        (q, x),
                        f"transition from {render(q)} on {x!r} leaves the states ({render(target)})",
                    )
                )
    for q, x in m.nxt:
        if x not in m.alphabet:
            out.append(Violation("alphabet", (q, x), f"transition on unknown symbol {x!r}"))
    return out


def nfa_validate(n: Nfa) -> list[Violation]:
    """Check the NFA axioms.  ε-pairs are deliberately not checked."""
    out = []
    states = n.state_set
    if not n.alphabet:
        out.append(Violation("alphabet", None, "alphabet is empty"))
    for q in sorted(n.init - states):
        out.append(Violation("init", q, f"initial state {render(q)} is not a state"))
    for q in sorted(n.final - states):
        out.append(Violation("final", q, f"final state {render(q)} is not a state"))
    for (q, x), targets in sorted(n.nxt.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if x not in n.alphabet:
            out.append(Violation("alphabet", (q, x), f"transition on unknown symbol {x!r}"))
        elif q in states and not targets <= states:
            bad = ", ".join(render(t) for t in sorted(targets - states))
            out.append(
                Violation("nxt", (q, x), f"transition from {render(q)} on {x!r} leaves the states ({bad})")
            )
    return out


def check_dfa(m: Dfa) -> Dfa:
    violations = dfa_validate(m)
    if violations:
        raise InvalidAutomatonError(violations)
    return m


def check_nfa(n: Nfa) -> Nfa:
    violations = nfa_validate(n)
    if violations:
        raise InvalidAutomatonError(violations)
    return n


def same_alphabet(a: Dfa | Nfa, b: Dfa | Nfa) -> tuple[Symbol, ...]:
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatchError(a.alphabet, b.alphabet)
    return a.alphabet


# -- DFA semantics -----------------------------------------------------------


def dfa_nextl(m: Dfa, q: HF, w: Sequence[Symbol]) -> HF:
    if q not in m.state_set:
        raise AutomatonError(f"{render(q)} is not a state")
    for x in w:
        q = m.step(q, x)
    return q


def dfa_trace(m: Dfa, w: Sequence[Symbol]) -> list[HF]:
    """States visited while reading ``w`` from the initial state."""
    q = m.init
    out = [q]
    for x in w:
        q = m.step(q, x)
        out.append(q)
    return out


def dfa_accepts(m: Dfa, w: Sequence[Symbol]) -> bool:
    return dfa_nextl(m, m.init, w) in m.final


def eq_nextl_related(m: Dfa, u: Sequence[Symbol], v: Sequence[Symbol]) -> bool:
    return dfa_nextl(m, m.init, u) == dfa_nextl(m, m.init, v)


# -- NFA semantics -----------------------------------------------------------


def epsclo(n: Nfa, qs: Iterable[HF]) -> frozenset[HF]:
    """Reflexive-transitive ε-closure of ``qs``, restricted to the states.

    Paths may pass through non-states; only the endpoints are filtered.
    """
    succ = n.eps_successors
    if not succ:
        return frozenset(qs) & n.state_set
    seen = set(qs)
    todo = deque(seen)
    while todo:
        p = todo.popleft()
        for q in succ.get(p, ()):
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return frozenset(seen) & n.state_set


def nfa_step(n: Nfa, qs: Iterable[HF], x: Symbol) -> frozenset[HF]:
    """One symbol of ``nextl``: successors of the closure of ``qs``, closed again."""
    out: set[HF] = set()
    for q in epsclo(n, qs):
        out |= n.step(q, x)
    return epsclo(n, out)


def nfa_nextl(n: Nfa, qs: Iterable[HF], w: Sequence[Symbol]) -> frozenset[HF]:
    cur = epsclo(n, qs)
    for x in w:
        if x not in n.alphabet:
            raise AutomatonError(f"symbol {x!r} is not in the alphabet")
        nxt: set[HF] = set()
        for q in cur:
            nxt |= n.nxt.get((q, x), frozenset())
        cur = epsclo(n, nxt)
    return cur


def nfa_trace(n: Nfa, w: Sequence[Symbol]) -> list[frozenset[HF]]:
    cur = epsclo(n, n.init)
    out = [cur]
    for x in w:
        cur = nfa_nextl(n, cur, (x,))
        out.append(cur)
    return out


def nfa_accepts(n: Nfa, w: Sequence[Symbol]) -> bool:
    return not nfa_nextl(n, n.init, w).isdisjoint(n.final)


def dfa_to_nfa(m: Dfa) -> Nfa:
    """View a DFA as an NFA: singleton transitions, one initial state, no ε."""
    return Nfa(
        alphabet=m.alphabet,
        states=m.states,
        init={m.init},
        final=m.final,
        nxt={k: frozenset((v,)) for k, v in m.nxt.items()},
    )
