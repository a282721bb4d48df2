"""Accessibility, indistinguishability, minimality and minimisation.

Right and left languages are never materialised.  Indistinguishability is
decided by Moore-style partition refinement, accessibility by breadth-first
search, and the Myhill-Nerode classes of a language are read off the states
of its collapsed accessible automaton.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .automata import Dfa, Symbol, Word, check_dfa, dfa_nextl, same_alphabet
from .constructions import PowersetMode, power_dfa, reverse_nfa
from .errors import AutomatonError
from .hfset import HF, ord_of, render


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering a carrier set of states.

    Blocks are ordered by their least state.
    """

    blocks: tuple[frozenset[HF], ...]
    _index: Mapping[HF, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        index: dict[HF, int] = {}
        for i, b in enumerate(blocks):
            if not b:
                raise ValueError("partition blocks must be nonempty")
            for q in b:
                if q in index:
                    raise ValueError(f"{render(q)} lies in two blocks")
                index[q] = i
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_index", index)

    @property
    def carrier(self) -> frozenset[HF]:
        return frozenset(self._index)

    def block_index(self, q: HF) -> int:
        return self._index[q]

    def block_of(self, q: HF) -> frozenset[HF]:
        return self.blocks[self._index[q]]

    def same_block(self, p: HF, q: HF) -> bool:
        return self._index[p] == self._index[q]

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


@dataclass(frozen=True)
class StateMap:
    """A state bijection witnessing that two DFAs are isomorphic.

    ``ignored`` lists unreachable states of either machine that were pruned
    before the search.
    """

    mapping: Mapping[HF, HF]
    ignored: tuple[HF, ...] = ()

    def __call__(self, q: HF) -> HF:
        return self.mapping[q]

    def __len__(self) -> int:
        return len(self.mapping)


# -- accessibility -----------------------------------------------------------


def _bfs_paths(m: Dfa) -> dict[HF, Word]:
    # discovery order of a BFS that tries symbols in alphabet order is
    # length-lexicographic, so each recorded word is the least one
    paths: dict[HF, Word] = {m.init: ()}
    todo = deque([m.init])
    while todo:
        q = todo.popleft()
        for x in m.alphabet:
            r = m.nxt[q, x]
            if r not in paths:
                paths[r] = paths[q] + (x,)
                todo.append(r)
    return paths


def accessible_states(m: Dfa) -> frozenset[HF]:
    check_dfa(m)
    return frozenset(_bfs_paths(m))


def path_to(m: Dfa, q: HF) -> Word:
    """The length-lexicographically least word leading from the initial state to ``q``."""
    check_dfa(m)
    paths = _bfs_paths(m)
    if q not in paths:
        raise AutomatonError(f"{render(q)} is not accessible")
    return paths[q]


def accessible_dfa(m: Dfa) -> Dfa:
    reach = accessible_states(m)
    if len(reach) == len(m.states):
        return m
    return Dfa(
        alphabet=m.alphabet,
        states=reach,
        init=m.init,
        final=m.final & reach,
        nxt={(q, x): r for (q, x), r in m.nxt.items() if q in reach},
    )


# -- indistinguishability ----------------------------------------------------


def indistinguishability_partition(m: Dfa) -> Partition:
    """Group states with equal right languages.

    Starts from final/non-final and splits blocks by the blocks their
    successors fall in, until nothing changes.
    """
    check_dfa(m)
    label = {q: int(q in m.final) for q in m.states}
    count = len(set(label.values()))
    while True:
        signatures: dict[tuple, int] = {}
        new = {}
        for q in m.states:
            sig = (label[q], *(label[m.nxt[q, x]] for x in m.alphabet))
            new[q] = signatures.setdefault(sig, len(signatures))
        label = new
        if len(signatures) == count:
            break
        count = len(signatures)
    blocks: dict[int, set[HF]] = {}
    for q, b in label.items():
        blocks.setdefault(b, set()).add(q)
    return Partition(tuple(frozenset(b) for b in blocks.values()))


def collapse_dfa(m: Dfa) -> Dfa:
    """Merge indistinguishable states; each block becomes the HF set of its members."""
    part = indistinguishability_partition(m)
    as_hf = [HF(b) for b in part.blocks]

    def cls(q: HF) -> HF:
        return as_hf[part.block_index(q)]

    nxt = {}
    for block, h in zip(part.blocks, as_hf):
        for x in m.alphabet:
            # nxt respects the relation, so the union is a single block
            targets = {cls(m.nxt[q, x]) for q in block}
            (nxt[h, x],) = targets
    return Dfa(
        alphabet=m.alphabet,
        states=as_hf,
        init=cls(m.init),
        final={cls(q) for q in m.final},
        nxt=nxt,
    )


def is_minimal(m: Dfa) -> bool:
    return len(accessible_states(m)) == len(m.states) and indistinguishability_partition(m).is_discrete()


def min_states(m: Dfa) -> int:
    """Index of the Myhill-Nerode relation of the language of ``m``."""
    return len(collapse_dfa(accessible_dfa(m)).states)


# -- Myhill-Nerode ------------------------------------------------------------


def eq_app_right_classifier(m: Dfa) -> Callable[[Sequence[Symbol]], int]:
    """Map each word to the index of its Myhill-Nerode class for the language of ``m``.

    Two words get the same index iff no suffix separates them with respect to
    the language.  Indices follow the length-lexicographic order of the
    least word in each class, so the empty word's class is 0.
    """
    acc = accessible_dfa(m)
    part = indistinguishability_partition(acc)
    paths = _bfs_paths(acc)
    # paths come out in length-lexicographic order
    first: dict[int, Word] = {}
    for q, u in paths.items():
        first.setdefault(part.block_index(q), u)
    rank = {b: i for i, b in enumerate(first)}

    def classify(w: Sequence[Symbol]) -> int:
        return rank[part.block_index(dfa_nextl(acc, acc.init, w))]

    classify.representatives = tuple(first.values())  # type: ignore[attr-defined]
    return classify


def eq_app_right_related(m: Dfa, u: Sequence[Symbol], v: Sequence[Symbol]) -> bool:
    classify = eq_app_right_classifier(m)
    return classify(u) == classify(v)


def canonical_dfa(m: Dfa) -> Dfa:
    """The Myhill-Nerode automaton of the language of ``m``.

    Its states are the ordinals ``0 .. n-1``, one per class of words that no
    suffix can separate, numbered by the least word of each class.  The
    transition on ``x`` sends the class of ``u`` to the class of ``u + x``.
    """
    check_dfa(m)
    classify = eq_app_right_classifier(m)
    reps: tuple[Word, ...] = classify.representatives  # type: ignore[attr-defined]
    ords = [ord_of(i) for i in range(len(reps))]
    nxt = {}
    for i, u in enumerate(reps):
        for x in m.alphabet:
            nxt[ords[i], x] = ords[classify(u + (x,))]
    final = [ords[i] for i, u in enumerate(reps) if dfa_nextl(m, m.init, u) in m.final]
    return Dfa(alphabet=m.alphabet, states=ords, init=ords[classify(())], final=final, nxt=nxt)


# -- isomorphism -------------------------------------------------------------


def find_isomorphism(m: Dfa, n: Dfa) -> StateMap | None:
    """Find the state bijection between the accessible parts of ``m`` and ``n``.

    For accessible machines the only candidate maps the state reached by
    ``u`` in ``m`` to the state reached by ``u`` in ``n``; a parallel search
    builds it and checks that it is a bijection preserving initial, final and
    next states.
    """
    same_alphabet(m, n)
    am, an = accessible_dfa(m), accessible_dfa(n)
    ignored = tuple(sorted(set(m.states) - set(am.states))) + tuple(sorted(set(n.states) - set(an.states)))
    if len(am.states) != len(an.states):
        return None
    h = {am.init: an.init}
    inverse = {an.init: am.init}
    todo = deque([am.init])
    while todo:
        p = todo.popleft()
        q = h[p]
        for x in am.alphabet:
            p2, q2 = am.nxt[p, x], an.nxt[q, x]
            if p2 in h:
                if h[p2] != q2:
                    return None
            elif q2 in inverse:
                return None
            else:
                h[p2] = q2
                inverse[q2] = p2
                todo.append(p2)
    if len(h) != len(an.states):
        return None
    if {h[p] for p in am.final} != set(an.final):
        return None
    return StateMap(h, ignored)


# -- Brzozowski ----------------------------------------------------------------


def apr(m: Dfa, mode: PowersetMode = "reachable") -> Dfa:
    """Reverse, determinise, keep the accessible part.

    Because only the accessible part is kept, ``reachable`` and ``full``
    powerset modes give the same automaton; ``reachable`` is just cheaper.
    """
    return accessible_dfa(power_dfa(reverse_nfa(m), mode=mode))


def brzozowski(m: Dfa, mode: PowersetMode = "reachable") -> Dfa:
    return apr(apr(accessible_dfa(m), mode=mode), mode=mode)
