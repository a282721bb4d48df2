"""Randomised property suite over generated automata.

Case ``i`` of a run with seed ``s`` draws everything from
``random.Random(f"{s}:{i}")`` (string seeds hash through SHA-512, so runs are
reproducible across processes and platforms).  Generators:

* DFA: ``k`` states, ``k`` uniform in ``1..max_states``; states are the HF
  sets with ``k`` distinct codes drawn from ``0..4*max_states``; the first
  drawn state is initial; each state is final with probability 1/3; every
  transition target is uniform over the states.
* NFA: same state scheme; each transition target set includes each state
  with probability 1/3; every state is initial with probability 1/4 (the
  first always is); final with probability 1/3; ``0..max_eps`` ε-pairs.
* Regex: random tree of depth at most 4 over the alphabet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import product
from pathlib import Path
from typing import Callable, Iterator, Sequence

from .automata import (
    Dfa,
    Nfa,
    dfa_accepts,
    dfa_nextl,
    dfa_to_nfa,
    dfa_validate,
    epsclo,
    eq_nextl_related,
    nfa_accepts,
    nfa_nextl,
    nfa_validate,
    render_word,
)
from .constructions import (
    complement_dfa,
    concat_nfa,
    intersect_dfa,
    power_dfa,
    reverse_nfa,
    star_nfa,
    union_dfa,
)
from .hfset import HF, code, decode, singleton
from .langtools import dfa_equiv, distinguishing_word, enumerate_language
from .minimize import (
    accessible_dfa,
    accessible_states,
    apr,
    brzozowski,
    canonical_dfa,
    collapse_dfa,
    eq_app_right_classifier,
    find_isomorphism,
    is_minimal,
    min_states,
)
from .regex import Alt, Cat, Epsilon, EmptySet, Lit, Regex, Star, regex_compile, regex_matches, regex_render
from .textformat import dumps, loads

ALPHABET = ("a", "b")


# -- generators ----------------------------------------------------------------


def _states(rng: random.Random, k: int, max_states: int):
    codes = rng.sample(range(4 * max_states + 1), k)
    return [decode(c) for c in codes]


def random_dfa(rng: random.Random, max_states: int, alphabet: Sequence[str] = ALPHABET) -> Dfa:
    k = rng.randint(1, max_states)
    states = _states(rng, k, max_states)
    nxt = {(q, x): rng.choice(states) for q in states for x in alphabet}
    final = [q for q in states if rng.random() < 1 / 3]
    return Dfa(tuple(alphabet), states, states[0], final, nxt)


def random_nfa(
    rng: random.Random, max_states: int, alphabet: Sequence[str] = ALPHABET, max_eps: int = 4
) -> Nfa:
    k = rng.randint(1, max_states)
    states = _states(rng, k, max_states)
    nxt = {(q, x): [t for t in states if rng.random() < 1 / 3] for q in states for x in alphabet}
    init = [states[0]] + [q for q in states[1:] if rng.random() < 1 / 4]
    final = [q for q in states if rng.random() < 1 / 3]
    eps = [(rng.choice(states), rng.choice(states)) for _ in range(rng.randint(0, max_eps))]
    return Nfa(tuple(alphabet), states, init, final, nxt, eps)


def random_regex(rng: random.Random, depth: int = 4, alphabet: Sequence[str] = ALPHABET) -> Regex:
    if depth <= 1 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.08:
            return EmptySet()
        if roll < 0.16:
            return Epsilon()
        return Lit(rng.choice(alphabet))
    kind = rng.choice(("cat", "alt", "star"))
    if kind == "star":
        return Star(random_regex(rng, depth - 1, alphabet))
    left = random_regex(rng, depth - 1, alphabet)
    right = random_regex(rng, depth - 1, alphabet)
    return Cat(left, right) if kind == "cat" else Alt(left, right)


def random_word(rng: random.Random, max_len: int, alphabet: Sequence[str] = ALPHABET) -> tuple[str, ...]:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def words_upto(alphabet: Sequence[str], max_len: int) -> Iterator[tuple[str, ...]]:
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


# -- language-preserving rewrites (for the cardinality property) ---------------


def _fresh_states(m: Dfa, count: int):
    # the set of all states is never itself a state, and neither is any
    # singleton tower above it (ranks only grow)
    x = HF(m.states)
    out = []
    while len(out) < count:
        out.append(x)
        x = singleton(x)
    return out


def add_junk(m: Dfa, rng: random.Random) -> Dfa:
    junk = _fresh_states(m, rng.randint(1, 2))
    everything = list(m.states) + junk
    nxt = dict(m.nxt)
    for q in junk:
        for x in m.alphabet:
            nxt[q, x] = rng.choice(everything)
    final = set(m.final) | {q for q in junk if rng.random() < 0.5}
    return Dfa(m.alphabet, everything, m.init, final, nxt)


def clone_state(m: Dfa, rng: random.Random) -> Dfa:
    q = rng.choice(m.states)
    (twin,) = _fresh_states(m, 1)
    nxt = dict(m.nxt)
    for x in m.alphabet:
        nxt[twin, x] = m.nxt[q, x]
    for key, target in m.nxt.items():
        if target == q and rng.random() < 0.5:
            nxt[key] = twin
    final = set(m.final) | ({twin} if q in m.final else set())
    return Dfa(m.alphabet, list(m.states) + [twin], m.init, final, nxt)


def times_universal(m: Dfa, rng: random.Random) -> Dfa:
    other = random_dfa(rng, 3, m.alphabet)
    universal = replace(other, final=other.states)
    return intersect_dfa(m, universal)


def redeterminize(m: Dfa, rng: random.Random) -> Dfa:
    return power_dfa(dfa_to_nfa(m), mode="full" if len(m.states) <= 6 else "reachable")


def double_complement(m: Dfa, rng: random.Random) -> Dfa:
    return complement_dfa(complement_dfa(m))


REWRITES: tuple[Callable[[Dfa, random.Random], Dfa], ...] = (
    add_junk,
    clone_state,
    times_universal,
    redeterminize,
    double_complement,
)


def equivalent_variant(m: Dfa, rng: random.Random) -> Dfa:
    for _ in range(rng.randint(1, 3)):
        m = rng.choice(REWRITES)(m, rng)
    return m


# -- the case and the properties -------------------------------------------------


@dataclass
class Case:
    index: int
    rng: random.Random
    m: Dfa
    m2: Dfa
    n: Nfa
    regex: Regex
    max_len: int


class PropertyFailure(AssertionError):
    pass


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise PropertyFailure(message)


def _agree_upto(accept_a, accept_b, alphabet, max_len, what) -> None:
    for w in words_upto(alphabet, max_len):
        a, b = accept_a(w), accept_b(w)
        _require(a == b, f"{what} disagree on {render_word(w)}: {a} vs {b}")


def prop_hf_roundtrip(c: Case) -> None:
    for _ in range(20):
        n = c.rng.getrandbits(c.rng.randint(1, 40))
        _require(code(decode(n)) == n, f"code(decode({n})) != {n}")


def prop_dfa_valid(c: Case) -> None:
    _require(not dfa_validate(c.m), "generated DFA is not well formed")
    _require(not nfa_validate(c.n), "generated NFA is not well formed")


def prop_append_law(c: Case) -> None:
    m = c.m
    for _ in range(10):
        q = c.rng.choice(m.states)
        u, v = random_word(c.rng, c.max_len), random_word(c.rng, c.max_len)
        _require(
            dfa_nextl(m, q, u + v) == dfa_nextl(m, dfa_nextl(m, q, u), v),
            f"nextl not compositional on {render_word(u)}·{render_word(v)}",
        )


def prop_epsclo(c: Case) -> None:
    n = c.n
    qs = [q for q in n.states if c.rng.random() < 0.5]
    once = epsclo(n, qs)
    _require(epsclo(n, once) == once, "epsclo is not idempotent")
    _require(once <= n.state_set, "epsclo leaves the states")
    w = random_word(c.rng, c.max_len)
    after = nfa_nextl(n, qs, w)
    _require(epsclo(n, after) == after, "nfa nextl result is not ε-closed")


def prop_dfa_as_nfa(c: Case) -> None:
    _agree_upto(c.m.accepts, dfa_to_nfa(c.m).accepts, c.m.alphabet, c.max_len, "DFA and its NFA view")


def prop_power_language(c: Case) -> None:
    p = power_dfa(c.n)
    _require(not dfa_validate(p), "power_dfa output is not well formed")
    _require(len(p.states) <= 2 ** len(c.n.states), "power_dfa has too many states")
    _agree_upto(c.n.accepts, p.accepts, c.n.alphabet, c.max_len, "NFA and its power DFA")


def prop_power_modes(c: Case) -> None:
    full = power_dfa(c.n, mode="full")
    reach = power_dfa(c.n, mode="reachable")
    _require(dfa_equiv(full, reach), "full and reachable powerset modes differ")
    _require(accessible_dfa(full) == accessible_dfa(reach), "powerset modes differ on reachable part")


def prop_reversal(c: Case) -> None:
    r = reverse_nfa(c.m)
    _require(not nfa_validate(r), "reversed NFA is not well formed")
    _agree_upto(r.accepts, lambda w: dfa_accepts(c.m, w[::-1]), c.m.alphabet, c.max_len, "reversal")


def prop_intersection(c: Case) -> None:
    p = intersect_dfa(c.m, c.m2)
    _require(len(p.states) == len(c.m.states) * len(c.m2.states), "product state count")
    _agree_upto(p.accepts, lambda w: c.m.accepts(w) and c.m2.accepts(w), c.m.alphabet, c.max_len, "intersection")


def prop_union(c: Case) -> None:
    u = union_dfa(c.m, c.m2)
    _agree_upto(u.accepts, lambda w: c.m.accepts(w) or c.m2.accepts(w), c.m.alphabet, c.max_len, "union")


def prop_complement(c: Case) -> None:
    k = complement_dfa(c.m)
    _require(complement_dfa(k) == c.m, "complement is not an involution")
    _agree_upto(k.accepts, lambda w: not c.m.accepts(w), c.m.alphabet, c.max_len, "complement")


def _splits(w):
    return ((w[:i], w[i:]) for i in range(len(w) + 1))


def prop_concatenation(c: Case) -> None:
    k = concat_nfa(c.m, c.m2)
    _require(len(k.states) == len(c.m.states) + len(c.m2.states), "sum state count")
    _agree_upto(
        k.accepts,
        lambda w: any(c.m.accepts(u) and c.m2.accepts(v) for u, v in _splits(w)),
        c.m.alphabet,
        c.max_len,
        "concatenation",
    )


def _in_star(accepts, w) -> bool:
    # w splits into nonempty chunks each accepted
    ok = [True] + [False] * len(w)
    for j in range(1, len(w) + 1):
        ok[j] = any(ok[i] and accepts(w[i:j]) for i in range(j))
    return ok[len(w)]


def prop_star(c: Case) -> None:
    s = star_nfa(c.m)
    _require(len(s.states) == len(c.m.states) + 1, "star state count")
    _agree_upto(s.accepts, lambda w: _in_star(c.m.accepts, w), c.m.alphabet, c.max_len, "star")


def prop_accessible(c: Case) -> None:
    a = accessible_dfa(c.m)
    _require(accessible_dfa(a) == a, "accessible_dfa is not idempotent")
    _require(dfa_equiv(a, c.m), "accessible_dfa changed the language")


def prop_collapse(c: Case) -> None:
    k = collapse_dfa(accessible_dfa(c.m))
    _require(is_minimal(k), "collapse of accessible part is not minimal")
    _require(dfa_equiv(k, c.m), "collapse changed the language")


def prop_canonical(c: Case) -> None:
    k = canonical_dfa(c.m)
    _require(dfa_equiv(k, c.m), "canonical DFA accepts a different language")
    _require(len(k.states) == min_states(c.m), "canonical DFA size differs from min_states")
    _require(is_minimal(k), "canonical DFA is not minimal")
    _require(min_states(c.m) <= len(c.m.states), "more Myhill-Nerode classes than states")


def prop_minimal_apr(c: Case) -> None:
    _require(is_minimal(apr(accessible_dfa(c.m))), "APR of an accessible DFA is not minimal")


def prop_minimal_brzozowski(c: Case) -> None:
    b = brzozowski(c.m)
    _require(is_minimal(b), "Brzozowski output is not minimal")
    w = distinguishing_word(b, c.m)
    _require(w is None, f"Brzozowski output differs from the input on {render_word(w or ())}")


def prop_uniqueness(c: Case) -> None:
    b = brzozowski(c.m)
    k = collapse_dfa(accessible_dfa(c.m))
    n = canonical_dfa(c.m)
    _require(find_isomorphism(b, k) is not None, "Brzozowski and collapse results are not isomorphic")
    _require(find_isomorphism(n, k) is not None, "canonical and collapse results are not isomorphic")


def prop_card_le(c: Case) -> None:
    other = equivalent_variant(c.m, c.rng)
    _require(dfa_equiv(other, c.m), "rewrite changed the language")
    _require(len(brzozowski(c.m).states) <= len(other.states), "minimal DFA larger than an equivalent DFA")
    _require(len(brzozowski(other).states) <= len(c.m.states), "minimal DFA larger than an equivalent DFA")


def prop_myhill_nerode(c: Case) -> None:
    m = c.m
    classify = eq_app_right_classifier(m)
    reach = sorted(accessible_states(m))
    for _ in range(50):
        u = random_word(c.rng, c.max_len)
        # bias towards related pairs: v reaches the same state as u half the time
        if c.rng.random() < 0.5:
            v = u + random_word(c.rng, 2)
        else:
            target = dfa_nextl(m, m.init, u)
            v = next(
                (v for v in (random_word(c.rng, c.max_len) for _ in range(20)) if dfa_nextl(m, m.init, v) == target),
                u,
            )
        w = random_word(c.rng, c.max_len)
        if eq_nextl_related(m, u, v):
            _require(classify(u) == classify(v), "eq_nextl does not refine eq_app_right")
        if classify(u) == classify(v):
            _require(classify(u + w) == classify(v + w), "eq_app_right is not right invariant")
            _require(m.accepts(u) == m.accepts(v), "eq_app_right splits the language")
    _require(len(reach) >= min_states(m), "index exceeds accessible states")


def prop_equivalence(c: Case) -> None:
    same = dfa_equiv(c.m, c.m2)
    # a shortest difference is shorter than the product size; enumerate that
    # far when it is affordable
    bound = len(c.m.states) * len(c.m2.states) - 1
    depth = min(bound, 10)
    agree = enumerate_language(c.m, depth) == enumerate_language(c.m2, depth)
    if same:
        _require(agree, "equivalent machines differ on a short word")
    elif depth == bound:
        _require(not agree, "inequivalent machines agree up to the product bound")
    w = distinguishing_word(c.m, c.m2)
    _require((w is None) == same, "distinguishing word inconsistent with equivalence")
    if w is not None:
        _require(c.m.accepts(w) != c.m2.accepts(w), "witness is accepted by both or neither")
        for v in words_upto(c.m.alphabet, len(w)):
            if (len(v), v) >= (len(w), w):
                break
            _require(c.m.accepts(v) == c.m2.accepts(v), "a shorter distinguishing word exists")


def prop_regex(c: Case) -> None:
    d = regex_compile(c.regex, ALPHABET)
    _agree_upto(
        d.accepts,
        lambda w: regex_matches(c.regex, w),
        ALPHABET,
        min(c.max_len, 5),
        f"regex {regex_render(c.regex)}",
    )


def prop_text_roundtrip(c: Case) -> None:
    for a in (c.m, c.n, power_dfa(c.n)):
        _require(loads(dumps(a)) == a, "text format does not round-trip")


PROPERTIES: dict[str, Callable[[Case], None]] = {
    "hf_code_roundtrip": prop_hf_roundtrip,
    "generators_valid": prop_dfa_valid,
    "nextl_append": prop_append_law,
    "epsclo_closed": prop_epsclo,
    "dfa_as_nfa": prop_dfa_as_nfa,
    "Power_language": prop_power_language,
    "powerset_modes_agree": prop_power_modes,
    "Reverse_language": prop_reversal,
    "regular_Int": prop_intersection,
    "regular_Un": prop_union,
    "regular_Compl": prop_complement,
    "regular_conc": prop_concatenation,
    "regular_star": prop_star,
    "Accessible_language": prop_accessible,
    "Collapse_language": prop_collapse,
    "MN_imp_dfa": prop_canonical,
    "minimal_APR": prop_minimal_apr,
    "minimal_Brzozowski": prop_minimal_brzozowski,
    "minimal_isomorphic": prop_uniqueness,
    "minimal_imp_card_states_le": prop_card_le,
    "myhill_nerode_relations": prop_myhill_nerode,
    "equivalence_oracles": prop_equivalence,
    "regex_semantics": prop_regex,
    "text_roundtrip": prop_text_roundtrip,
}


def make_case(seed: int, index: int, max_states: int, max_len: int) -> Case:
    rng = random.Random(f"{seed}:{index}")
    return Case(
        index=index,
        rng=rng,
        m=random_dfa(rng, max_states),
        m2=random_dfa(rng, max_states),
        n=random_nfa(rng, max_states),
        regex=random_regex(rng),
        max_len=max_len,
    )


# -- shrinking ----------------------------------------------------------------------


def _dfa_shrinks(m: Dfa) -> Iterator[Dfa]:
    # drop a state, sending its incoming edges to the initial state
    for q in m.states:
        if q == m.init:
            continue
        keep = [s for s in m.states if s != q]
        nxt = {(s, x): (m.init if t == q else t) for (s, x), t in m.nxt.items() if s != q}
        yield Dfa(m.alphabet, keep, m.init, m.final - {q}, nxt)
    for q in sorted(m.final):
        yield replace(m, final=m.final - {q})
    for (s, x), t in sorted(m.nxt.items()):
        if t != s:
            nxt = dict(m.nxt)
            nxt[s, x] = s
            yield replace(m, nxt=nxt)


def _nfa_shrinks(n: Nfa) -> Iterator[Nfa]:
    for p in sorted(n.eps):
        yield replace(n, eps=n.eps - {p})
    for key in sorted(n.nxt):
        nxt = dict(n.nxt)
        del nxt[key]
        yield replace(n, nxt=nxt)
    for q in sorted(n.final):
        yield replace(n, final=n.final - {q})
    for q in sorted(n.init):
        if len(n.init) > 1:
            yield replace(n, init=n.init - {q})


def _fails(check: Callable[[Case], None], case: Case, seed: str) -> str | None:
    probe = replace(case, rng=random.Random(seed))
    try:
        check(probe)
    except PropertyFailure as e:
        return str(e)
    except Exception as e:  # crashes count as failures too
        return f"{type(e).__name__}: {e}"
    return None


def shrink(check: Callable[[Case], None], case: Case, seed: str, rounds: int = 200) -> tuple[Case, str]:
    """Greedily simplify the automata of a failing case while it keeps failing.

    ``seed`` reseeds the property's random choices on every attempt.
    """
    message = _fails(check, case, seed) or "failure did not reproduce"
    for _ in range(rounds):
        for candidate in _candidates(case):
            msg = _fails(check, candidate, seed)
            if msg is not None:
                case, message = candidate, msg
                break
        else:
            break
    return case, message


def _candidates(case: Case) -> Iterator[Case]:
    for m in _dfa_shrinks(case.m):
        yield replace(case, m=m)
    for m2 in _dfa_shrinks(case.m2):
        yield replace(case, m2=m2)
    for n in _nfa_shrinks(case.n):
        yield replace(case, n=n)


# -- runner -------------------------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = None
    counterexample: Path | None = None


@dataclass
class Report:
    seed: int
    count: int
    max_states: int
    max_len: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results)

    def render(self) -> str:
        lines = [
            f"proptest seed={self.seed} count={self.count} max_states={self.max_states} max_len={self.max_len}"
        ]
        for r in self.results:
            status = "PASS" if r.failed == 0 else "FAIL"
            lines.append(f"{status} {r.name}: {r.passed}/{r.passed + r.failed}")
            if r.first_failure:
                lines.append(f"    {r.first_failure}")
            if r.counterexample:
                lines.append(f"    counterexample: {r.counterexample}")
        lines.append("all properties pass" if self.ok else "some properties FAILED")
        return "\n".join(lines) + "\n"


def run_suite(
    seed: int = 42,
    count: int = 100,
    max_states: int = 5,
    max_len: int = 6,
    properties: Sequence[str] | None = None,
    failure_dir: Path | str | None = None,
) -> Report:
    names = list(PROPERTIES) if properties is None else list(properties)
    unknown = [n for n in names if n not in PROPERTIES]
    if unknown:
        raise ValueError(f"unknown property: {', '.join(unknown)}")
    report = Report(seed, count, max_states, max_len, [PropertyResult(n) for n in names])
    cases = [make_case(seed, i, max_states, max_len) for i in range(count)]
    for result in report.results:
        check = PROPERTIES[result.name]
        for case in cases:
            case_seed = f"{seed}:{case.index}:{result.name}"
            msg = _fails(check, case, case_seed)
            if msg is None:
                result.passed += 1
                continue
            result.failed += 1
            if result.first_failure is None:
                small, msg = shrink(check, case, case_seed)
                result.first_failure = f"case {case.index}: {msg}"
                if failure_dir is not None:
                    result.counterexample = _write_counterexample(Path(failure_dir), result.name, small)
    return report


def _write_counterexample(directory: Path, name: str, case: Case) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{name}-case{case.index}.txt"
    parts = [
        f"# counterexample for {name}, case {case.index}",
        "# --- m",
        dumps(case.m),
        "# --- m2",
        dumps(case.m2),
        "# --- n",
        dumps(case.n),
        f"# --- regex {regex_render(case.regex)}",
    ]
    path.write_text("\n".join(parts), encoding="utf-8")
    return path
