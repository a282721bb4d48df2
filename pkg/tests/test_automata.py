import random

import pytest

from hfauto.automata import (
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
from hfauto.constructions import concat_nfa, reverse_nfa
from hfauto.errors import AutomatonError
from hfauto.hfset import inl, inr, ord_of
from hfauto.proptest import random_dfa, random_nfa, random_word, words_upto
from zoo import S0, S1, exactly, m_even, n_aplus


def test_m_even_is_valid():
    assert dfa_validate(m_even()) == []


def test_final_outside_states_reported():
    m = m_even()
    bad = Dfa(m.alphabet, m.states, m.init, [ord_of(5)], m.nxt)
    (v,) = dfa_validate(bad)
    assert v.axiom == "final"
    assert v.witness == ord_of(5)


def test_escaping_transition_reported():
    m = m_even()
    nxt = dict(m.nxt)
    nxt[S1, "a"] = ord_of(9)
    (v,) = dfa_validate(Dfa(m.alphabet, m.states, m.init, m.final, nxt))
    assert v.axiom == "nxt"
    assert v.witness == (S1, "a")


def test_missing_transition_and_init_reported():
    m = m_even()
    nxt = dict(m.nxt)
    del nxt[S0, "b"]
    axioms = {v.axiom for v in dfa_validate(Dfa(m.alphabet, m.states, ord_of(4), m.final, nxt))}
    assert axioms == {"init", "nxt"}


def test_empty_alphabet_reported():
    assert [v.axiom for v in dfa_validate(Dfa((), [S0], S0, [], {}))] == ["alphabet"]


def test_dfa_nextl():
    m = m_even()
    assert dfa_nextl(m, S0, "") == S0
    assert dfa_nextl(m, S0, "aa") == S0
    assert dfa_nextl(m, S0, "ab") == S1


def test_dfa_nextl_errors():
    m = m_even()
    with pytest.raises(AutomatonError):
        dfa_nextl(m, ord_of(3), "a")
    with pytest.raises(AutomatonError):
        dfa_nextl(m, S0, "az")


def test_dfa_accepts():
    m = m_even()
    assert dfa_accepts(m, "")
    assert not dfa_accepts(m, "a")
    assert dfa_accepts(m, "baab")
    assert "baab" in m


def test_eq_nextl_related():
    m = m_even()
    assert eq_nextl_related(m, "", "aa")
    assert eq_nextl_related(m, "abba", "abba")
    assert not eq_nextl_related(m, "a", "b")


def test_nfa_validate():
    assert nfa_validate(reverse_nfa(m_even())) == []
    n = n_aplus()
    bad = Nfa(n.alphabet, n.states, [ord_of(3)], n.final, n.nxt)
    assert [v.axiom for v in nfa_validate(bad)] == ["init"]
    # ε-pairs may mention anything
    loose = Nfa(n.alphabet, n.states, n.init, n.final, n.nxt, [(S0, ord_of(8))])
    assert nfa_validate(loose) == []


def test_nfa_escaping_transition_reported():
    n = Nfa(("a",), [S0], [S0], [], {(S0, "a"): [ord_of(4)]})
    (v,) = nfa_validate(n)
    assert v.axiom == "nxt"


def test_epsclo_examples():
    n = n_aplus()
    assert epsclo(n, []) == frozenset()
    assert epsclo(n, [S0, S1]) == {S0, S1}
    # concatenation sum: final state of the left machine reaches the right's start
    left, right = exactly("a"), exactly("b")
    k = concat_nfa(left, right)
    accept_left = ord_of(1)
    assert epsclo(k, [inl(accept_left)]) == {inl(accept_left), inr(right.init)}


def test_epsclo_through_non_states():
    q = ord_of(9)
    n = Nfa(("a",), [S0, S1], [S0], [S1], {}, [(S0, q), (q, S1)])
    assert epsclo(n, [S0]) == {S0, S1}
    assert epsclo(n, [q]) == {S1}


def test_nfa_nextl():
    n = n_aplus()
    assert nfa_nextl(n, [S0], "") == epsclo(n, [S0])
    assert nfa_nextl(n, [S0], "a") == {S0, S1}
    assert nfa_nextl(n, [S0], "aa") == {S0, S1}
    with pytest.raises(AutomatonError):
        nfa_nextl(n, [S0], "z")


def test_nfa_accepts():
    n = n_aplus()
    assert not nfa_accepts(n, "")
    assert nfa_accepts(n, "a")
    assert nfa_accepts(n, "aaa")


def test_append_law_random():
    rng = random.Random(1)
    for _ in range(1000):
        m = random_dfa(rng, 5)
        q = rng.choice(m.states)
        u, v = random_word(rng, 6), random_word(rng, 6)
        assert dfa_nextl(m, q, u + v) == dfa_nextl(m, dfa_nextl(m, q, u), v)
        assert dfa_nextl(m, q, u) in m.state_set


def test_epsclo_properties_random():
    rng = random.Random(2)
    for _ in range(300):
        n = random_nfa(rng, 5)
        qs = [q for q in n.states if rng.random() < 0.5]
        c = epsclo(n, qs)
        assert epsclo(n, c) == c
        assert c <= n.state_set
        assert epsclo(n, qs + [n.states[0]]) >= c
        after = nfa_nextl(n, qs, random_word(rng, 5))
        assert epsclo(n, after) == after


def test_eq_nextl_right_invariant_random():
    rng = random.Random(3)
    for _ in range(300):
        m = random_dfa(rng, 4)
        u, w = random_word(rng, 5), random_word(rng, 4)
        v = u + ("a", "b") if rng.random() < 0.5 else random_word(rng, 5)
        if eq_nextl_related(m, u, v):
            assert eq_nextl_related(m, u + w, v + w)


def test_dfa_embedding_same_language():
    rng = random.Random(4)
    for _ in range(100):
        m = random_dfa(rng, 5)
        n = dfa_to_nfa(m)
        assert nfa_validate(n) == []
        assert all(dfa_accepts(m, w) == nfa_accepts(n, w) for w in words_upto(m.alphabet, 6))


def test_render_word():
    assert render_word(()) == "ε"
    assert render_word(("a", "b")) == "ab"
    assert render_word(("x1", "y")) == "x1 y"


def test_structural_equality():
    assert m_even() == m_even()
    assert m_even() != Dfa(m_even().alphabet, [S0, S1], S1, [S0], m_even().nxt)
