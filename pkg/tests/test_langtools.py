import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfauto.automata import dfa_accepts
from hfauto.constructions import complement_dfa
from hfauto.errors import AlphabetMismatchError
from hfauto.langtools import dfa_equiv, distinguishing_word, enumerate_language
from hfauto.minimize import brzozowski, find_isomorphism
from hfauto.proptest import random_dfa, random_regex, words_upto
from hfauto.regex import (
    Alt,
    Cat,
    EmptySet,
    Epsilon,
    Lit,
    RegexSyntaxError,
    Star,
    regex_compile,
    regex_matches,
    regex_parse,
    regex_render,
)
from zoo import AB, all_accepting, exactly, m_even, n_aplus, nothing


def test_enumerate_examples():
    assert enumerate_language(m_even(), 2) == [(), ("b",), ("a", "a"), ("b", "b")]
    assert enumerate_language(nothing(), 5) == []
    assert enumerate_language(n_aplus(), 3) == [("a",), ("a", "a"), ("a", "a", "a")]
    with pytest.raises(ValueError):
        enumerate_language(m_even(), -1)


def test_enumerate_matches_filter():
    rng = random.Random(40)
    for _ in range(50):
        m = random_dfa(rng, 5)
        assert enumerate_language(m, 5) == [w for w in words_upto(AB, 5) if dfa_accepts(m, w)]


def test_dfa_equiv_examples():
    m = m_even()
    assert dfa_equiv(m, m)
    assert dfa_equiv(m, brzozowski(m))
    assert not dfa_equiv(m, complement_dfa(m))
    with pytest.raises(AlphabetMismatchError):
        dfa_equiv(m, all_accepting(("a",)))


def test_distinguishing_word_examples():
    m = m_even()
    assert distinguishing_word(m, m) is None
    assert distinguishing_word(m, complement_dfa(m)) == ()
    assert distinguishing_word(m, all_accepting()) == ("a",)


def test_equiv_cross_checked_with_enumeration():
    rng = random.Random(41)
    for _ in range(200):
        m1, m2 = random_dfa(rng, 3), random_dfa(rng, 3)
        bound = len(m1.states) * len(m2.states)
        agree = enumerate_language(m1, bound) == enumerate_language(m2, bound)
        assert dfa_equiv(m1, m2) == agree
        w = distinguishing_word(m1, m2)
        assert (w is None) == agree
        if w is not None:
            assert dfa_accepts(m1, w) != dfa_accepts(m2, w)
            shorter = [v for v in words_upto(AB, len(w)) if (len(v), v) < (len(w), w)]
            assert all(dfa_accepts(m1, v) == dfa_accepts(m2, v) for v in shorter)


# -- regex ---------------------------------------------------------------------


def test_parse_examples():
    abc = ("a", "b", "c")
    assert regex_parse("a(b|c)*", abc) == Cat(Lit("a"), Star(Alt(Lit("b"), Lit("c"))))
    assert regex_parse("a**", abc) == Star(Star(Lit("a")))
    assert regex_parse("ab|c", abc) == Alt(Cat(Lit("a"), Lit("b")), Lit("c"))
    assert regex_parse("ε|∅", abc) == Alt(Epsilon(), EmptySet())
    assert regex_parse("eps | empty", abc) == Alt(Epsilon(), EmptySet())
    assert regex_parse(" a b ", abc) == Cat(Lit("a"), Lit("b"))


def test_ascii_keywords_yield_to_alphabet():
    assert regex_parse("e", ("e", "p")) == Lit("e")


@pytest.mark.parametrize(
    "text,offset",
    [("(", 1), ("((", 2), ("a|", 2), ("", 0), ("a)", 1), ("*a", 0), ("ab(", 3), ("εz", 2), ("a|z", 2)],
)
def test_parse_errors(text, offset):
    with pytest.raises(RegexSyntaxError) as err:
        regex_parse(text, AB)
    assert err.value.offset == offset


def test_compile_examples():
    a = regex_compile(regex_parse("a", AB), AB)
    assert enumerate_language(a, 4) == [("a",)]
    universal = regex_compile(regex_parse("(a|b)*", AB), AB)
    assert len(universal.states) == 1 and universal.final == set(universal.states)
    astar_b = regex_compile(regex_parse("a*b", AB), AB)
    assert set(enumerate_language(astar_b, 4)) == {("a",) * k + ("b",) for k in range(4)}
    assert len(astar_b.states) == 3


def test_compile_empty_language_and_epsilon():
    assert enumerate_language(regex_compile(EmptySet(), AB), 4) == []
    assert enumerate_language(regex_compile(Epsilon(), AB), 4) == [()]


def test_compile_output_is_canonical_minimum():
    r = regex_parse("(ab|a)(b*)", AB)
    m = regex_compile(r, AB)
    assert find_isomorphism(m, brzozowski(m)) is not None


def test_compile_matches_brute_force_random():
    rng = random.Random(42)
    for _ in range(60):
        r = random_regex(rng)
        m = regex_compile(r, AB)
        for w in words_upto(AB, 5):
            assert dfa_accepts(m, w) == regex_matches(r, w), (regex_render(r), w)


def test_matcher_hand_cases():
    r = regex_parse("(ab)*", AB)
    assert regex_matches(r, "")
    assert regex_matches(r, "abab")
    assert not regex_matches(r, "aba")
    assert regex_matches(regex_parse("∅*a", AB), "a")
    assert not regex_matches(regex_parse("∅a", AB), "a")
    assert regex_matches(regex_parse("ε*", AB), "")


def test_render_examples():
    assert regex_render(regex_parse("a(b|a)*", AB)) == "(a((b|a)*))"
    assert regex_render(Epsilon()) == "ε"


regexes = st.recursive(
    st.one_of(st.just(EmptySet()), st.just(Epsilon()), st.sampled_from([Lit("a"), Lit("b")])),
    lambda inner: st.one_of(
        st.builds(Cat, inner, inner),
        st.builds(Alt, inner, inner),
        st.builds(Star, inner),
    ),
    max_leaves=8,
)


@settings(max_examples=300)
@given(regexes)
def test_parse_render_round_trip(r):
    assert regex_parse(regex_render(r), AB) == r


def test_exactly_fixture_sanity():
    assert enumerate_language(exactly("ab"), 3) == [("a", "b")]
