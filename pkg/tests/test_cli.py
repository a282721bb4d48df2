import random

import pytest

from hfauto import textformat
from hfauto.automata import Dfa, Nfa, dfa_validate
from hfauto.cli import main
from hfauto.constructions import complement_dfa, concat_nfa
from hfauto.hfset import ord_of
from hfauto.minimize import brzozowski, canonical_dfa
from hfauto.proptest import random_dfa, random_nfa
from zoo import all_accepting, cloned_sink, exactly, m_even, n_aplus

M_EVEN_TEXT = """\
# even number of a's
kind dfa
alphabet a b
state {}
state {{}}
init {}
final {}
trans {} a {{}}
trans {} b {}   # loop
trans {{}} a {}
trans {{}} b {{}}
"""


@pytest.fixture
def write(tmp_path):
    def _write(automaton_or_text, name="m.txt"):
        p = tmp_path / name
        text = automaton_or_text if isinstance(automaton_or_text, str) else textformat.dumps(automaton_or_text)
        p.write_text(text, encoding="utf-8")
        return str(p)

    return _write


# -- text format -------------------------------------------------------------


def test_loads_hand_written_file():
    assert textformat.loads(M_EVEN_TEXT) == m_even()


def test_code_shorthand():
    text = "kind dfa\nalphabet a\nstate #0\nstate #1\ninit #0\nfinal #1\ntrans #0 a #1\ntrans #1 a #1\n"
    m = textformat.loads(text)
    assert m.states == (ord_of(0), ord_of(1))


def test_round_trip_zoo():
    for a in (m_even(), n_aplus(), cloned_sink(), concat_nfa(exactly("a"), m_even())):
        assert textformat.loads(textformat.dumps(a)) == a


def test_round_trip_random():
    rng = random.Random(50)
    for _ in range(100):
        d, n = random_dfa(rng, 5), random_nfa(rng, 5, max_eps=3)
        assert textformat.loads(textformat.dumps(d)) == d
        assert textformat.loads(textformat.dumps(n)) == n


@pytest.mark.parametrize(
    "text,line",
    [
        ("kind dfa\nalphabet a\nstate {\n", 3),
        ("kind pda\n", 1),
        ("kind dfa\nalphabet a\nstate {}\ninit {}\ninit {{}}\n", 5),
        ("kind dfa\nalphabet a\nstate {}\ninit {}\nbogus x\n", 5),
        ("kind dfa\nalphabet a\nstate {}\nstate {{}}\ninit {}\ntrans {} a {} {{}}\n", 6),
    ],
)
def test_format_errors_carry_line(text, line):
    with pytest.raises(textformat.FormatError) as err:
        textformat.loads(text)
    assert err.value.line == line


# -- check ---------------------------------------------------------------------


def test_check_ok(write, capsys):
    assert main(["check", write(M_EVEN_TEXT)]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_check_violation(write, capsys):
    m = m_even()
    bad = Dfa(m.alphabet, m.states, m.init, [ord_of(5)], m.nxt)
    assert main(["check", write(bad)]) == 1
    assert "final" in capsys.readouterr().out


def test_check_parse_error(write, capsys):
    assert main(["check", write("kind dfa\nalphabet a\nstate {{}\n")]) == 2
    assert "line 3" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["check", str(tmp_path / "nope.txt")]) == 2


# -- run -----------------------------------------------------------------------


def test_run_accept_trace(write, capsys):
    assert main(["run", write(m_even()), "aa"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["{} → {{}} → {}", "accept"]


def test_run_reject(write, capsys):
    assert main(["run", write(m_even()), "a"]) == 1
    assert capsys.readouterr().out.splitlines()[-1] == "reject"


def test_run_bad_symbol(write):
    assert main(["run", write(m_even()), "z"]) == 2


def test_run_nfa(write, capsys):
    assert main(["run", write(n_aplus()), "a"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "[{}] → [{},{{}}]"


# -- transform -------------------------------------------------------------------


def test_determinize(write, tmp_path, capsys):
    out = tmp_path / "d.txt"
    assert main(["transform", "determinize", write(n_aplus()), "--mode", "reachable", "-o", str(out)]) == 0
    d = textformat.load(out)
    assert isinstance(d, Dfa) and len(d.states) == 3
    assert "2 -> 3 states" in capsys.readouterr().err


def test_brzozowski_cloned_sink(write, tmp_path):
    out = tmp_path / "b.txt"
    assert main(["transform", "brzozowski", write(cloned_sink()), "-o", str(out)]) == 0
    b = textformat.load(out)
    assert len(b.states) == 3 and dfa_validate(b) == []


def test_collapse_rejects_nfa(write):
    assert main(["transform", "collapse", write(n_aplus())]) == 2


def test_reverse_writes_nfa(write, capsys):
    assert main(["transform", "reverse", write(m_even())]) == 0
    assert isinstance(textformat.loads(capsys.readouterr().out), Nfa)


def test_unknown_op(write):
    assert main(["transform", "explode", write(m_even())]) == 2


# -- equiv / iso -----------------------------------------------------------------


def test_equiv(write, capsys):
    a = write(m_even(), "a.txt")
    assert main(["equiv", a, write(brzozowski(m_even()), "b.txt")]) == 0
    assert capsys.readouterr().out == "equivalent\n"
    assert main(["equiv", a, write(complement_dfa(m_even()), "c.txt")]) == 1
    assert capsys.readouterr().out == "differs on ε\n"
    assert main(["equiv", a, write(all_accepting(("a",)), "d.txt")]) == 2


def test_iso(write, capsys):
    a = write(m_even(), "a.txt")
    assert main(["iso", a, a]) == 0
    assert capsys.readouterr().out.splitlines() == ["{} ↦ {}", "{{}} ↦ {{}}"]
    c = cloned_sink()
    assert main(["iso", write(brzozowski(c), "b.txt"), write(canonical_dfa(c), "c.txt")]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3
    assert main(["iso", a, write(all_accepting(), "u.txt")]) == 1
    assert capsys.readouterr().out == "not isomorphic\n"
    assert main(["iso", a, write(all_accepting(("a",)), "x.txt")]) == 2


# -- regex / dot -------------------------------------------------------------------


def test_regex(capsys):
    assert main(["regex", "(a|b)*"]) == 0
    captured = capsys.readouterr()
    assert len(textformat.loads(captured.out).states) == 1
    assert captured.err == "1 states\n"
    assert main(["regex", "a*b"]) == 0
    assert len(textformat.loads(capsys.readouterr().out).states) == 3


def test_regex_syntax_error(capsys):
    assert main(["regex", "(("]) == 2
    assert "offset 2" in capsys.readouterr().err


def test_dot(write, capsys):
    assert main(["dot", write(m_even())]) == 0
    text = capsys.readouterr().out
    assert text.startswith("digraph")
    assert '"{}" [shape=doublecircle' in text
    assert '"{{}}" [shape=circle' in text
    assert "ε" not in text

    assert main(["dot", write(n_aplus())]) == 0
    text = capsys.readouterr().out
    assert "dashed" not in text
    assert '"{}" -> "{}" [label="a"]' in text and '"{}" -> "{{}}" [label="a"]' in text

    assert main(["dot", write(concat_nfa(exactly("a"), exactly("b")))]) == 0
    assert '[label="ε", style=dashed]' in capsys.readouterr().out


def test_dot_parse_error(write):
    assert main(["dot", write("kind dfa\nalphabet\n")]) == 2


def test_no_command():
    assert main([]) == 2
