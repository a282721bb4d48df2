"""Command-line front end.

Exit status: 0 for success / accept / equivalent, 1 for a negative verdict,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import textformat
from .automata import (
    Dfa,
    Nfa,
    dfa_accepts,
    dfa_to_nfa,
    dfa_trace,
    dfa_validate,
    nfa_accepts,
    nfa_trace,
    nfa_validate,
    render_word,
)
from .constructions import complement_dfa, power_dfa, reverse_nfa
from .dot import to_dot
from .errors import AutomatonError
from .hfset import render
from .langtools import distinguishing_word
from .minimize import accessible_dfa, brzozowski, canonical_dfa, collapse_dfa, find_isomorphism
from .proptest import run_suite
from .regex import RegexSyntaxError, regex_compile, regex_parse

OK, NO, ERROR = 0, 1, 2

TRANSFORMS = ("determinize", "reverse", "complement", "accessible", "collapse", "canonical", "brzozowski")


class UsageError(Exception):
    pass


def parse_word(text: str, alphabet: Sequence[str]) -> tuple[str, ...]:
    """Split a command-line word into symbols.

    With single-character symbols the word is read character by character
    (spaces ignored); otherwise symbols are separated by whitespace.  ``""``,
    ``ε`` and ``eps`` denote the empty word.
    """
    if text.strip() in ("", "ε", "eps"):
        return ()
    if all(len(x) == 1 for x in alphabet):
        symbols = tuple(c for c in text if not c.isspace())
    else:
        symbols = tuple(text.split())
    for x in symbols:
        if x not in alphabet:
            raise UsageError(f"symbol {x!r} is not in the alphabet {' '.join(alphabet)}")
    return symbols


def _load(path: str):
    try:
        return textformat.load(path)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except textformat.FormatError as e:
        raise UsageError(f"{path}: {e}") from None


def _load_dfa(path: str, op: str) -> Dfa:
    a = _load(path)
    if not isinstance(a, Dfa):
        raise UsageError(f"{op} needs a dfa, {path} holds an nfa")
    return a


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _same_alphabet(a, b) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise UsageError(f"alphabets differ: {' '.join(a.alphabet)} vs {' '.join(b.alphabet)}")


def cmd_check(args) -> int:
    a = _load(args.path)
    violations = dfa_validate(a) if isinstance(a, Dfa) else nfa_validate(a)
    if not violations:
        print("ok")
        return OK
    for v in violations:
        print(v)
    return NO


def cmd_run(args) -> int:
    a = _load(args.path)
    w = parse_word(args.word, a.alphabet)
    if isinstance(a, Dfa):
        steps = [render(q) for q in dfa_trace(a, w)]
        accepted = dfa_accepts(a, w)
    else:
        steps = ["[" + ",".join(render(q) for q in sorted(qs)) + "]" for qs in nfa_trace(a, w)]
        accepted = nfa_accepts(a, w)
    print(" → ".join(steps))
    print("accept" if accepted else "reject")
    return OK if accepted else NO


def cmd_transform(args) -> int:
    a = _load(args.path)
    op = args.op
    started = time.perf_counter()
    if op == "determinize":
        result = power_dfa(a if isinstance(a, Nfa) else dfa_to_nfa(a), mode=args.mode)
    else:
        if not isinstance(a, Dfa):
            raise UsageError(f"{op} needs a dfa, {args.path} holds an nfa")
        if op == "reverse":
            result = reverse_nfa(a)
        elif op == "complement":
            result = complement_dfa(a)
        elif op == "accessible":
            result = accessible_dfa(a)
        elif op == "collapse":
            result = collapse_dfa(a)
        elif op == "canonical":
            result = canonical_dfa(a)
        else:
            result = brzozowski(a, mode=args.mode if args.mode != "auto" else "reachable")
    elapsed = time.perf_counter() - started
    _emit(textformat.dumps(result), args.out)
    print(f"{op}: {len(a.states)} -> {len(result.states)} states ({elapsed * 1000:.1f} ms)", file=sys.stderr)
    return OK


def cmd_equiv(args) -> int:
    m1 = _load_dfa(args.path1, "equiv")
    m2 = _load_dfa(args.path2, "equiv")
    _same_alphabet(m1, m2)
    w = distinguishing_word(m1, m2)
    if w is None:
        print("equivalent")
        return OK
    print(f"differs on {render_word(w)}")
    return NO


def cmd_iso(args) -> int:
    m1 = _load_dfa(args.path1, "iso")
    m2 = _load_dfa(args.path2, "iso")
    _same_alphabet(m1, m2)
    h = find_isomorphism(m1, m2)
    if h is None:
        print("not isomorphic")
        return NO
    if h.ignored:
        print("ignored unreachable: " + " ".join(render(q) for q in h.ignored), file=sys.stderr)
    for q in sorted(h.mapping):
        print(f"{render(q)} ↦ {render(h(q))}")
    return OK


def cmd_regex(args) -> int:
    alphabet = tuple(args.alphabet.split()) if " " in args.alphabet.strip() else tuple(args.alphabet.strip())
    if not alphabet:
        raise UsageError("empty alphabet")
    r = regex_parse(args.expr, alphabet)
    m = regex_compile(r, alphabet)
    _emit(textformat.dumps(m), args.out)
    print(f"{len(m.states)} states", file=sys.stderr)
    return OK


def cmd_dot(args) -> int:
    a = _load(args.path)
    _emit(to_dot(a, name=Path(args.path).stem), args.out)
    return OK


def cmd_proptest(args) -> int:
    if args.count < 0 or args.max_len < 0 or args.max_states < 1:
        raise UsageError("--count and --max-len must be non-negative, --max-states positive")
    try:
        report = run_suite(
            seed=args.seed,
            count=args.count,
            max_states=args.max_states,
            max_len=args.max_len,
            properties=args.property or None,
            failure_dir=args.failures,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    sys.stdout.write(report.render())
    return OK if report.ok else NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfauto", description="Finite automata over hereditarily finite sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the automaton axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="run a word and print the state trace")
    p.add_argument("path")
    p.add_argument("word")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("transform", help="apply a construction")
    p.add_argument("op", choices=TRANSFORMS)
    p.add_argument("path")
    p.add_argument("--out", "-o")
    p.add_argument("--mode", choices=("auto", "full", "reachable"), default="auto", help="powerset scope")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("equiv", help="decide language equivalence of two DFAs")
    p.add_argument("path1")
    p.add_argument("path2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("iso", help="find an isomorphism between two DFAs")
    p.add_argument("path1")
    p.add_argument("path2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("regex", help="compile a regular expression to a minimal DFA")
    p.add_argument("expr")
    p.add_argument("--alphabet", "-a", default="ab", help="symbols, e.g. 'ab' or 'x y z'")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_regex)

    p = sub.add_parser("dot", help="export Graphviz DOT")
    p.add_argument("path")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("proptest", help="run the randomised property suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-states", type=int, default=5)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--property", action="append", help="run only this property (repeatable)")
    p.add_argument("--failures", default="proptest-failures", help="directory for counterexample files")
    p.set_defaults(func=cmd_proptest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code else OK
    try:
        return args.func(args)
    except (UsageError, AutomatonError, RegexSyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
