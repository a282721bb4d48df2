"""Line-oriented automaton files.

::

    # even number of a's
    kind dfa
    alphabet a b
    state {}
    state {{}}
    init {}
    final {}
    trans {} a {{}}
    trans {} b {}
    trans {{}} a {}
    trans {{}} b {{}}

``init`` may repeat for NFAs, ``trans`` may list several targets (or repeat)
for NFAs, and ``eps p q`` adds an ε-move.  HF literals use brace syntax or
``#n`` for the set with code ``n``.  A token starting with ``#`` that is not
``#<digits>`` begins a comment.
"""

from __future__ import annotations

from typing import Union

from .automata import Dfa, Nfa
from .errors import AutomatonError
from .hfset import HF, HFSyntaxError, parse, render

Automaton = Union[Dfa, Nfa]


class FormatError(AutomatonError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _tokens(line: str) -> list[str]:
    out = []
    for tok in line.split():
        if tok.startswith("#") and not tok[1:2].isdigit():
            break
        out.append(tok)
    return out


def loads(text: str) -> Automaton:
    kind = None
    alphabet: list[str] | None = None
    states: list[HF] = []
    init: list[HF] = []
    final: list[HF] = []
    trans: dict[tuple[HF, str], list[HF]] = {}
    eps: list[tuple[HF, HF]] = []
    trans_line: dict[tuple[HF, str], int] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        head, args = toks[0], toks[1:]

        def hf(tok: str) -> HF:
            try:
                return parse(tok)
            except HFSyntaxError as e:
                raise FormatError(f"bad HF literal {tok!r}: {e}", lineno) from None

        def arity(n: int, at_least: bool = False) -> None:
            if len(args) < n if at_least else len(args) != n:
                raise FormatError(f"'{head}' takes {'at least ' if at_least else ''}{n} argument(s)", lineno)

        if head == "kind":
            arity(1)
            if args[0] not in ("dfa", "nfa"):
                raise FormatError(f"unknown kind {args[0]!r}", lineno)
            if kind is not None:
                raise FormatError("kind given twice", lineno)
            kind = args[0]
        elif head == "alphabet":
            arity(1, at_least=True)
            if alphabet is not None:
                raise FormatError("alphabet given twice", lineno)
            if len(set(args)) != len(args):
                raise FormatError("repeated symbol in alphabet", lineno)
            alphabet = args
        elif head == "state":
            arity(1, at_least=True)
            states.extend(hf(t) for t in args)
        elif head == "init":
            arity(1, at_least=True)
            init.extend(hf(t) for t in args)
        elif head == "final":
            arity(1, at_least=True)
            final.extend(hf(t) for t in args)
        elif head == "trans":
            arity(3, at_least=True)
            key = (hf(args[0]), args[1])
            trans.setdefault(key, []).extend(hf(t) for t in args[2:])
            trans_line.setdefault(key, lineno)
        elif head == "eps":
            arity(2)
            eps.append((hf(args[0]), hf(args[1])))
        else:
            raise FormatError(f"unknown directive {head!r}", lineno)

    last = max(len(text.splitlines()), 1)
    if kind is None:
        raise FormatError("missing 'kind' line", last)
    if alphabet is None:
        raise FormatError("missing 'alphabet' line", last)

    if kind == "dfa":
        if len(init) != 1:
            raise FormatError(f"a dfa needs exactly one initial state, got {len(init)}", last)
        if eps:
            raise FormatError("a dfa cannot have eps transitions", last)
        nxt = {}
        for key, targets in trans.items():
            if len(set(targets)) != 1:
                raise FormatError(
                    f"dfa transition from {render(key[0])} on {key[1]!r} has {len(set(targets))} targets",
                    trans_line[key],
                )
            nxt[key] = targets[0]
        return Dfa(alphabet, states, init[0], final, nxt)
    return Nfa(alphabet, states, init, final, trans, eps)


def dumps(a: Automaton) -> str:
    kind = "dfa" if isinstance(a, Dfa) else "nfa"
    lines = [f"kind {kind}", "alphabet " + " ".join(a.alphabet)]
    lines += [f"state {render(q)}" for q in a.states]
    if isinstance(a, Dfa):
        lines.append(f"init {render(a.init)}")
    else:
        lines += [f"init {render(q)}" for q in sorted(a.init)]
    lines += [f"final {render(q)}" for q in sorted(a.final)]
    order = {x: i for i, x in enumerate(a.alphabet)}
    for (q, x) in sorted(a.nxt, key=lambda k: (k[0], order.get(k[1], len(order)), k[1])):
        target = a.nxt[q, x]
        if isinstance(a, Dfa):
            lines.append(f"trans {render(q)} {x} {render(target)}")
        else:
            lines.append(f"trans {render(q)} {x} " + " ".join(render(t) for t in sorted(target)))
    if isinstance(a, Nfa):
        lines += [f"eps {render(p)} {render(q)}" for p, q in sorted(a.eps)]
    return "\n".join(lines) + "\n"


def load(path) -> Automaton:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def dump(a: Automaton, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(a))
