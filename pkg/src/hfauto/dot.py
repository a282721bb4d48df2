"""Graphviz rendering of automata."""

from __future__ import annotations

from collections import defaultdict
from typing import Union

from .automata import Dfa, Nfa
from .hfset import render

Automaton = Union[Dfa, Nfa]


def _quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', '\\"'))


def to_dot(a: Automaton, name: str = "automaton") -> str:
    """Final states are double circles, each initial state gets an entry
    arrow, and ε-moves are dashed."""
    inits = [a.init] if isinstance(a, Dfa) else sorted(a.init)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for i, q in enumerate(inits):
        lines.append(f"  __start{i} [shape=point];")
    for q in a.states:
        shape = "doublecircle" if q in a.final else "circle"
        lines.append(f"  {_quote(render(q))} [shape={shape}];")
    for i, q in enumerate(inits):
        lines.append(f"  __start{i} -> {_quote(render(q))};")

    labels: dict[tuple, list[str]] = defaultdict(list)
    for x in a.alphabet:
        for q in a.states:
            if isinstance(a, Dfa):
                targets = [a.nxt[q, x]] if (q, x) in a.nxt else []
            else:
                targets = sorted(a.nxt.get((q, x), ()))
            for t in targets:
                labels[q, t].append(x)
    for (q, t), xs in sorted(labels.items()):
        lines.append(f"  {_quote(render(q))} -> {_quote(render(t))} [label={_quote(','.join(xs))}];")
    if isinstance(a, Nfa):
        for p, q in sorted(a.eps):
            lines.append(f"  {_quote(render(p))} -> {_quote(render(q))} [label=\"ε\", style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
