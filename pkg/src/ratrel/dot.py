"""Graphviz emitter shared by automata and transducers."""
from __future__ import annotations

from typing import Iterable, Sequence


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render(
    name: str,
    states: Sequence[str],
    initial: str,
    finals: Iterable[str],
    edges: Iterable[tuple[str, str, str]],
) -> str:
    """One node per state, finals double-circled, initial drawn bold.
    Output order is the order of ``states`` and ``edges``."""
    finals = set(finals)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for s in states:
        attrs = ["shape=doublecircle" if s in finals else "shape=circle"]
        if s == initial:
            attrs.append("style=bold")
        lines.append(f"  {_quote(s)} [{', '.join(attrs)}];")
    for src, dst, label in edges:
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
