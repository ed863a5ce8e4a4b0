"""Nondeterministic one-tape Buchi automata and lasso membership."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from . import dot
from .graphs import explore, strongly_connected_components
from .words import BINARY, Alphabet, LassoWord, canonicalize


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class BuchiAutomaton:
    states: tuple[str, ...]
    alphabet: Alphabet
    transitions: tuple[tuple[str, str, str], ...]
    initial: str
    finals: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        object.__setattr__(self, "finals", frozenset(self.finals))
        known = set(self.states)
        if len(known) != len(self.states):
            raise AutomatonError("duplicate states")
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} is not a state")
        if not self.finals <= known:
            raise AutomatonError(f"final states {sorted(self.finals - known)} are not states")
        for src, a, dst in self.transitions:
            if src not in known or dst not in known:
                raise AutomatonError(f"transition {(src, a, dst)} uses an unknown state")
            if a not in self.alphabet:
                raise AutomatonError(f"transition {(src, a, dst)} uses letter outside {self.alphabet}")
        out: dict[str, list[tuple[str, str]]] = {s: [] for s in self.states}
        for src, a, dst in self.transitions:
            out[src].append((a, dst))
        object.__setattr__(self, "_out", out)

    def successors(self, state: str, letter: str) -> list[str]:
        return [dst for a, dst in self._out[state] if a == letter]

    def to_json(self) -> dict[str, Any]:
        return {
            "states": list(self.states),
            "alphabet": list(self.alphabet),
            "initial": self.initial,
            "finals": sorted(self.finals),
            "transitions": [list(t) for t in self.transitions],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "BuchiAutomaton":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(
                states=tuple(data["states"]),
                alphabet=Alphabet(tuple(data["alphabet"])),
                transitions=tuple(tuple(t) for t in data["transitions"]),
                initial=data["initial"],
                finals=frozenset(data["finals"]),
            )
        except (KeyError, TypeError) as exc:
            raise AutomatonError(f"malformed automaton JSON: {exc}") from exc

    def to_dot(self, name: str = "buchi") -> str:
        return dot.render(name, self.states, self.initial, self.finals,
                          ((s, d, a) for s, a, d in self.transitions))


def accepts_lasso(aut: BuchiAutomaton, w: LassoWord) -> bool:
    """Some run over ``w`` visits a final state infinitely often.

    Nodes of the product graph are (state, position) with positions
    folded into ``[0, |stem| + |cycle|)``; acceptance means a reachable
    cycle passes through a final node.
    """
    w.check(aut.alphabet)
    w = canonicalize(w)
    text = w.stem + w.cycle
    stem, period = len(w.stem), len(w.cycle)

    def step(node):
        state, pos = node
        nxt = pos + 1
        if nxt >= stem + period:
            nxt = stem
        return [(None, (dst, nxt)) for dst in aut.successors(state, text[pos])]

    graph = explore((aut.initial, 0), step)
    for comp in strongly_connected_components(graph):
        members = set(comp)
        if not any(state in aut.finals for state, _ in comp):
            continue
        if len(comp) > 1 or any(nxt in members for _, nxt in graph[comp[0]]):
            return True
    return False


def automaton_A() -> BuchiAutomaton:
    """Words over {0,1} with infinitely many 1s, i.e. (0*1)^omega."""
    return BuchiAutomaton(
        states=("wait", "seen1"),
        alphabet=BINARY,
        transitions=(
            ("wait", "0", "wait"),
            ("wait", "1", "seen1"),
            ("seen1", "0", "wait"),
            ("seen1", "1", "seen1"),
        ),
        initial="wait",
        finals=frozenset({"seen1"}),
    )


def automaton_A_complement() -> BuchiAutomaton:
    """Words over {0,1} with finitely many 1s: guess the last 1, then read 0s."""
    return BuchiAutomaton(
        states=("any", "zeros"),
        alphabet=BINARY,
        transitions=(
            ("any", "0", "any"),
            ("any", "1", "any"),
            ("any", "0", "zeros"),
            ("zeros", "0", "zeros"),
        ),
        initial="any",
        finals=frozenset({"zeros"}),
    )
