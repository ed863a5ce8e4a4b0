"""Two-tape Buchi transducers with finite-word labels.

A transition ``(source, input, output, target)`` reads the finite word
``input`` on tape 1 and ``output`` on tape 2; either may be empty.  A pair of
omega-words is accepted when some infinite computation reads exactly those
words on the two tapes and passes through a final state infinitely often.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Sequence

from . import dot
from .graphs import explore, shortest_path, strongly_connected_components
from .words import Alphabet, AlphabetError, FiniteWord, LassoWord, canonicalize, prefix


class TransducerError(ValueError):
    pass


class Transition(NamedTuple):
    source: str
    input: FiniteWord
    output: FiniteWord
    target: str

    def label(self) -> str:
        return f"{self.input or 'ε'}/{self.output or 'ε'}"


@dataclass(frozen=True)
class BuchiTransducer:
    states: tuple[str, ...]
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    transitions: tuple[Transition, ...]
    initial: str
    finals: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions", tuple(Transition(*t) for t in self.transitions))
        object.__setattr__(self, "finals", frozenset(self.finals))
        known = set(self.states)
        if len(known) != len(self.states):
            raise TransducerError("duplicate states")
        if self.initial not in known:
            raise TransducerError(f"initial state {self.initial!r} is not a state")
        if not self.finals <= known:
            raise TransducerError(f"final states {sorted(self.finals - known)} are not states")
        out: dict[str, list[Transition]] = {s: [] for s in self.states}
        for t in self.transitions:
            if t.source not in known or t.target not in known:
                raise TransducerError(f"transition {tuple(t)} uses an unknown state")
            if not self.input_alphabet.covers(t.input) or not self.output_alphabet.covers(t.output):
                raise TransducerError(f"transition {tuple(t)} uses letters outside the alphabets")
            out[t.source].append(t)
        object.__setattr__(self, "_out", out)

    def outgoing(self, state: str) -> list[Transition]:
        return self._out[state]

    @property
    def max_label(self) -> int:
        return max((max(len(t.input), len(t.output)) for t in self.transitions), default=0)

    def to_json(self) -> dict[str, Any]:
        return {
            "states": list(self.states),
            "input_alphabet": list(self.input_alphabet),
            "output_alphabet": list(self.output_alphabet),
            "initial": self.initial,
            "finals": [s for s in self.states if s in self.finals],
            "transitions": [
                {"from": t.source, "input": t.input, "output": t.output, "to": t.target}
                for t in self.transitions
            ],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "BuchiTransducer":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(
                states=tuple(data["states"]),
                input_alphabet=Alphabet(tuple(data["input_alphabet"])),
                output_alphabet=Alphabet(tuple(data["output_alphabet"])),
                transitions=tuple(
                    Transition(t["from"], t["input"], t["output"], t["to"]) for t in data["transitions"]
                ),
                initial=data["initial"],
                finals=frozenset(data["finals"]),
            )
        except (KeyError, TypeError) as exc:
            raise TransducerError(f"malformed transducer JSON: {exc}") from exc


# -- acceptance ---------------------------------------------------------------

class Configuration(NamedTuple):
    state: str
    pos1: int
    pos2: int


class _Tape:
    """Read-only view of a canonical lasso with folded positions."""

    def __init__(self, w: LassoWord, lookahead: int):
        self.word = w
        self.stem = len(w.stem)
        self.period = len(w.cycle)
        self.text = prefix(w, self.stem + self.period + lookahead)

    def matches(self, pos: int, label: str) -> bool:
        return self.text.startswith(label, pos)

    def advance(self, pos: int, n: int) -> int:
        pos += n
        if pos >= self.stem:
            pos = self.stem + (pos - self.stem) % self.period
        return pos


@dataclass
class ConfigurationGraph:
    transducer: BuchiTransducer
    u: LassoWord
    v: LassoWord
    edges: dict[Configuration, list[tuple[Transition, Configuration]]]
    components: list[list[Configuration]] = field(default_factory=list)

    @property
    def initial(self) -> Configuration:
        return Configuration(self.transducer.initial, 0, 0)

    def accepting_components(self) -> list[list[Configuration]]:
        return [c for c in self.components if self._is_accepting(c)]

    def _is_accepting(self, comp: list[Configuration]) -> bool:
        finals = self.transducer.finals
        if not any(c.state in finals for c in comp):
            return False
        members = set(comp)
        reads_input = reads_output = False
        for c in comp:
            for t, nxt in self.edges[c]:
                if nxt in members:
                    reads_input = reads_input or bool(t.input)
                    reads_output = reads_output or bool(t.output)
            if reads_input and reads_output:
                return True
        return False


def _check_pair(T: BuchiTransducer, u: LassoWord, v: LassoWord) -> tuple[LassoWord, LassoWord]:
    u.check(T.input_alphabet, "input lasso")
    v.check(T.output_alphabet, "output lasso")
    return canonicalize(u), canonicalize(v)


def configuration_graph(T: BuchiTransducer, u: LassoWord, v: LassoWord) -> ConfigurationGraph:
    """Reachable configurations of ``T`` reading ``u`` and ``v``."""
    u, v = _check_pair(T, u, v)
    tape1 = _Tape(u, T.max_label)
    tape2 = _Tape(v, T.max_label)

    def step(c: Configuration):
        for t in T.outgoing(c.state):
            if tape1.matches(c.pos1, t.input) and tape2.matches(c.pos2, t.output):
                yield t, Configuration(t.target, tape1.advance(c.pos1, len(t.input)),
                                       tape2.advance(c.pos2, len(t.output)))

    edges = explore(Configuration(T.initial, 0, 0), step)
    graph = ConfigurationGraph(T, u, v, edges)
    graph.components = strongly_connected_components(edges)
    return graph


def accepts_pair(T: BuchiTransducer, u: LassoWord, v: LassoWord) -> bool:
    """Decide ``(u, v)`` in the relation of ``T``.

    Accepts iff a reachable strongly connected component of the
    configuration graph holds a final state, an edge that consumes input
    and an edge that consumes output; the last two make both tapes
    infinite, so lambda/lambda loops alone never accept.
    """
    if not T.finals:
        _check_pair(T, u, v)
        return False
    return bool(configuration_graph(T, u, v).accepting_components())


# -- runs -----------------------------------------------------------------------

@dataclass(frozen=True)
class RunPrefix:
    transitions: tuple[Transition, ...]
    consumed_input: FiniteWord
    consumed_output: FiniteWord
    final_visits: int

    @classmethod
    def from_transitions(cls, T: BuchiTransducer, transitions: Iterable[Transition]) -> "RunPrefix":
        ts = tuple(Transition(*t) for t in transitions)
        return cls(
            transitions=ts,
            consumed_input="".join(t.input for t in ts),
            consumed_output="".join(t.output for t in ts),
            final_visits=sum(t.target in T.finals for t in ts),
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "transitions": [
                {"from": t.source, "input": t.input, "output": t.output, "to": t.target}
                for t in self.transitions
            ],
            "consumed_input": self.consumed_input,
            "consumed_output": self.consumed_output,
            "final_visits": self.final_visits,
        }


@dataclass(frozen=True)
class AcceptingLasso:
    """An accepting computation ``stem . cycle^omega`` over the configuration graph."""

    stem: tuple[Transition, ...]
    cycle: tuple[Transition, ...]
    component: tuple[Configuration, ...]

    def prefix(self, T: BuchiTransducer, n: int) -> RunPrefix:
        run = list(self.stem[:n])
        while len(run) < n:
            run.extend(self.cycle[: n - len(run)])
        return RunPrefix.from_transitions(T, run)

    @property
    def threshold(self) -> int:
        """Any prefix at least this long visits a final state."""
        return len(self.stem) + len(self.cycle)


def find_accepting_lasso(T: BuchiTransducer, u: LassoWord, v: LassoWord) -> AcceptingLasso | None:
    graph = configuration_graph(T, u, v)
    comps = graph.accepting_components()
    if not comps:
        return None
    comp = comps[-1]
    members = set(comp)
    final = next(c for c in comp if c.state in T.finals)
    internal = [(c, t, nxt) for c in comp for t, nxt in graph.edges[c] if nxt in members]
    e_in = next(e for e in internal if e[1].input)
    e_out = next(e for e in internal if e[1].output)

    def hop(a: Configuration, b: Configuration, allowed=None) -> list[Transition]:
        path = shortest_path(graph.edges, a, b, allowed)
        assert path is not None
        return [t for t, _ in path]

    stem = hop(graph.initial, final)
    cycle = (
        hop(final, e_in[0], members) + [e_in[1]]
        + hop(e_in[2], e_out[0], members) + [e_out[1]]
        + hop(e_out[2], final, members)
    )
    return AcceptingLasso(tuple(stem), tuple(cycle), tuple(comp))


def run_prefix(T: BuchiTransducer, u: LassoWord, v: LassoWord, n: int) -> RunPrefix | None:
    """First ``n`` transitions of an accepting computation on ``(u, v)``, if any."""
    lasso = find_accepting_lasso(T, u, v)
    return None if lasso is None else lasso.prefix(T, n)


@dataclass(frozen=True)
class RunReport:
    valid: bool
    final_visits: int
    first_bad_index: int | None = None
    reason: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"valid": self.valid, "final_visits": self.final_visits,
                "first_bad_index": self.first_bad_index, "reason": self.reason}


def validate_run(T: BuchiTransducer, r: RunPrefix, u_prefix: FiniteWord, v_prefix: FiniteWord) -> RunReport:
    """Check a finite run against ``T`` and the expected tape prefixes.

    Violations are reported with the index of the first offending
    transition; index ``len(r.transitions)`` blames the end of the run.
    """
    visits = 0
    expected_state = T.initial
    known = set(T.transitions)
    read_in = read_out = ""
    n = len(r.transitions)

    def bad(i: int, why: str) -> RunReport:
        return RunReport(False, visits, i, why)

    for i, t in enumerate(r.transitions):
        t = Transition(*t)
        if t.source != expected_state:
            what = "does not start at the initial state" if i == 0 else "breaks the state chain"
            return bad(i, f"transition {i} {what}: {t.source!r} != {expected_state!r}")
        if t not in known:
            return bad(i, f"transition {i} {tuple(t)} is not a transition of the transducer")
        read_in += t.input
        read_out += t.output
        if not u_prefix.startswith(read_in):
            return bad(i, f"transition {i} reads input beyond or against the expected prefix")
        if not v_prefix.startswith(read_out):
            return bad(i, f"transition {i} reads output beyond or against the expected prefix")
        visits += t.target in T.finals
        expected_state = t.target
    if read_in != u_prefix or read_out != v_prefix:
        return bad(n, "run stops before consuming the expected prefixes")
    if r.consumed_input != read_in or r.consumed_output != read_out:
        return bad(n, "recorded consumed words differ from the transition labels")
    if r.final_visits != visits:
        return bad(n, f"recorded final_visits {r.final_visits} != {visits}")
    return RunReport(True, visits)


# -- constructions ----------------------------------------------------------------

def union(*parts: BuchiTransducer, tags: Sequence[str] | None = None, name: str = "init") -> BuchiTransducer:
    """Disjoint union with a fresh initial state and lambda/lambda branches
    into each part; state ``s`` of part ``i`` becomes ``f"{tags[i]}.{s}"``."""
    if len(parts) < 2:
        raise TransducerError("union needs at least two transducers")
    tags = list(tags) if tags is not None else [str(i + 1) for i in range(len(parts))]
    if len(tags) != len(parts) or len(set(tags)) != len(tags):
        raise TransducerError("one distinct tag per part is required")
    first = parts[0]
    for p in parts[1:]:
        if p.input_alphabet != first.input_alphabet or p.output_alphabet != first.output_alphabet:
            raise AlphabetError("union of transducers over different alphabets")
    states: list[str] = []
    transitions: list[Transition] = []
    finals: set[str] = set()
    for tag, p in zip(tags, parts):
        rename = {s: f"{tag}.{s}" for s in p.states}
        states.extend(rename[s] for s in p.states)
        finals.update(rename[s] for s in p.finals)
        transitions.append(Transition(name, "", "", rename[p.initial]))
        transitions.extend(Transition(rename[t.source], t.input, t.output, rename[t.target])
                           for t in p.transitions)
    if name in states:
        raise TransducerError(f"fresh initial state {name!r} clashes with a renamed state")
    return BuchiTransducer(
        states=(name, *states),
        input_alphabet=first.input_alphabet,
        output_alphabet=first.output_alphabet,
        transitions=tuple(transitions),
        initial=name,
        finals=frozenset(finals),
    )


def to_dot(T: BuchiTransducer, name: str = "transducer") -> str:
    return dot.render(name, T.states, T.initial, T.finals,
                      ((t.source, t.target, t.label()) for t in T.transitions))
