"""The relations R and R1, their transducers, and how they act on codes.

A pair ``(y1, y2)`` is in R when it splits as::

    y1 = U_k . u . t(1) . v_1 . A . g_1 . t(3) . v_2 . A . g_2 . t(5) ...
    y2 = V_k . u_1 . t(2) . z_1 . A . u_2 . t(4) . z_2 . A ...

with ``k >= 1``, ``U_k, V_k`` in ``({0,1}* A)^k``, ``|u| <= 1``,
``|v_i| = |u_i|``, ``|g_i| = |z_i| + 1`` and ``t`` having infinitely many 1s.
R1 keeps the shape but lets ``u`` be any word over {0,1}, forces
``u_i, v_i`` into ``0*``, allows ``|g_i| = |z_i|`` as well, requires that
equality for infinitely many ``i`` and puts no condition on ``t``.

After ``U_k``/``V_k`` both relations are read round by round: round ``i``
takes the rest of a tape-1 block (``v_i``) and a whole tape-2 block
(``u_i t(2i) z_i``), then the head ``g_i t(2i+1)`` of the next tape-1 block.
Block lengths alone fix every split except the R1 choice of ``|g_i|``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .buchi import accepts_lasso, automaton_A
from .coding import LAYOUT, SIGMA, BlockView, build_complement_transducer, encode_block
from .grid import GridSpec, column, entry
from .transducer import BuchiTransducer, RunPrefix, Transition, union
from .words import CODE, SEPARATOR, LassoWord, drop, lcm

A = SEPARATOR


class DeadColumnError(ValueError):
    """The requested column has only finitely many 1s."""


# -- the transducer for R, transcribed state by state --------------------------

T_STATES = ("q0", "q1", "q2", "q3", "q1^0", "q1^1", "q2^0", "q2^1")
T_FINALS = ("q1^1", "q2^1")


def _t_table() -> list[tuple[str, str, str, str]]:
    ts: list[tuple[str, str, str, str]] = []
    for a in SIGMA:
        ts += [("q0", "", a, "q0"), ("q0", a, "", "q0")]
    ts.append(("q0", A, A, "q0"))
    ts.append(("q0", A, A, "q1"))
    ts += [("q1", u, "", "q2") for u in ("0", "1", "00", "01", "10", "11")]
    ts += [("q2", a, b, "q2") for a in SIGMA for b in SIGMA]
    ts += [("q2", A, "0", "q1^0"), ("q2", A, "1", "q1^1")]
    ts += [(q, a, "", "q3") for q in ("q1^0", "q1^1") for a in SIGMA]
    ts += [("q3", a, b, "q3") for a in SIGMA for b in SIGMA]
    ts += [("q3", "0", A, "q2^0"), ("q3", "1", A, "q2^1")]
    ts += [(q, "", "", "q2") for q in ("q2^0", "q2^1")]
    return ts


T_TRANSITIONS = tuple(Transition(*t) for t in _t_table())


def build_T() -> BuchiTransducer:
    return BuchiTransducer(states=T_STATES, input_alphabet=CODE, output_alphabet=CODE,
                           transitions=T_TRANSITIONS, initial="q0", finals=frozenset(T_FINALS))


def build_T1() -> BuchiTransducer:
    """Transducer for R1.

    ``q0`` reads ``U_k``/``V_k``, ``q1`` reads ``u t(1)``, ``q2`` pairs
    ``v_i`` with ``u_i`` (zeros only) and ends on ``(A, t(2i))`` in ``q1t``.
    From there ``q3`` handles ``|g_i| = |z_i| + 1`` (one unpaired letter
    first) and ``q3e`` handles ``|g_i| = |z_i|``; only the latter passes the
    final state ``q2e`` on its way back to ``q2``.
    """
    ts: list[tuple[str, str, str, str]] = []
    for a in SIGMA:
        ts += [("q0", "", a, "q0"), ("q0", a, "", "q0")]
    ts += [("q0", A, A, "q0"), ("q0", A, A, "q1")]
    ts += [("q1", a, "", "q1") for a in SIGMA] + [("q1", a, "", "q2") for a in SIGMA]
    ts.append(("q2", "0", "0", "q2"))
    ts += [("q2", A, b, "q1t") for b in SIGMA]
    ts += [("q1t", a, "", "q3") for a in SIGMA] + [("q1t", "", "", "q3e")]
    for q, exit_to in (("q3", "q2"), ("q3e", "q2e")):
        ts += [(q, a, b, q) for a in SIGMA for b in SIGMA]
        ts += [(q, a, A, exit_to) for a in SIGMA]
    ts.append(("q2e", "", "", "q2"))
    return BuchiTransducer(states=("q0", "q1", "q2", "q1t", "q3", "q3e", "q2e"),
                           input_alphabet=CODE, output_alphabet=CODE,
                           transitions=tuple(Transition(*t) for t in ts),
                           initial="q0", finals=frozenset({"q2e"}))


def build_S_relation() -> BuchiTransducer:
    return union(build_T(), build_complement_transducer(), tags=["R", "co"])


def build_P_relation() -> BuchiTransducer:
    return union(build_T1(), build_complement_transducer(), tags=["R1", "co"])


# -- pattern oracles on lasso pairs ----------------------------------------------

@dataclass(frozen=True)
class Round:
    """One round of the parse; block indices are folded lasso block indices."""

    block1: int
    block2: int
    offset: int  # where v_i starts inside tape-1 block ``block1``
    v_len: int  # == |u_i|
    z_len: int
    g_len: int
    t_even: str
    t_odd: str

    @property
    def equal(self) -> bool:
        return self.g_len == self.z_len


@dataclass(frozen=True)
class RPatternWitness:
    k: int
    u: str
    t1: str
    stem: tuple[Round, ...]
    cycle: tuple[Round, ...]

    @property
    def u_mode(self) -> str:
        return "empty" if not self.u else "single-letter"

    def t_word(self) -> LassoWord:
        head = self.t1 + "".join(r.t_even + r.t_odd for r in self.stem)
        return LassoWord(head, "".join(r.t_even + r.t_odd for r in self.cycle))

    def rounds(self) -> tuple[Round, ...]:
        return self.stem + self.cycle


@dataclass(frozen=True)
class R1PatternWitness(RPatternWitness):
    @property
    def u_mode(self) -> str:
        return "word"

    @property
    def equality_flags(self) -> tuple[bool, ...]:
        return tuple(r.equal for r in self.rounds())


State = tuple[int, int, int]


class _Parser:
    def __init__(self, y1: LassoWord, y2: LassoWord, relaxed: bool):
        y1.check(CODE)
        y2.check(CODE)
        self.b1, self.b2 = BlockView(y1), BlockView(y2)
        self.relaxed = relaxed  # R1 rules instead of R rules
        self.ok = self.b1.infinite and self.b2.infinite

    def starts(self) -> Iterator[tuple[int, str, str, State]]:
        b1, b2 = self.b1, self.b2
        top = max(b1.n_stem, b2.n_stem) + 1 + lcm([b1.n_cycle, b2.n_cycle])
        seen = set()
        for k in range(1, top + 1):
            key = (b1.normalize(k), b2.normalize(k))
            if key in seen:
                continue
            seen.add(key)
            head = b1.block(k)
            lengths = range(len(head)) if self.relaxed else range(min(2, len(head)))
            for ulen in lengths:
                yield k, head[:ulen], head[ulen], (key[0], key[1], ulen + 1)

    def rounds(self, state: State) -> list[tuple[Round, State]]:
        i1, i2, s = state
        blk1, blk2 = self.b1.block(i1), self.b2.block(i2)
        a = len(blk1) - s
        if a < 0 or len(blk2) < a + 1:
            return []
        if self.relaxed and ("1" in blk1[s:] or "1" in blk2[:a]):
            return []
        c = len(blk2) - a - 1
        nxt1 = self.b1.block(i1 + 1)
        out = []
        for g in ((c + 1, c) if self.relaxed else (c + 1,)):
            if len(nxt1) >= g + 1:
                r = Round(i1, i2, s, a, c, g, blk2[a], nxt1[g])
                out.append((r, (self.b1.normalize(i1 + 1), self.b2.normalize(i2 + 1), g + 1)))
        return out


def r_pattern_witness(y1: LassoWord, y2: LassoWord) -> RPatternWitness | None:
    """A decomposition of ``(y1, y2)`` in the shape of R, if one exists."""
    p = _Parser(y1, y2, relaxed=False)
    if not p.ok:
        return None
    aut = automaton_A()
    for k, u, t1, start in p.starts():
        path: list[Round] = []
        at: dict[State, int] = {}
        state = start
        while state not in at:
            at[state] = len(path)
            step = p.rounds(state)
            if not step:
                break
            r, state = step[0]
            path.append(r)
        else:
            w = RPatternWitness(k, u, t1, tuple(path[: at[state]]), tuple(path[at[state]:]))
            if accepts_lasso(aut, w.t_word()):
                return w
    return None


def r_pattern_accepts(y1: LassoWord, y2: LassoWord) -> bool:
    return r_pattern_witness(y1, y2) is not None


def r1_pattern_witness(y1: LassoWord, y2: LassoWord) -> R1PatternWitness | None:
    """A decomposition in the shape of R1 whose repeating part holds an
    ``|g_i| = |z_i|`` round, if one exists."""
    p = _Parser(y1, y2, relaxed=True)
    if not p.ok:
        return None
    # breadth-first over parse states from a virtual root
    succ: dict[State, list[tuple[Round, State]]] = {}
    back: dict[State, tuple[State | None, Round | None]] = {}
    origin: dict[State, tuple[int, str, str]] = {}
    queue: deque[State] = deque()
    for k, u, t1, start in p.starts():
        if start not in back:
            back[start] = (None, None)
            origin[start] = (k, u, t1)
            queue.append(start)
    while queue:
        st = queue.popleft()
        succ[st] = p.rounds(st)
        for r, nxt in succ[st]:
            if nxt not in back:
                back[nxt] = (st, r)
                queue.append(nxt)

    def path_between(src: State, dst: State) -> list[Round] | None:
        prev: dict[State, tuple[State, Round]] = {}
        q = deque([src])
        seen = {src}
        while q:
            st = q.popleft()
            if st == dst:
                out = []
                while st != src:
                    st, r = prev[st][0], prev[st][1]
                    out.append(r)
                return out[::-1]
            for r, nxt in succ[st]:
                if nxt not in seen:
                    seen.add(nxt)
                    prev[nxt] = (st, r)
                    q.append(nxt)
        return None

    for st in back:
        for r, nxt in succ[st]:
            if not r.equal:
                continue
            loop = path_between(nxt, st)
            if loop is None:
                continue
            stem = []
            cur = st
            while back[cur][0] is not None:
                cur, rr = back[cur]
                stem.append(rr)
            k, u, t1 = origin[cur]
            return R1PatternWitness(k, u, t1, tuple(stem[::-1]), (r, *loop))
    return None


def r1_pattern_accepts(y1: LassoWord, y2: LassoWord) -> bool:
    return r1_pattern_witness(y1, y2) is not None


# -- the relations on codes of grids ---------------------------------------------

def _trace_on_code(k: int, ulen: int, rounds: int) -> list[tuple[int, int]] | None:
    """Grid coordinates of t(1), t(2), ... when R is parsed on a code with
    ``U_k``/``V_k`` and ``|u| = ulen``; ``None`` if the parse breaks."""
    L = LAYOUT.length
    s = ulen + 1
    if L(1, k) < s:
        return None
    coords = [LAYOUT.coordinate(1, k, ulen)]
    for i in range(rounds):
        b = k + i
        a = L(1, b) - s
        if a < 0 or L(2, b) < a + 1:
            return None
        coords.append(LAYOUT.coordinate(2, b, a))
        g = L(2, b) - a - 1 + 1
        if L(1, b + 1) < g + 1:
            return None
        coords.append(LAYOUT.coordinate(1, b + 1, g))
        s = g + 1
    return coords


def tracked_column(k: int, ulen: int, rounds: int = 8) -> tuple[int, int]:
    """``(column, first row)`` read by t when R is parsed on any code."""
    coords = _trace_on_code(k, ulen, rounds)
    if coords is None:
        raise AssertionError(f"R parse with k={k}, |u|={ulen} breaks on a code")
    col, row = coords[0]
    for i, (m, n) in enumerate(coords):
        if (m, n) != (col, row + i):
            raise AssertionError(f"t({i + 1}) at {(m, n)} leaves column {col}")
    return col, row


def r_holds_for_code(g: GridSpec) -> bool:
    """Whether h(g) is in R.

    Every start ``(k, |u|)`` makes t read one column from a fixed row on;
    h(g) is in R iff one of those column tails has infinitely many 1s.
    """
    aut = automaton_A()
    rounds = 2 * (g.col_stem + g.col_period) + 4
    for k in range(1, g.row_classes // 2 + 2):
        for ulen in (0, 1):
            col, row = tracked_column(k, ulen, rounds)
            if accepts_lasso(aut, drop(column(g, col), row - 1)):
                return True
    return False


def _has_one_from(w: LassoWord, row: int) -> bool:
    return "1" in drop(w, max(row, 1) - 1).stem or "1" in w.cycle


def r1_holds_for_code(g: GridSpec) -> bool:
    """Whether h(g) is in R1.

    On a code the R1 parse tracks a column that moves one step right on
    every ``|g_i| = |z_i|`` round, and everything left of it must be 0.
    Starting at column 1 and moving as soon as the columns left behind
    hold no further 1s is optimal; it moves forever iff no column has
    infinitely many 1s.
    """
    aut = automaton_A()
    infinite = [accepts_lasso(aut, column(g, m)) for m in range(1, g.row_classes + 1)]

    def col_has_infinitely_many(m: int) -> bool:
        return infinite[(m - 1) if m <= g.row_stem else g.row_stem + (m - 1 - g.row_stem) % g.row_period]

    L = LAYOUT.length
    k, s, col = 1, 2, 1
    cap = 4 * (g.row_classes + g.col_stem + g.col_period) + 8
    for i in range(cap):
        b = k + i
        a = L(1, b) - s
        zeros = LAYOUT.coordinates(1, b)[s:] + LAYOUT.coordinates(2, b)[:a]
        if any(entry(g, m, n) != "0" for m, n in zeros):
            raise AssertionError("greedy R1 parse broke a zero constraint")
        if LAYOUT.coordinate(2, b, a)[0] != col:
            raise AssertionError("R1 parse lost its column")
        if col > g.row_classes:
            return True
        if any(col_has_infinitely_many(m) for m in range(1, col + 1)):
            return False
        antidiagonal = 2 * (b + 1) + 1
        safe = not any(_has_one_from(column(g, m), antidiagonal - m) for m in range(1, col + 1))
        c = L(2, b) - a - 1
        glen = c if safe else c + 1
        col += safe
        s = glen + 1
    raise RuntimeError("R1 parse on the code did not settle")


def witness_run(g: GridSpec, col: int, nblocks: int) -> RunPrefix:
    """Run of the R transducer over the code of ``g`` that tracks column ``col``.

    The run reads exactly the first ``nblocks`` tape-1 blocks; on tape 2 it
    stops inside block ``nblocks - 1`` right after the tracked letter, since
    the transducer never sits on block ends of both tapes at once.
    """
    if col < 1:
        raise ValueError("columns are 1-based")
    if not accepts_lasso(automaton_A(), column(g, col)):
        raise DeadColumnError(f"column {col} has finitely many 1s")
    T = build_T()
    k, ulen = (col // 2, 0) if col % 2 == 0 else ((col + 1) // 2, 1)
    blk1 = lambda j: encode_block(g, 1, j)  # noqa: E731
    blk2 = lambda j: encode_block(g, 2, j)  # noqa: E731
    ts: list[tuple[str, str, str, str]] = []
    for j in range(min(k, nblocks)):
        ts += [("q0", a, "", "q0") for a in blk1(j)]
        ts += [("q0", "", b, "q0") for b in blk2(j)]
        ts.append(("q0", A, A, "q1" if j == k - 1 else "q0"))
    if nblocks > k:
        head = blk1(k)
        ts.append(("q1", head[: ulen + 1], "", "q2"))
        s = ulen + 1
        for b in range(k, nblocks):
            w1, w2 = blk1(b), blk2(b)
            a = len(w1) - s
            ts += [("q2", w1[s + o], w2[o], "q2") for o in range(a)]
            te = w2[a]
            ts.append(("q2", A, te, f"q1^{te}"))
            if b == nblocks - 1:
                break
            c = len(w2) - a - 1
            nxt = blk1(b + 1)
            ts.append((f"q1^{te}", nxt[0], "", "q3"))
            ts += [("q3", nxt[1 + o], w2[a + 1 + o], "q3") for o in range(c)]
            to = nxt[c + 1]
            ts.append(("q3", to, A, f"q2^{to}"))
            ts.append((f"q2^{to}", "", "", "q2"))
            s = c + 2
    return RunPrefix.from_transitions(T, ts)
