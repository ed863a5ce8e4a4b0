"""The code h of omega^2-words as pairs of omega-words over {0,1,A}.

Tape 1 is ``x(1,1) A T_3 A T_5 A ...`` and tape 2 is ``A T_4 A T_6 A ...``
where ``T_d`` lists the antidiagonal ``m + n = d``: downward in ``m`` on tape
1, upward on tape 2.  Block ``j`` of a tape is the letter run before its
``(j+1)``-th ``A``; in a code tape-1 blocks have lengths 1, 2, 4, 6, ... and
tape-2 blocks have lengths 0, 3, 5, 7, ...

The complement of the set of codes splits into four relations:

* C1: some tape has finitely many ``A``;
* C2: tape 1 does not start with ``S A S S A`` (``S`` in {0,1}), or tape 2
  does not start with ``A``;
* C3: for some ``n >= 1``, block ``n`` of tape 2 is not one longer than
  block ``n`` of tape 1;
* C4: for some ``n >= 1``, block ``n + 1`` of tape 1 is not one longer than
  block ``n`` of tape 2.

Layout violations past the first two tape-1 blocks are assigned to C3/C4.
"""
from __future__ import annotations

from typing import Callable

from .grid import GridSpec, entry
from .transducer import BuchiTransducer, Transition, union
from .words import CODE, SEPARATOR, LassoWord, canonicalize, lcm, letter_at, prefix

SIGMA = ("0", "1")
LETTERS = CODE.letters


class BlockLayout:
    """Where each letter of a code comes from."""

    @staticmethod
    def length(tape: int, j: int) -> int:
        if tape == 1:
            return 1 if j == 0 else 2 * j
        if tape == 2:
            return 0 if j == 0 else 2 * j + 1
        raise ValueError("tape must be 1 or 2")

    @staticmethod
    def coordinate(tape: int, j: int, offset: int) -> tuple[int, int]:
        """Grid coordinate ``(m, n)`` of letter ``offset`` (0-based) of block ``j``."""
        if not 0 <= offset < BlockLayout.length(tape, j):
            raise IndexError(f"offset {offset} outside block {j} of tape {tape}")
        if tape == 1:
            if j == 0:
                return (1, 1)
            return (2 * j - offset, 1 + offset)
        return (offset + 1, 2 * j + 1 - offset)

    @classmethod
    def coordinates(cls, tape: int, j: int) -> list[tuple[int, int]]:
        return [cls.coordinate(tape, j, o) for o in range(cls.length(tape, j))]

    @classmethod
    def tape_lengths(cls, tape: int, nblocks: int) -> list[int]:
        return [cls.length(tape, j) for j in range(nblocks)]


LAYOUT = BlockLayout()


def encode_block(g: GridSpec, tape: int, j: int) -> str:
    return "".join(entry(g, m, n) for m, n in LAYOUT.coordinates(tape, j))


def encode_prefix(g: GridSpec, nblocks: int) -> tuple[str, str]:
    """The first ``nblocks`` blocks of each tape of h(g), each closed by ``A``.
    ``nblocks == 0`` gives two empty words."""
    if nblocks < 0:
        raise ValueError("nblocks must be non-negative")
    tapes = []
    for tape in (1, 2):
        tapes.append("".join(encode_block(g, tape, j) + SEPARATOR for j in range(nblocks)))
    return tapes[0], tapes[1]


def _tape_prefix_ok(word: str, tape: int) -> bool:
    if not CODE.covers(word):
        return False
    blocks = word.split(SEPARATOR)
    *closed, last = blocks
    for j, b in enumerate(closed):
        if len(b) != LAYOUT.length(tape, j):
            return False
    return len(last) <= LAYOUT.length(tape, len(closed))


def is_valid_code_prefix(p1: str, p2: str) -> bool:
    """``(p1, p2)`` extends to the code of some omega^2-word."""
    return _tape_prefix_ok(p1, 1) and _tape_prefix_ok(p2, 2)


# -- blocks of a lasso word -------------------------------------------------------

class BlockView:
    """The ``A``-separated blocks of a lasso word over {0,1,A}.

    Block ``j`` sits between the ``j``-th and ``(j+1)``-th ``A`` (the 0-th
    ``A`` is the start of the word).  If the cycle holds an ``A`` every block
    is finite and the block sequence is ultimately periodic; otherwise only
    the blocks before the last ``A`` are closed.
    """

    def __init__(self, w: LassoWord):
        w = canonicalize(w)
        self.word = w
        self.stem_marks = [i + 1 for i, a in enumerate(w.stem) if a == SEPARATOR]
        self.cycle_marks = [i + 1 for i, a in enumerate(w.cycle) if a == SEPARATOR]
        self.infinite = bool(self.cycle_marks)
        self.n_stem = len(self.stem_marks)
        self.n_cycle = len(self.cycle_marks)
        self.text = w.stem + w.cycle * 2

    @property
    def closed_count(self) -> float:
        """Number of closed blocks (infinite if the cycle holds an ``A``)."""
        return float("inf") if self.infinite else self.n_stem

    @property
    def distinct(self) -> int:
        """Closed blocks ``0 .. distinct-1`` represent all block classes."""
        return self.n_stem + 1 + self.n_cycle if self.infinite else self.n_stem

    def closed(self, j: int) -> bool:
        return j < self.closed_count

    def normalize(self, j: int) -> int:
        if not self.infinite or j <= self.n_stem:
            return j
        return self.n_stem + 1 + (j - self.n_stem - 1) % self.n_cycle

    def mark(self, j: int) -> int:
        """1-based position of the ``j``-th ``A`` (0 for ``j == 0``)."""
        if j == 0:
            return 0
        if j <= self.n_stem:
            return self.stem_marks[j - 1]
        k = j - self.n_stem - 1
        laps, r = divmod(k, self.n_cycle)
        return len(self.word.stem) + laps * len(self.word.cycle) + self.cycle_marks[r]

    def block(self, j: int) -> str:
        if not self.closed(j):
            raise IndexError(f"block {j} is not closed")
        j = self.normalize(j)
        start, end = self.mark(j), self.mark(j + 1)
        return self.text[start: end - 1]

    def length(self, j: int) -> int:
        return len(self.block(j))


def in_C1(u: LassoWord, v: LassoWord) -> bool:
    return not BlockView(u).infinite or not BlockView(v).infinite


def in_C2(u: LassoWord, v: LassoWord) -> bool:
    head = prefix(u, 5)
    good = (head[0] in SIGMA and head[1] == SEPARATOR and head[2] in SIGMA
            and head[3] in SIGMA and head[4] == SEPARATOR)
    return not good or letter_at(v, 1) != SEPARATOR


def _search_bound(a: BlockView, b: BlockView) -> int:
    periods = [x.n_cycle for x in (a, b) if x.infinite] or [1]
    return max(a.n_stem, b.n_stem) + 2 * lcm(periods) + 2


def in_C3(u: LassoWord, v: LassoWord) -> bool:
    bu, bv = BlockView(u), BlockView(v)
    for n in range(1, _search_bound(bu, bv) + 1):
        if not (bu.closed(n) and bv.closed(n)):
            return False
        if bv.length(n) != bu.length(n) + 1:
            return True
    return False


def in_C4(u: LassoWord, v: LassoWord) -> bool:
    bu, bv = BlockView(u), BlockView(v)
    for n in range(1, _search_bound(bu, bv) + 1):
        if not (bu.closed(n + 1) and bv.closed(n)):
            return False
        if bu.length(n + 1) != bv.length(n) + 1:
            return True
    return False


STRUCTURAL: dict[str, Callable[[LassoWord, LassoWord], bool]] = {
    "C1": in_C1, "C2": in_C2, "C3": in_C3, "C4": in_C4,
}


def complement_parts(u: LassoWord, v: LassoWord) -> list[str]:
    """Names of the parts C1..C4 holding ``(u, v)``."""
    u.check(CODE)
    v.check(CODE)
    return [name for name, test in STRUCTURAL.items() if test(u, v)]


def in_complement_structural(u: LassoWord, v: LassoWord) -> bool:
    return bool(complement_parts(u, v))


# -- transducers for C1..C4 -------------------------------------------------------

def _make(states, transitions, initial, finals) -> BuchiTransducer:
    return BuchiTransducer(states=tuple(states), input_alphabet=CODE, output_alphabet=CODE,
                           transitions=tuple(Transition(*t) for t in transitions),
                           initial=initial, finals=frozenset(finals))


def _anything(state: str) -> list[tuple[str, str, str, str]]:
    return [(state, a, b, state) for a in LETTERS for b in LETTERS]


def build_C1_transducer() -> BuchiTransducer:
    ts = _anything("start")
    ts += [("start", "", "", "noA1"), ("start", "", "", "noA2")]
    ts += [("noA1", a, b, "noA1") for a in SIGMA for b in LETTERS]
    ts += [("noA2", a, b, "noA2") for a in LETTERS for b in SIGMA]
    return _make(["start", "noA1", "noA2"], ts, "start", ["noA1", "noA2"])


def build_C2_transducer() -> BuchiTransducer:
    # r0..r4 track a correct start S A S S A of tape 1; any wrong letter escapes to "bad"
    expect = [SIGMA, (SEPARATOR,), SIGMA, SIGMA, (SEPARATOR,)]
    ts = [("r0", "", b, "bad") for b in SIGMA]
    for i, ok in enumerate(expect):
        for a in LETTERS:
            if a not in ok:
                ts.append((f"r{i}", a, "", "bad"))
            elif i < 4:
                ts.append((f"r{i}", a, "", f"r{i + 1}"))
    ts += _anything("bad")
    return _make(["r0", "r1", "r2", "r3", "r4", "bad"], ts, "r0", ["bad"])


def _skip_blocks(state: str, target: str) -> list[tuple[str, str, str, str]]:
    """Read ``n >= 1`` synchronised ``A`` pairs with free letters between."""
    ts = [(state, a, "", state) for a in SIGMA] + [(state, "", b, state) for b in SIGMA]
    ts += [(state, SEPARATOR, SEPARATOR, state), (state, SEPARATOR, SEPARATOR, target)]
    return ts


def _length_mismatch(prefix: str, short: int) -> list[tuple[str, str, str, str]]:
    """From ``{prefix}cmp`` accept when the block on tape ``3 - short`` is not
    exactly one letter longer than the block on tape ``short``, both closed."""

    def on(tape: int, word: str) -> tuple[str, str]:
        return (word, "") if tape == 1 else ("", word)

    long = 3 - short
    cmp, ts = f"{prefix}cmp", []
    ts += [(cmp, a, b, cmp) for a in SIGMA for b in SIGMA]
    # long block ends no later than the short one
    ts.append((cmp, *on(long, SEPARATOR), f"{prefix}finish"))
    ts += [(f"{prefix}finish", *on(short, a), f"{prefix}finish") for a in SIGMA]
    ts.append((f"{prefix}finish", *on(short, SEPARATOR), "all"))
    # long block exceeds the short one by two or more
    ts.append((cmp, *on(short, SEPARATOR), f"{prefix}over0"))
    ts += [(f"{prefix}over0", *on(long, a), f"{prefix}over1") for a in SIGMA]
    ts += [(f"{prefix}over1", *on(long, a), f"{prefix}over2") for a in SIGMA]
    ts += [(f"{prefix}over2", *on(long, a), f"{prefix}over2") for a in SIGMA]
    ts.append((f"{prefix}over2", *on(long, SEPARATOR), "all"))
    return ts


def build_C3_transducer() -> BuchiTransducer:
    ts = _skip_blocks("skip", "cmp") + _length_mismatch("", short=1) + _anything("all")
    states = ["skip", "cmp", "finish", "over0", "over1", "over2", "all"]
    return _make(states, ts, "skip", ["all"])


def build_C4_transducer() -> BuchiTransducer:
    ts = _skip_blocks("skip", "extra")
    # one more tape-1 block before the compared pair
    ts += [("extra", a, "", "extra") for a in SIGMA] + [("extra", SEPARATOR, "", "cmp")]
    ts += _length_mismatch("", short=2) + _anything("all")
    states = ["skip", "extra", "cmp", "finish", "over0", "over1", "over2", "all"]
    return _make(states, ts, "skip", ["all"])


BUILDERS: dict[str, Callable[[], BuchiTransducer]] = {
    "C1": build_C1_transducer, "C2": build_C2_transducer,
    "C3": build_C3_transducer, "C4": build_C4_transducer,
}


def build_complement_transducer() -> BuchiTransducer:
    """Pairs that are not the code of any omega^2-word."""
    return union(*(b() for b in BUILDERS.values()), tags=list(BUILDERS))


def covering_depth(u: LassoWord, v: LassoWord) -> int:
    """A prefix length at which no lasso pair can still look like a code."""
    L = max(len(u), len(v))
    return 2 * (L + 3) ** 2
