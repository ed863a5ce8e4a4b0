"""Seeded generators for lassos, lasso pairs, grids and small transducers.

Uniform pairs over {0,1,A} almost never fit the R or R1 shapes, so the pair
samplers mix uniform draws with templated cycles whose block lengths line
up the way those shapes need.
"""
from __future__ import annotations

import random

from .grid import GridSpec
from .transducer import BuchiTransducer, Transition
from .words import BINARY, CODE, Alphabet, LassoWord

Pair = tuple[LassoWord, LassoWord]


def random_word(rng: random.Random, letters, n: int, weights=None) -> str:
    return "".join(rng.choices(list(letters), weights=weights, k=n))


def random_lasso(rng: random.Random, alphabet: Alphabet = BINARY, max_stem: int = 3,
                 max_cycle: int = 4, weights=None) -> LassoWord:
    stem = random_word(rng, alphabet, rng.randint(0, max_stem), weights)
    cycle = random_word(rng, alphabet, rng.randint(1, max_cycle), weights)
    return LassoWord(stem, cycle)


def _binary(rng: random.Random, n: int, zeros: bool) -> str:
    return "0" * n if zeros else random_word(rng, "01", n)


def _templated_pair(rng: random.Random, max_stem: int, max_cycle: int, zeros: bool) -> Pair:
    short = rng.randint(0, max_cycle - 2)
    if zeros:
        long = short + rng.choice((0, 0, 1))
    else:
        long = short + rng.choice((1, 1, 1, 0, 2))
    long = min(long, max_cycle - 1)
    sparse = zeros and rng.random() < 0.7
    c1 = _binary(rng, long, sparse) + "A"
    c2 = _binary(rng, short, sparse) + "A"
    if rng.random() < 0.5:
        c1 = c1[-1] + c1[:-1]
    if rng.random() < 0.5:
        c2 = c2[-1] + c2[:-1]
    w = [9, 9, 6] if not zeros else [12, 5, 6]
    s1 = random_word(rng, CODE, rng.randint(0, max_stem), w)
    s2 = random_word(rng, CODE, rng.randint(0, max_stem), w)
    return LassoWord(s1, c1), LassoWord(s2, c2)


def random_code_pair(rng: random.Random, max_stem: int = 3, max_cycle: int = 4,
                     flavour: str = "R") -> Pair:
    """A lasso pair over {0,1,A}; ``flavour`` ("R", "R1", "code") picks the
    templates mixed into the uniform draws."""
    roll = rng.random()
    if roll < 0.4:
        w = rng.choice([None, [3, 3, 4], [6, 2, 3]])
        return (random_lasso(rng, CODE, max_stem, max_cycle, w),
                random_lasso(rng, CODE, max_stem, max_cycle, w))
    if flavour == "code":
        # valid-looking heads, so C3/C4 are exercised outside C1/C2
        heads = [("0A00A", "A000A"), ("1A01A", "A"), ("0A11", "A01"), ("0A", "A"), ("A", "0")]
        h1, h2 = rng.choice(heads)
        u = random_lasso(rng, CODE, 2, max_cycle, [3, 3, 4])
        v = random_lasso(rng, CODE, 2, max_cycle, [3, 3, 4])
        return LassoWord(h1 + u.stem, u.cycle), LassoWord(h2 + v.stem, v.cycle)
    return _templated_pair(rng, max_stem, max_cycle, zeros=(flavour == "R1"))


def random_grid(rng: random.Random, max_stem: int = 2, max_period: int = 4) -> GridSpec:
    rs, rp = rng.randint(0, max_stem), rng.randint(1, max_period)
    cs, cp = rng.randint(0, max_stem), rng.randint(1, max_period)
    density = rng.choice([0.0, 0.1, 0.25, 0.5, 0.8])
    table = tuple(tuple("1" if rng.random() < density else "0" for _ in range(cs + cp))
                  for _ in range(rs + rp))
    return GridSpec(rs, rp, cs, cp, table)


def random_transducer(rng: random.Random, max_states: int = 5, max_label: int = 2,
                      alphabet: Alphabet = BINARY, max_transitions: int = 10) -> BuchiTransducer:
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    ts = []
    for _ in range(rng.randint(1, max_transitions)):
        ts.append(Transition(rng.choice(states),
                             random_word(rng, alphabet, rng.randint(0, max_label)),
                             random_word(rng, alphabet, rng.randint(0, max_label)),
                             rng.choice(states)))
    finals = frozenset(s for s in states if rng.random() < 0.4)
    return BuchiTransducer(tuple(states), alphabet, alphabet, tuple(dict.fromkeys(ts)), "s0", finals)
