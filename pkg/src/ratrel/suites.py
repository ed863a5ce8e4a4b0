"""Seeded property suites behind ``ratrel suite``.

Every case draws from its own ``random.Random(f"{seed}:{suite}:{index}")``
so a failure names everything needed to replay it.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import coding, grid, relations, transducer, words
from .buchi import accepts_lasso, automaton_A, automaton_A_complement
from .sampling import random_code_pair, random_grid, random_lasso, random_transducer
from .words import BINARY, canonicalize, equals_omega, letter_at, lcm, prefix, unroll


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0
    parts: list["SuiteReport"] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and all(p.ok for p in self.parts)

    def to_json(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {"suite": self.suite, "cases": self.cases,
                               "failure_count": len(self.failures), "failures": self.failures}
        if self.parts:
            out["suites"] = [p.to_json(timing) for p in self.parts]
            out["failure_count"] = sum(p["failure_count"] for p in out["suites"])
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


Check = Callable[[random.Random], dict[str, Any] | None]


# each check returns None on success, or the failing inputs

def _words_case(rng: random.Random):
    w = random_lasso(rng, words.Alphabet(("a", "b", "c")), 4, 4)
    c = canonicalize(w)
    horizon = len(w.stem) + 3 * len(w.cycle)
    if any(letter_at(w, i) != letter_at(c, i) for i in range(1, horizon + 1)):
        return {"w": str(w), "property": "letter_at invariant under canonicalize"}
    if canonicalize(c) != c:
        return {"w": str(w), "property": "canonicalize idempotent"}
    other = random_lasso(rng, words.Alphabet(("a", "b", "c")), 4, 4) if rng.random() < 0.5 else unroll(w, 2)
    n = max(len(w.stem), len(other.stem)) + 2 * lcm([len(w.cycle), len(other.cycle)])
    if equals_omega(w, other) != (prefix(w, n) == prefix(other, n)):
        return {"a": str(w), "b": str(other), "property": "equals_omega matches long prefixes"}
    return None


def _buchi_case(rng: random.Random):
    w = random_lasso(rng, BINARY, 4, 4)
    a = accepts_lasso(automaton_A(), w)
    if a != ("1" in canonicalize(w).cycle):
        return {"w": str(w), "property": "automaton A closed form"}
    if a == accepts_lasso(automaton_A_complement(), w):
        return {"w": str(w), "property": "A and its complement disagree"}
    k = rng.randint(1, 4)
    if accepts_lasso(automaton_A(), unroll(w, k)) != a:
        return {"w": str(w), "k": k, "property": "unrolling invariance"}
    return None


def _transducer_case(rng: random.Random):
    T1, T2 = random_transducer(rng), random_transducer(rng)
    u, v = random_lasso(rng, BINARY, 3, 3), random_lasso(rng, BINARY, 3, 3)
    a = transducer.accepts_pair(T1, u, v)
    k1, k2 = rng.randint(1, 3), rng.randint(1, 3)
    if transducer.accepts_pair(T1, unroll(u, k1), unroll(v, k2)) != a:
        return {"T": T1.to_json(), "u": str(u), "v": str(v), "property": "lasso invariance"}
    both = transducer.union(T1, T2)
    if transducer.accepts_pair(both, u, v) != (a or transducer.accepts_pair(T2, u, v)):
        return {"T1": T1.to_json(), "T2": T2.to_json(), "u": str(u), "v": str(v), "property": "union"}
    if a:
        lasso = transducer.find_accepting_lasso(T1, u, v)
        r = lasso.prefix(T1, lasso.threshold + 3)
        rep = transducer.validate_run(T1, r, r.consumed_input, r.consumed_output)
        if (not rep.valid or rep.final_visits < 1
                or prefix(u, len(r.consumed_input)) != r.consumed_input
                or prefix(v, len(r.consumed_output)) != r.consumed_output):
            return {"T": T1.to_json(), "u": str(u), "v": str(v), "property": "run soundness"}
    return None


_COMPLEMENT = None


def _coding_case(rng: random.Random):
    global _COMPLEMENT
    if _COMPLEMENT is None:
        _COMPLEMENT = (coding.build_complement_transducer(),
                       {n: b() for n, b in coding.BUILDERS.items()})
    whole, parts = _COMPLEMENT
    u, v = random_code_pair(rng, flavour="code")
    if not transducer.accepts_pair(whole, u, v):
        return {"u": str(u), "v": str(v), "property": "complement accepts every lasso pair"}
    for name, T in parts.items():
        if transducer.accepts_pair(T, u, v) != coding.STRUCTURAL[name](u, v):
            return {"u": str(u), "v": str(v), "part": name, "property": "transducer vs structural"}
    g = random_grid(rng)
    nb = rng.randint(0, 6)
    if not coding.is_valid_code_prefix(*coding.encode_prefix(g, nb)):
        return {"grid": g.to_json(), "nblocks": nb, "property": "layout consistency"}
    return None


def _reduction_case(rng: random.Random):
    g = random_grid(rng)
    if grid.in_S(g) != relations.r_holds_for_code(g):
        return {"grid": g.to_json(), "property": "S = h^-1(R)"}
    u, v = random_code_pair(rng, flavour="R")
    if transducer.accepts_pair(relations.build_T(), u, v) != relations.r_pattern_accepts(u, v):
        return {"u": str(u), "v": str(v), "property": "T vs R oracle"}
    return None


def _pi3_case(rng: random.Random):
    g = random_grid(rng)
    if grid.in_P(g) != relations.r1_holds_for_code(g):
        return {"grid": g.to_json(), "property": "P = h^-1(R1)"}
    u, v = random_code_pair(rng, flavour="R1")
    if transducer.accepts_pair(relations.build_T1(), u, v) != relations.r1_pattern_accepts(u, v):
        return {"u": str(u), "v": str(v), "property": "T1 vs R1 oracle"}
    return None


SUITES: dict[str, Check] = {
    "words": _words_case,
    "buchi": _buchi_case,
    "transducer": _transducer_case,
    "coding": _coding_case,
    "reduction": _reduction_case,
    "pi3": _pi3_case,
}


def run_suite(name: str, seed: int, n: int) -> SuiteReport:
    if name == "all":
        start = time.perf_counter()
        report = SuiteReport("all", parts=[run_suite(s, seed, n) for s in SUITES])
        report.cases = sum(p.cases for p in report.parts)
        report.wall_time = time.perf_counter() - start
        return report
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    check = SUITES[name]
    report = SuiteReport(name)
    start = time.perf_counter()
    for i in range(n):
        case_seed = f"{seed}:{name}:{i}"
        failure = check(random.Random(case_seed))
        report.cases += 1
        if failure is not None:
            report.failures.append({"seed": case_seed, **failure})
    report.wall_time = time.perf_counter() - start
    return report
