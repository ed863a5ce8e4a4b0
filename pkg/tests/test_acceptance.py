"""Acceptance criteria, one test each; every test records a PASS/FAIL line
that is echoed in the terminal summary (and printed when run as a script)."""
import random
import time

from conftest import ACCEPTANCE_LINES, grid_corpus

from ratrel.buchi import accepts_lasso, automaton_A
from ratrel.coding import (
    BUILDERS, LAYOUT, STRUCTURAL, build_complement_transducer, encode_prefix,
)
from ratrel.grid import GridSpec, first_disagreement_level, in_P, in_S
from ratrel.grid import column as grid_column
from ratrel.relations import (
    build_T, build_T1, r1_holds_for_code, r1_pattern_accepts, r_holds_for_code, r_pattern_accepts,
    witness_run,
)
from ratrel.sampling import random_code_pair, random_grid, random_lasso, random_transducer
from ratrel.transducer import accepts_pair, union, validate_run
from ratrel.words import BINARY, canonicalize


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_reduction_for_S():
    start = time.perf_counter()
    bad = [g for g in grid_corpus() if in_S(g) != r_holds_for_code(g)]
    elapsed = time.perf_counter() - start
    record(1, not bad and elapsed < 10, f"200 grids, {len(bad)} disagreements, {elapsed:.2f}s (< 10s)")


def test_criterion_2_reduction_for_P():
    bad = [g for g in grid_corpus() if in_P(g) != r1_holds_for_code(g)]
    record(2, not bad, f"200 grids, {len(bad)} disagreements")


def _engine_vs_oracle(T, oracle, flavour, seed):
    rng = random.Random(seed)
    bad = positives = 0
    start = time.perf_counter()
    for _ in range(500):
        u, v = random_code_pair(rng, max_stem=3, max_cycle=4, flavour=flavour)
        verdict = oracle(u, v)
        positives += verdict
        bad += accepts_pair(T, u, v) != verdict
    return bad, positives, time.perf_counter() - start


def test_criterion_3_T_against_R_oracle():
    bad, pos, elapsed = _engine_vs_oracle(build_T(), r_pattern_accepts, "R", 3)
    record(3, bad == 0 and elapsed < 30,
           f"500 pairs ({pos} in R), {bad} disagreements, {elapsed:.2f}s (< 30s)")


def test_criterion_4_T1_against_R1_oracle():
    bad, pos, elapsed = _engine_vs_oracle(build_T1(), r1_pattern_accepts, "R1", 4)
    record(4, bad == 0 and elapsed < 30,
           f"500 pairs ({pos} in R1), {bad} disagreements, {elapsed:.2f}s (< 30s)")


def test_criterion_5_complement_totality():
    rng = random.Random(5)
    whole = build_complement_transducer()
    parts = {name: build() for name, build in BUILDERS.items()}
    rejected = 0
    bad = dict.fromkeys(parts, 0)
    for _ in range(500):
        u, v = random_code_pair(rng, max_stem=3, max_cycle=4, flavour="code")
        rejected += not accepts_pair(whole, u, v)
        for name, T in parts.items():
            bad[name] += accepts_pair(T, u, v) != STRUCTURAL[name](u, v)
    record(5, rejected == 0 and not any(bad.values()),
           f"500 pairs, {rejected} rejected by the complement, per-part disagreements {bad}")


def test_criterion_6_witness_soundness():
    T = build_T()
    aut = automaton_A()
    runs = invalid = inexact = sparse = 0
    fewest = None
    for g in grid_corpus():
        if not in_S(g):
            continue
        p1, p2 = encode_prefix(g, 20)
        for col in range(1, g.row_classes + 1):
            if not accepts_lasso(aut, grid_column(g, col)):
                continue
            r = witness_run(g, col, 20)
            rep = validate_run(T, r, p1, p2)
            runs += 1
            invalid += not rep.valid
            inexact += (r.consumed_input, r.consumed_output) != (p1, p2)
            sparse += r.final_visits < 15
            fewest = r.final_visits if fewest is None else min(fewest, r.final_visits)
    record(6, runs > 0 and invalid == inexact == sparse == 0,
           f"{runs} runs over 20 blocks: {invalid} fail validate_run against encode_prefix, "
           f"{inexact} do not consume encode_prefix exactly, {sparse} have < 15 final visits "
           f"(fewest {fewest})")


def test_criterion_7_union_semantics():
    rng = random.Random(7)
    bad = positives = 0
    for _ in range(500):
        T1, T2 = random_transducer(rng), random_transducer(rng)
        u, v = random_lasso(rng), random_lasso(rng)
        expected = accepts_pair(T1, u, v) or accepts_pair(T2, u, v)
        positives += expected
        bad += accepts_pair(union(T1, T2), u, v) != expected
    record(7, bad == 0, f"500 triples ({positives} accepted), {bad} disagreements")


def _continuity_violations(a: GridSpec, b: GridSpec, nblocks: int = 8) -> int:
    level = first_disagreement_level(a, b)
    ea, eb = encode_prefix(a, nblocks), encode_prefix(b, nblocks)
    violations = 0
    for bound in range(2, 13):
        if level is not None and level <= bound:
            continue
        for tape in (1, 2):
            pos = 0
            for j in range(nblocks):
                for m, n in LAYOUT.coordinates(tape, j):
                    violations += m + n < bound and ea[tape - 1][pos] != eb[tape - 1][pos]
                    pos += 1
                pos += 1
    return violations


def test_criterion_8_continuity_of_the_code():
    rng = random.Random(8)
    total = close = 0
    for _ in range(200):
        a = random_grid(rng)
        if rng.random() < 0.5:
            b = random_grid(rng)
        else:
            table = [list(r) for r in a.table]
            i, j = rng.randrange(len(table)), rng.randrange(len(table[0]))
            table[i][j] = "1" if table[i][j] == "0" else "0"
            b = GridSpec(a.row_stem, a.row_period, a.col_stem, a.col_period, table)
        level = first_disagreement_level(a, b)
        close += level is None or level > 4
        total += _continuity_violations(a, b)
    record(8, total == 0, f"200 grid pairs ({close} agreeing past level 4), {total} violations")


def test_criterion_9_closed_form_of_A():
    rng = random.Random(9)
    aut = automaton_A()
    bad = sum(accepts_lasso(aut, w) != ("1" in canonicalize(w).cycle)
              for w in (random_lasso(rng, BINARY, 4, 4) for _ in range(1000)))
    record(9, bad == 0, f"1000 lassos, {bad} disagreements")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
