import random

import pytest

from ratrel.coding import build_C1_transducer, build_C2_transducer, in_C1
from ratrel.relations import build_T
from ratrel.sampling import random_lasso, random_transducer
from ratrel.transducer import (
    BuchiTransducer, RunPrefix, Transition, TransducerError, accepts_pair, configuration_graph,
    find_accepting_lasso, run_prefix, to_dot, union, validate_run,
)
from ratrel.words import BINARY, CODE, AlphabetError, LassoWord, canonicalize, parse_lasso, prefix, unroll

L = parse_lasso

HAND_RUN = [
    ("q0", "A", "A", "q1"), ("q1", "1", "", "q2"), ("q2", "A", "1", "q1^1"),
    ("q1^1", "0", "", "q3"), ("q3", "1", "A", "q2^1"), ("q2^1", "", "", "q2"),
    ("q2", "A", "1", "q1^1"), ("q1^1", "0", "", "q3"),
]


def _node_count(dot_text):
    return sum(1 for line in dot_text.splitlines() if "[shape=" in line)


def test_T_examples():
    T = build_T()
    assert accepts_pair(T, L("A1|A01"), L("A|1A"))
    assert not accepts_pair(T, L("|0"), L("|0"))


def test_no_final_states_accepts_nothing():
    T = build_T()
    empty = BuchiTransducer(T.states, CODE, CODE, T.transitions, T.initial, frozenset())
    assert not accepts_pair(empty, L("A1|A01"), L("A|1A"))


def test_lambda_loop_on_final_state_is_not_progress():
    T = BuchiTransducer(("f",), BINARY, BINARY, (Transition("f", "", "", "f"),), "f", frozenset({"f"}))
    rng = random.Random(5)
    for _ in range(50):
        assert not accepts_pair(T, random_lasso(rng), random_lasso(rng))


def test_single_tape_progress_is_not_enough():
    T = BuchiTransducer(("f",), BINARY, BINARY, (Transition("f", "0", "", "f"),), "f", frozenset({"f"}))
    assert not accepts_pair(T, L("|0"), L("|0"))
    both = BuchiTransducer(("f",), BINARY, BINARY,
                           (Transition("f", "0", "", "f"), Transition("f", "", "0", "f")), "f", frozenset({"f"}))
    assert accepts_pair(both, L("|0"), L("|0"))


def test_labels_may_straddle_the_stem():
    T = BuchiTransducer(("s",), BINARY, BINARY, (Transition("s", "10", "1", "s"),), "s", frozenset({"s"}))
    assert accepts_pair(T, L("1|01"), L("|1"))
    assert not accepts_pair(T, L("0|10"), L("|1"))


def test_alphabet_mismatch_raises():
    with pytest.raises(AlphabetError):
        accepts_pair(build_T(), L("|2"), L("|0"))


def test_lasso_invariance_on_seeded_triples():
    rng = random.Random(2024)
    for _ in range(500):
        T = random_transducer(rng)
        u, v = random_lasso(rng), random_lasso(rng)
        a = accepts_pair(T, u, v)
        assert accepts_pair(T, canonicalize(u), canonicalize(v)) == a
        k1, k2 = rng.randint(1, 3), rng.randint(1, 3)
        assert accepts_pair(T, unroll(u, k1), v) == a
        assert accepts_pair(T, u, unroll(v, k2)) == a


def test_union_examples():
    rng = random.Random(8)
    T = build_T()
    TT = union(T, T)
    empty = BuchiTransducer(("e",), CODE, CODE, (), "e", frozenset())
    Te = union(empty, T)
    for _ in range(100):
        u, v = random_lasso(rng, CODE, 3, 4), random_lasso(rng, CODE, 3, 4)
        a = accepts_pair(T, u, v)
        assert accepts_pair(TT, u, v) == a
        assert accepts_pair(Te, u, v) == a
    both = union(build_C1_transducer(), build_C2_transducer())
    assert accepts_pair(both, L("0|0"), L("0|0"))
    assert in_C1(L("0|0"), L("0|0"))


def test_union_errors():
    a = BuchiTransducer(("s",), BINARY, BINARY, (), "s", frozenset())
    b = BuchiTransducer(("s",), CODE, CODE, (), "s", frozenset())
    with pytest.raises(AlphabetError):
        union(a, b)
    with pytest.raises(TransducerError):
        union(a, a, tags=["x", "x"])


def test_soundness_of_run_prefixes():
    rng = random.Random(77)
    checked = 0
    for _ in range(1500):
        T = random_transducer(rng)
        u, v = random_lasso(rng), random_lasso(rng)
        if not accepts_pair(T, u, v):
            assert find_accepting_lasso(T, u, v) is None
            continue
        lasso = find_accepting_lasso(T, u, v)
        for n in (0, 1, lasso.threshold, lasso.threshold + 7):
            r = run_prefix(T, u, v, n)
            assert len(r.transitions) == n
            rep = validate_run(T, r, r.consumed_input, r.consumed_output)
            assert rep.valid, rep.reason
            assert prefix(u, len(r.consumed_input)) == r.consumed_input
            assert prefix(v, len(r.consumed_output)) == r.consumed_output
            if n >= lasso.threshold:
                assert rep.final_visits >= 1
        checked += 1
    assert checked > 30


def test_validate_hand_run():
    T = build_T()
    r = RunPrefix.from_transitions(T, HAND_RUN)
    assert r.consumed_input == "A1A01A0" == prefix(L("A1|A01"), 7)
    assert r.consumed_output == "A1A1" == prefix(L("A|1A"), 4)
    rep = validate_run(T, r, "A1A01A0", "A1A1")
    assert rep.valid
    assert rep.final_visits == 3


def test_validate_empty_run():
    T = build_T()
    rep = validate_run(T, RunPrefix.from_transitions(T, []), "", "")
    assert rep.valid and rep.final_visits == 0


def test_validate_detects_chain_break():
    T = build_T()
    broken = HAND_RUN[:3] + [("q2", "0", "0", "q2")] + HAND_RUN[4:]
    rep = validate_run(T, RunPrefix.from_transitions(T, broken), "A1A0", "A10")
    assert not rep.valid
    assert rep.first_bad_index == 3


def test_validate_detects_wrong_tape_and_unknown_transition():
    T = build_T()
    r = RunPrefix.from_transitions(T, HAND_RUN)
    assert not validate_run(T, r, "A1A01A1", "A1A1").valid
    assert not validate_run(T, r, "A1A01A0", "A1A1A").valid
    bogus = RunPrefix.from_transitions(T, [("q0", "1", "1", "q1")])
    rep = validate_run(T, bogus, "1", "1")
    assert not rep.valid and rep.first_bad_index == 0


def test_configuration_graph_is_finite_and_bounded():
    T = build_T()
    u, v = L("A1|A01"), L("A|1A")
    g = configuration_graph(T, u, v)
    assert len(g.edges) <= len(T.states) * 5 * 2
    assert g.accepting_components()


def test_json_roundtrip():
    T = build_T()
    data = T.to_json()
    assert set(data) >= {"states", "input_alphabet", "output_alphabet", "initial", "finals", "transitions"}
    assert set(data["transitions"][0]) == {"from", "input", "output", "to"}
    assert BuchiTransducer.from_json(data) == T


def test_dot():
    T = build_T()
    text = to_dot(T)
    assert _node_count(text) == 8
    assert text.count("doublecircle") == 2
    assert '"q1^1" [shape=doublecircle]' in text and '"q2^1" [shape=doublecircle]' in text
    lone = BuchiTransducer(("s",), BINARY, BINARY, (), "s", frozenset())
    assert _node_count(to_dot(lone)) == 1
    other = random_transducer(random.Random(1), alphabet=CODE)
    assert _node_count(to_dot(union(T, other))) == len(T.states) + len(other.states) + 1


def test_dot_is_deterministic():
    assert to_dot(build_T()) == to_dot(build_T())
