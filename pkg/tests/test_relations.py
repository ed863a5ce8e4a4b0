import random
from collections import deque

import pytest

from ratrel.coding import build_complement_transducer, covering_depth, encode_prefix, is_valid_code_prefix
from ratrel.grid import GridSpec, in_P, in_S
from ratrel.relations import (
    T_FINALS, T_STATES, T_TRANSITIONS, DeadColumnError, build_P_relation, build_S_relation, build_T,
    build_T1, r1_holds_for_code, r1_pattern_accepts, r1_pattern_witness, r_holds_for_code,
    r_pattern_accepts, r_pattern_witness, tracked_column, witness_run,
)
from ratrel.sampling import random_code_pair, random_grid
from ratrel.transducer import accepts_pair, validate_run
from ratrel.words import LassoWord, canonicalize, parse_lasso, prefix

L = parse_lasso
ZERO = GridSpec.constant("0")
ONE = GridSpec.constant("1")


@pytest.fixture(scope="module")
def T():
    return build_T()


@pytest.fixture(scope="module")
def T1():
    return build_T1()


def test_T_transcription():
    assert set(T_STATES) == {"q0", "q1", "q2", "q3", "q1^0", "q1^1", "q2^0", "q2^1"}
    assert set(T_FINALS) == {"q1^1", "q2^1"}
    assert len(T_TRANSITIONS) == len(set(T_TRANSITIONS)) == 30
    q1_labels = sorted(t.input for t in T_TRANSITIONS if t.source == "q1")
    assert q1_labels == ["0", "00", "01", "1", "10", "11"]
    assert ("q3", "1", "A", "q2^1") in T_TRANSITIONS
    assert ("q2^0", "", "", "q2") in T_TRANSITIONS


def test_T_examples(T):
    assert accepts_pair(T, L("A1|A01"), L("A|1A"))
    assert not accepts_pair(T, L("|0"), L("|0"))


def test_T_takes_odd_letters_of_t_from_tape_one(T):
    # t = 1 0 1 0 ...: t(1), t(3), ... are the 1s of tape 1, t(2), ... the 0s of tape 2
    u, v = L("A1|A01"), L("A|0A")
    assert accepts_pair(T, u, v)
    assert r_pattern_accepts(u, v)
    w = r_pattern_witness(u, v)
    assert w.k == 1 and w.u == ""
    assert canonicalize(w.t_word()).cycle in ("10", "01")


def test_r_pattern_examples():
    w = r_pattern_witness(L("A1|A01"), L("A|1A"))
    assert w is not None and w.k == 1 and w.u == ""
    assert canonicalize(w.t_word()) == LassoWord("", "1")
    assert not r_pattern_accepts(L("A0|A00"), L("A|0A"))
    assert not r_pattern_accepts(L("0|0"), L("0|0"))


def test_r_pattern_single_letter_u(T):
    # rounds only line up once one extra tape-1 letter is spent on u
    u, v = L("A01|A01"), L("A|1A")
    w = r_pattern_witness(u, v)
    assert w is not None and len(w.u) <= 1
    assert accepts_pair(T, u, v)


def test_r1_pattern_examples(T1):
    assert not r1_pattern_accepts(L("0|0"), L("0|0"))
    assert not accepts_pair(T1, L("0|0"), L("0|0"))
    # u_i = v_i = lambda and |g_i| = |z_i| = 0 in every round
    pos = (L("A|0A"), L("A|0A"))
    w = r1_pattern_witness(*pos)
    assert w is not None and all(w.equality_flags)
    assert r1_pattern_accepts(*pos) and accepts_pair(T1, *pos)
    # tape-1 blocks one longer than tape-2 blocks: every round has |g_i| = |z_i| + 1
    neg = (L("A|01A"), L("A|1A"))
    assert r_pattern_accepts(*neg)
    assert not r1_pattern_accepts(*neg)
    assert not accepts_pair(T1, *neg)


def test_T_agrees_with_R_oracle(T):
    rng = random.Random(101)
    positives = 0
    for _ in range(300):
        u, v = random_code_pair(rng, flavour="R")
        verdict = r_pattern_accepts(u, v)
        assert accepts_pair(T, u, v) == verdict, (str(u), str(v))
        positives += verdict
    assert positives > 30


def test_T1_agrees_with_R1_oracle(T1):
    rng = random.Random(102)
    positives = 0
    for _ in range(300):
        u, v = random_code_pair(rng, flavour="R1")
        verdict = r1_pattern_accepts(u, v)
        assert accepts_pair(T1, u, v) == verdict, (str(u), str(v))
        positives += verdict
    assert positives > 30


def test_tracked_columns():
    assert tracked_column(1, 0)[0] == 2
    assert tracked_column(1, 1)[0] == 1
    assert tracked_column(3, 0)[0] == 6
    assert tracked_column(3, 1)[0] == 5


def test_r_holds_for_code_examples():
    assert not r_holds_for_code(ZERO)
    assert r_holds_for_code(ONE)
    odd_ones = GridSpec(0, 2, 0, 1, (("1",), ("0",)))
    assert r_holds_for_code(odd_ones)
    late = GridSpec(0, 1, 2, 1, (("1", "1", "0"),))
    assert not r_holds_for_code(late)


def test_code_level_relations(corpus):
    for g in corpus[:80]:
        assert in_S(g) == r_holds_for_code(g)
        assert in_P(g) == r1_holds_for_code(g)


def test_witness_examples(T):
    r = witness_run(ONE, 2, 10)
    p1, p2 = encode_prefix(ONE, 10)
    rep = validate_run(T, r, p1, r.consumed_output)
    assert rep.valid and rep.final_visits >= 8
    assert r.consumed_input == p1 and p2.startswith(r.consumed_output)
    r = witness_run(ONE, 1, 10)
    assert validate_run(T, r, p1, r.consumed_output).valid
    with pytest.raises(DeadColumnError):
        witness_run(ZERO, 1, 5)


def test_witness_json_lists_transitions():
    data = witness_run(ONE, 2, 3).to_json()
    assert set(data["transitions"][0]) == {"from", "input", "output", "to"}
    assert data["final_visits"] >= 1


def _best_visits_consuming_exactly(T, p1, p2):
    """Most final visits of a run of T reading exactly ``p1`` and ``p2``, or None."""
    start = (T.initial, 0, 0)
    best = {start: 0}
    order = deque([start])
    # every cycle of T consumes input, so the relaxation terminates
    while order:
        state, i, j = node = order.popleft()
        for t in T.outgoing(state):
            if p1.startswith(t.input, i) and p2.startswith(t.output, j):
                nxt = (t.target, i + len(t.input), j + len(t.output))
                score = best[node] + (t.target in T.finals)
                if score > best.get(nxt, -1):
                    best[nxt] = score
                    order.append(nxt)
    ends = [v for (q, i, j), v in best.items() if i == len(p1) and j == len(p2)]
    return max(ends) if ends else None


@pytest.mark.parametrize("g", [ONE, GridSpec(0, 2, 0, 1, (("1",), ("0",))), GridSpec(0, 1, 0, 2, (("1", "0"),))])
def test_reading_both_code_prefixes_exactly_visits_no_final_state(T, g):
    for nblocks in (*range(1, 7), 20):
        assert _best_visits_consuming_exactly(T, *encode_prefix(g, nblocks)) == 0


def test_S_and_P_relations(T):
    S, P, co = build_S_relation(), build_P_relation(), build_complement_transducer()
    assert len(S.states) == len(T.states) + len(co.states) + 1
    assert len(P.states) == len(build_T1().states) + len(co.states) + 1
    assert accepts_pair(S, L("A1|A01"), L("A|1A"))
    rng = random.Random(55)
    for _ in range(100):
        u, v = random_code_pair(rng, flavour="code")
        if accepts_pair(co, u, v):
            assert accepts_pair(S, u, v) and accepts_pair(P, u, v)


def test_lassos_accepted_by_T_are_never_codes(T):
    rng = random.Random(56)
    co = build_complement_transducer()
    hits = 0
    for _ in range(300):
        u, v = random_code_pair(rng, flavour="R")
        if accepts_pair(T, u, v):
            hits += 1
            n = covering_depth(u, v)
            assert not is_valid_code_prefix(prefix(u, n), prefix(v, n))
            assert accepts_pair(co, u, v)
    assert hits > 30
