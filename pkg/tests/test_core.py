import random

import pytest
from hypothesis import given, settings, strategies as st

from liar_arena.adversaries import ConsistentAdversary, claim1_wrap
from liar_arena.core import (
    Answer,
    EnumerationCapError,
    GameKind,
    LieTracker,
    Query,
    Scenario,
    Transcript,
    all_scenarios,
    answer_truth,
    consistent_scenarios,
    lie_count,
    target_of,
)

import oracles

F, S = Answer.FIRST, Answer.SECOND
MAX, MAXMIN = GameKind.MAX, GameKind.MAXMIN


def tx(n, *entries):
    return Transcript(n, tuple((Query(a, b), ans) for (a, b), ans in entries))


def test_answer_truth_examples():
    s = Scenario((1, 0))
    assert answer_truth(Query(0, 1), F, s)
    assert not answer_truth(Query(0, 1), S, s)
    assert answer_truth(Query(2, 1), F, Scenario.identity(3))


def test_lie_count_examples():
    zero_above = Scenario((1, 0))
    one_above = Scenario((0, 1))
    assert lie_count(tx(2, ((0, 1), F)), zero_above) == 0
    assert lie_count(tx(2, ((0, 1), F)), one_above) == 1
    assert lie_count(tx(2, ((0, 1), F), ((0, 1), F)), one_above) == 2


def test_target_of_examples():
    ident = Scenario.identity(3)
    assert target_of(ident, MAX) == 2
    assert target_of(ident, MAXMIN) == (2, 0)
    assert target_of(Scenario((1, 0)), MAXMIN) == (0, 1)


def test_consistent_scenarios_examples():
    assert consistent_scenarios(Transcript(2), 0, MAX) == {0, 1}
    assert consistent_scenarios(tx(2, ((0, 1), F)), 0, MAX) == {0}
    assert consistent_scenarios(tx(2, ((0, 1), F)), 1, MAX) == {0, 1}


def test_self_comparison_rejected():
    with pytest.raises(ValueError):
        Query(3, 3)


def test_out_of_range_entry_rejected():
    with pytest.raises(ValueError):
        Transcript(2).append(Query(0, 2), F)
    with pytest.raises(ValueError):
        tx(2, ((0, 5), F))


def test_scenario_must_be_permutation():
    with pytest.raises(ValueError):
        Scenario((0, 0, 1))


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        consistent_scenarios(Transcript(9), 0, MAX)
    # the cap is configuration, not a constant
    assert consistent_scenarios(Transcript(3), 0, MAX, cap=3) == {0, 1, 2}
    with pytest.raises(EnumerationCapError):
        consistent_scenarios(Transcript(4), 0, MAX, cap=3)


def test_from_order_roundtrip():
    s = Scenario.from_order([2, 0, 1])
    assert s.rank == (1, 0, 2)
    assert s.order() == [2, 0, 1]


def test_transcript_dumps():
    t = tx(3, ((0, 1), F), ((2, 1), S))
    assert t.dumps() == "0 1 0\n2 1 1\n"


transcripts = st.integers(2, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from([F, S]))
            .filter(lambda e: e[0] != e[1]),
            max_size=10,
        ),
        st.permutations(list(range(n))),
    )
)


def _build(data):
    n, raw, perm = data
    return Transcript(n, tuple((Query(a, b), ans) for a, b, ans in raw)), Scenario(tuple(perm))


@given(transcripts)
def test_lies_plus_truths_is_length(data):
    t, s = _build(data)
    truths = sum(answer_truth(q, a, s) for q, a in t)
    assert lie_count(t, s) + truths == len(t)


@given(transcripts, st.integers(0, 3), st.integers(0, 3), st.sampled_from([MAX, MAXMIN]))
def test_consistent_scenarios_monotone_in_budget(data, b1, b2, kind):
    t, _ = _build(data)
    lo, hi = sorted((b1, b2))
    assert consistent_scenarios(t, lo, kind) <= consistent_scenarios(t, hi, kind)


@given(transcripts, st.integers(0, 2), st.sampled_from([MAX, MAXMIN]))
def test_truthful_transcript_keeps_its_target(data, budget, kind):
    n, raw, perm = data
    s = Scenario(tuple(perm))
    t = Transcript(n)
    for a, b, _ in raw:
        q = Query(a, b)
        t = t.append(q, s.answer(q))
    assert lie_count(t, s) == 0
    assert target_of(s, kind) in consistent_scenarios(t, budget, kind)


@settings(max_examples=200)
@given(transcripts, st.integers(0, 2), st.sampled_from([MAX, MAXMIN]))
def test_vectorised_enumeration_matches_brute_force(data, budget, kind):
    t, _ = _build(data)
    assert consistent_scenarios(t, budget, kind) == oracles.brute_claims(t, budget, kind)


def test_lie_tracker_matches_lie_count():
    rng = random.Random(3)
    for _ in range(50):
        t = oracles.random_transcript(rng, 4, 12)
        tracker = LieTracker(4)
        for w, l in t.edges():
            tracker.record(w, l)
        expected = [lie_count(t, s) for s in all_scenarios(4)]
        assert tracker.lies.tolist() == expected


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_corollary_two_k_questions_never_suffice(k):
    """Every sequence of at most 2k queries on n=2, answered by the wrapped
    adversary, leaves both elements possible maxima."""
    for length in range(2 * k + 1):
        for orient in range(2 ** length):
            adv = claim1_wrap(ConsistentAdversary(2), k, MAX)
            t = Transcript(2)
            for i in range(length):
                q = Query(0, 1) if (orient >> i) & 1 else Query(1, 0)
                t = t.append(q, adv.answer(t, q))
            assert len(consistent_scenarios(t, k, MAX)) >= 2
