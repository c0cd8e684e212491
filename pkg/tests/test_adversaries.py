import itertools
import random

import pytest

from liar_arena.adversaries import (
    ConsistentAdversary,
    Membership,
    NoAlternativeError,
    TopBottomAdversary,
    TruthfulAdversary,
    claim1_wrap,
    consistent_answer,
    make_adversary,
    select_alternative,
)
from liar_arena.core import (
    Answer,
    GameKind,
    Query,
    Transcript,
    consistent_scenarios,
    lie_count,
    target_of,
)
from liar_arena.graph import from_transcript, is_consistent

import oracles

F, S = Answer.FIRST, Answer.SECOND
MAX, MAXMIN = GameKind.MAX, GameKind.MAXMIN


def drive(adv, n, queries):
    t = Transcript(n)
    for a, b in queries:
        q = Query(a, b)
        t = t.append(q, adv.answer(t, q))
    return t


def random_queries(rng, n, length):
    return [tuple(rng.sample(range(n), 2)) for _ in range(length)]


def test_consistent_answer_examples():
    adv = ConsistentAdversary(3)
    t = Transcript(3)
    assert adv.answer(t, Query(1, 2)) is F
    assert adv.answer(t, Query(2, 0)) is S
    assert adv.answer(t, Query(1, 2)) is adv.answer(t, Query(1, 2))
    assert consistent_answer([0, 1, 2], Query(2, 0)) is S


def test_custom_priority():
    adv = ConsistentAdversary(3, priority=[2, 0, 1])
    assert adv.answer(Transcript(3), Query(0, 2)) is S
    assert adv.implied_scenario().order() == [2, 0, 1]


def test_topbottom_fresh_pair_assigns_membership():
    adv = TopBottomAdversary(6)
    assert adv.answer(Transcript(6), Query(3, 5)) is F
    assert adv.membership[3] is Membership.TOP
    assert adv.membership[5] is Membership.BOTTOM
    assert (adv.n1, adv.n2) == (1, 1)


def test_topbottom_top_beats_bottom():
    adv = TopBottomAdversary(4)
    t = drive(adv, 4, [(0, 1), (2, 3)])
    # 0, 2 in TOP; 1, 3 in BOTTOM
    assert adv.answer(t, Query(0, 3)) is F
    assert adv.answer(t, Query(3, 0)) is S
    assert adv.answer(t, Query(1, 2)) is S


def test_topbottom_fresh_vs_top_joins_bottom():
    adv = TopBottomAdversary(3)
    t = drive(adv, 3, [(0, 1)])
    before = from_transcript(t).in_deg[0]
    q = Query(2, 0)
    ans = adv.answer(t, q)
    t = t.append(q, ans)
    assert ans is S
    assert adv.membership[2] is Membership.BOTTOM
    g = from_transcript(t)
    assert is_consistent(g)
    assert g.in_deg[0] == before


def test_topbottom_fresh_vs_bottom_joins_top():
    adv = TopBottomAdversary(3)
    t = drive(adv, 3, [(0, 1)])
    assert adv.answer(t, Query(1, 2)) is S
    assert adv.membership[2] is Membership.TOP
    assert adv.top_order == [0, 2]


def test_topbottom_orders_place_newcomers_inside():
    adv = TopBottomAdversary(6)
    drive(adv, 6, [(0, 1), (2, 3), (4, 5)])
    assert adv.top_order == [0, 2, 4]
    assert adv.bottom_order == [5, 3, 1]
    assert adv.implied_scenario().order() == [0, 2, 4, 5, 3, 1]


@pytest.mark.parametrize("name", ["truthful", "consistent", "topbottom"])
def test_base_strategies_stay_consistent(name):
    rng = random.Random(sum(map(ord, name)))
    for _ in range(200):
        n = rng.randint(2, 7)
        adv = make_adversary(name, n, 0, MAX)
        t = drive(adv, n, random_queries(rng, n, rng.randint(0, 30)))
        assert is_consistent(from_transcript(t))
        assert lie_count(t, adv.implied_scenario()) == 0


def test_topbottom_invariants_and_degree_discipline():
    rng = random.Random(21)
    for _ in range(300):
        n = rng.randint(2, 7)
        adv = TopBottomAdversary(n)
        t = Transcript(n)
        for a, b in random_queries(rng, n, rng.randint(0, 25)):
            q = Query(a, b)
            before = from_transcript(t)
            ma_before = list(adv.membership)
            ans = adv.answer(t, q)
            t = t.append(q, ans)
            after = from_transcript(t)
            T, B = Membership.TOP, Membership.BOTTOM
            both_top = ma_before[a] is T and ma_before[b] is T
            both_bottom = ma_before[a] is B and ma_before[b] is B
            for v in range(n):
                if adv.membership[v] is T and ma_before[v] is T and not both_top:
                    assert after.in_deg[v] == before.in_deg[v]
                if adv.membership[v] is B and ma_before[v] is B and not both_bottom:
                    assert after.out_deg[v] == before.out_deg[v]
        touched = sum(from_transcript(t).touched)
        assert adv.n1 + adv.n2 == touched
        assert set(adv.top_order) == {v for v in range(n) if adv.membership[v] is Membership.TOP}
        assert set(adv.bottom_order) == {v for v in range(n) if adv.membership[v] is Membership.BOTTOM}
        order = adv.implied_scenario().order()
        assert order[: adv.n1] == adv.top_order
        assert order[n - adv.n2:] == adv.bottom_order


def test_perfect_matching_prefix_scenario():
    """Even n, first n/2 queries form a perfect matching: every later TOP/BOTTOM
    comparison goes to TOP and the problem splits into two halves."""
    n = 6
    adv = TopBottomAdversary(n)
    t = drive(adv, n, [(1, 0), (3, 2), (5, 4)])
    assert set(adv.top_order) == {1, 3, 5}
    for top, bottom in itertools.product(adv.top_order, adv.bottom_order):
        assert adv.answer(t, Query(bottom, top)) is S


def test_select_alternative_examples():
    y = select_alternative(Transcript(2), 0, MAX, avoid=0)
    assert target_of(y, MAX) == 1
    t = Transcript.from_edges(2, [(0, 1)])
    y = select_alternative(t, 1, MAX, avoid=0)
    assert target_of(y, MAX) == 1 and lie_count(t, y) == 1
    star = Transcript.from_edges(3, [(0, 1), (0, 2)])
    y = select_alternative(star, 1, MAX, avoid=0)
    assert lie_count(star, y) == 1
    # both 1-on-top and 2-on-top exist at one lie; lexicographic tie-break picks (1, 0, 2)
    assert y.rank == (1, 0, 2)


def test_select_alternative_without_alternative():
    t = Transcript.from_edges(2, [(0, 1)])
    with pytest.raises(NoAlternativeError):
        select_alternative(t, 0, MAX, avoid=0)


def test_select_alternative_prefers_fewest_lies():
    rng = random.Random(4)
    for _ in range(200):
        n, k = rng.randint(2, 5), rng.randint(0, 2)
        t, s = oracles.random_consistent_transcript(rng, n, 8)
        for kind in (MAX, MAXMIN):
            avoid = target_of(s, kind)
            if len(consistent_scenarios(t, k, kind)) < 2:
                continue
            y = select_alternative(t, k, kind, avoid)
            assert target_of(y, kind) != avoid
            best = min(oracles.lies(t.edges(), r.rank) for r in oracles.scenarios(n)
                       if target_of(r, kind) != avoid)
            assert lie_count(t, y) == best <= k


def test_select_alternative_above_cap_uses_graph():
    rng = random.Random(9)
    for _ in range(100):
        n, k = rng.randint(3, 6), rng.randint(0, 2)
        t, s = oracles.random_consistent_transcript(rng, n, 10)
        for kind in (MAX, MAXMIN):
            avoid = target_of(s, kind)
            if len(consistent_scenarios(t, k, kind)) < 2:
                continue
            y = select_alternative(t, k, kind, avoid, cap=2)
            assert target_of(y, kind) != avoid
            assert lie_count(t, y) <= k


def test_wrapper_two_lies_example():
    adv = claim1_wrap(ConsistentAdversary(2), 1, MAX)
    t = Transcript(2)
    q = Query(0, 1)
    t = t.append(q, adv.answer(t, q))
    assert not adv.activated
    t = t.append(q, adv.answer(t, q))
    assert adv.activated
    assert [a for _, a in t] == [F, S]
    assert consistent_scenarios(t, 1, MAX) == {0, 1}
    t = t.append(q, adv.answer(t, q))
    assert consistent_scenarios(t, 1, MAX) == {1}
    assert len(t) == 3


def test_wrapper_with_k_zero_is_the_base():
    rng = random.Random(2)
    for name in ("consistent", "topbottom"):
        for _ in range(50):
            n = rng.randint(2, 6)
            qs = random_queries(rng, n, 20)
            plain = drive(make_adversary(name, n, 0, MAXMIN), n, qs)
            wrapped_adv = make_adversary(name, n, 0, MAXMIN, claim1=True)
            wrapped = drive(wrapped_adv, n, qs)
            assert plain == wrapped
            assert not wrapped_adv.activated


@pytest.mark.parametrize("base", ["consistent", "topbottom", "truthful"])
@pytest.mark.parametrize("kind", [MAX, MAXMIN])
def test_wrapper_keeps_both_claims_alive_for_k_answers(base, kind):
    rng = random.Random(31)
    for _ in range(60):
        n, k = rng.randint(2, 5), rng.randint(1, 2)
        adv = make_adversary(base, n, k, kind, claim1=True)
        t = Transcript(n)
        activated_at = None
        for step in range(60):
            a, b = rng.sample(range(n), 2)
            q = Query(a, b)
            t = t.append(q, adv.answer(t, q))
            # satisfiability is never lost
            assert oracles.brute_min_lies(t) <= k
            if adv.activated and activated_at is None:
                activated_at = step
                x, y = adv.x_scenario, adv.alt_scenario
                assert lie_count(t.prefix(len(t) - 1), y) <= k
                assert target_of(x, kind) != target_of(y, kind)
            if activated_at is not None:
                disagreements = sum(1 for q2, a2 in t.entries[activated_at:] if x.answer(q2) is not a2)
                assert adv.remaining_alt_answers == max(0, k - disagreements)
                if disagreements <= k:
                    claims = consistent_scenarios(t, k, kind)
                    assert {target_of(x, kind), target_of(y, kind)} <= claims


def test_truthful_default_is_identity():
    adv = TruthfulAdversary(3)
    assert adv.answer(Transcript(3), Query(0, 2)) is S
    assert adv.answer(Transcript(3), Query(2, 1)) is F


def test_make_adversary_rejects_unknown():
    with pytest.raises(ValueError):
        make_adversary("oracle", 3, 0, MAX)


def test_wrapper_name():
    assert make_adversary("topbottom+claim1", 3, 1, MAXMIN).name == "topbottom+claim1"
    assert make_adversary("consistent", 3, 1, MAX, claim1=True).name == "consistent+claim1"
