"""Answer strategies: fixed-order, TOP/BOTTOM, and the k-more-questions wrapper."""

from __future__ import annotations

import enum
from typing import Optional

import numpy as np

from .core import (
    ENUMERATION_CAP,
    Answer,
    Claim,
    GameKind,
    Query,
    Scenario,
    Transcript,
    scenario_table,
    target_of,
)
from .graph import GraphBuilder, determined, from_transcript, is_consistent


class AdversaryForfeit(RuntimeError):
    """The adversary cannot keep any scenario within the lie budget."""


class NoAlternativeError(AdversaryForfeit):
    """No scenario with a different claim survives the budget."""


class Adversary:
    name = "adversary"

    def answer(self, t: Transcript, q: Query) -> Answer:
        raise NotImplementedError


class FixedOrderAdversary(Adversary):
    """Answers every query truthfully with respect to one committed scenario."""

    def __init__(self, scenario: Scenario) -> None:
        self.scenario = scenario
        self.n = scenario.n

    def peek(self, q: Query) -> Answer:
        return self.scenario.answer(q)

    def answer(self, t: Transcript, q: Query) -> Answer:
        return self.scenario.answer(q)

    def implied_scenario(self) -> Scenario:
        return self.scenario


class TruthfulAdversary(FixedOrderAdversary):
    name = "truthful"

    def __init__(self, n: int, scenario: Optional[Scenario] = None) -> None:
        super().__init__(scenario or Scenario.identity(n))


class ConsistentAdversary(FixedOrderAdversary):
    """Fixed priority order, biggest first (default 0 > 1 > ... > n-1)."""

    name = "consistent"

    def __init__(self, n: int, priority: Optional[list[int]] = None) -> None:
        self.priority = list(range(n)) if priority is None else list(priority)
        super().__init__(Scenario.from_order(self.priority))


def consistent_answer(priority: list[int], q: Query) -> Answer:
    pos = {e: i for i, e in enumerate(priority)}
    return Answer.FIRST if pos[q.a] < pos[q.b] else Answer.SECOND


class Membership(enum.Enum):
    UNASSIGNED = 0
    TOP = 1
    BOTTOM = 2


class TopBottomAdversary(Adversary):
    """Every element joins TOP or BOTTOM on its first comparison; TOP always wins.

    ``top_order`` and ``bottom_order`` list members biggest first. Newcomers
    enter TOP at its bottom and BOTTOM at its top, so earlier answers stay
    true under the implied global order TOP > unassigned > BOTTOM.
    """

    name = "topbottom"

    def __init__(self, n: int) -> None:
        self.n = n
        self.membership = [Membership.UNASSIGNED] * n
        self.top_order: list[int] = []
        self.bottom_order: list[int] = []

    @property
    def n1(self) -> int:
        return len(self.top_order)

    @property
    def n2(self) -> int:
        return len(self.bottom_order)

    def _decide(self, q: Query) -> tuple[int, list[tuple[int, Membership]]]:
        """Winner of ``q`` and the membership assignments it triggers."""
        a, b = q.a, q.b
        ma, mb = self.membership[a], self.membership[b]
        U, T, B = Membership.UNASSIGNED, Membership.TOP, Membership.BOTTOM
        if ma is U and mb is U:
            return a, [(a, T), (b, B)]
        if ma is U:
            return (b, [(a, B)]) if mb is T else (a, [(a, T)])
        if mb is U:
            return (a, [(b, B)]) if ma is T else (b, [(b, T)])
        if ma is not mb:
            return (a if ma is T else b), []
        order = self.top_order if ma is T else self.bottom_order
        return (a if order.index(a) < order.index(b) else b), []

    def peek(self, q: Query) -> Answer:
        winner, _ = self._decide(q)
        return q.answer_for(winner)

    def answer(self, t: Transcript, q: Query) -> Answer:
        winner, joins = self._decide(q)
        for e, m in joins:
            self.membership[e] = m
            if m is Membership.TOP:
                self.top_order.append(e)
            else:
                self.bottom_order.insert(0, e)
        return q.answer_for(winner)

    def implied_scenario(self) -> Scenario:
        fresh = [e for e in range(self.n) if self.membership[e] is Membership.UNASSIGNED]
        return Scenario.from_order(self.top_order + fresh + self.bottom_order)


def _topological(n: int, edges, members: list[int]) -> list[int]:
    """Kahn's algorithm restricted to ``members``, smallest index first."""
    inside = set(members)
    indeg = {v: 0 for v in members}
    succ: dict[int, list[int]] = {v: [] for v in members}
    for w, l in edges:
        if w in inside and l in inside:
            succ[w].append(l)
            indeg[l] += 1
    ready = sorted(v for v in members if indeg[v] == 0)
    out = []
    while ready:
        v = ready.pop(0)
        out.append(v)
        for l in succ[v]:
            indeg[l] -= 1
            if indeg[l] == 0:
                ready.append(l)
        ready.sort()
    if len(out) != len(members):
        raise ValueError("graph restricted to members has a cycle")
    return out


def select_alternative(
    t: Transcript, k: int, kind: GameKind, avoid: Claim, cap: int | None = None
) -> Scenario:
    """A scenario within ``k`` lies of ``t`` whose claim differs from ``avoid``.

    Ties go to the fewest lies, then the lexicographically smallest rank array.
    Above the enumeration cap the transcript must be consistent and the
    scenario is built directly from the comparison graph.
    """
    cap = ENUMERATION_CAP if cap is None else cap
    if t.n <= cap:
        table = scenario_table(t.n)
        lies = table.lies(t)
        codes = table.claim_codes(kind)
        avoid_code = avoid if kind is GameKind.MAX else avoid[0] * t.n + avoid[1]
        ok = (lies <= k) & (codes != avoid_code)
        if not ok.any():
            raise NoAlternativeError(f"no alternative to {avoid} within {k} lies")
        idx = np.flatnonzero(ok)
        best = idx[np.argmin(lies[idx])]  # argmin returns the first, i.e. lex-smallest
        return table.scenario(int(best))

    g = from_transcript(t)
    if not is_consistent(g):
        raise ValueError("above the enumeration cap only consistent transcripts are supported")
    edges = list(g.edge_mult)
    options: list[tuple[int, list[int]]] = []
    top_avoid = avoid if kind is GameKind.MAX else avoid[0]
    for v in range(t.n):
        if v != top_avoid and g.in_deg[v] <= k:
            rest = [u for u in range(t.n) if u != v]
            options.append((g.in_deg[v], [v] + _topological(t.n, edges, rest)))
    if kind is GameKind.MAXMIN:
        for w in range(t.n):
            if w != avoid[1] and g.out_deg[w] <= k:
                rest = [u for u in range(t.n) if u != w]
                options.append((g.out_deg[w], _topological(t.n, edges, rest) + [w]))
    options = [(lies, order) for lies, order in options if target_of(Scenario.from_order(order), kind) != avoid]
    if not options:
        raise NoAlternativeError(f"no alternative to {avoid} within {k} lies")
    _, order = min(options, key=lambda o: (o[0], Scenario.from_order(o[1]).rank))
    return Scenario.from_order(order)


class Claim1Wrapper(Adversary):
    """Delegates to a consistent base until its next answer would settle the game.

    At that point it commits to an alternative scenario ``y`` that still fits the
    transcript within ``k`` lies but has a different claim, and answers by ``y``
    from then on. The solver then needs at least ``k + 1`` more queries.
    """

    def __init__(self, base: FixedOrderAdversary | TopBottomAdversary, k: int,
                 kind: GameKind, cap: int | None = None) -> None:
        if k < 0:
            raise ValueError("k must be non-negative")
        self.base = base
        self.k = k
        self.kind = kind
        self.cap = cap
        self.name = f"{base.name}+claim1"
        self.activated = False
        self.x_scenario: Optional[Scenario] = None
        self.alt_scenario: Optional[Scenario] = None
        self.remaining_alt_answers = 0
        self._graph = GraphBuilder(base.n)

    def _would_determine(self, q: Query, ans: Answer) -> bool:
        w, l = q.winner(ans), q.loser(ans)
        self._graph.add(w, l)
        try:
            return determined(self._graph.freeze(), self.k, self.kind, check=False) is not None
        finally:
            # undo the probe edge
            self._graph.edge_mult[(w, l)] -= 1
            if not self._graph.edge_mult[(w, l)]:
                del self._graph.edge_mult[(w, l)]
            self._graph.out_deg[w] -= 1
            self._graph.in_deg[l] -= 1

    def answer(self, t: Transcript, q: Query) -> Answer:
        if not self.activated and self.k > 0 and self._would_determine(q, self.base.peek(q)):
            self._activate(t)
        if self.activated:
            ans = self.alt_scenario.answer(q)
            if ans is not self.x_scenario.answer(q) and self.remaining_alt_answers > 0:
                self.remaining_alt_answers -= 1
            return ans
        ans = self.base.answer(t, q)
        self._graph.add(q.winner(ans), q.loser(ans))
        return ans

    def _activate(self, t: Transcript) -> None:
        x = self.base.implied_scenario()
        y = select_alternative(t, self.k, self.kind, target_of(x, self.kind), self.cap)
        self.x_scenario = x
        self.alt_scenario = y
        self.remaining_alt_answers = self.k
        self.activated = True


def claim1_wrap(base, k: int, kind: GameKind, cap: int | None = None) -> Claim1Wrapper:
    return Claim1Wrapper(base, k, kind, cap)


ADVERSARIES = ("truthful", "consistent", "topbottom")


def make_adversary(name: str, n: int, k: int, kind: GameKind, claim1: bool = False) -> Adversary:
    """Build an adversary by name; a ``+claim1`` suffix also enables the wrapper."""
    if name.endswith("+claim1"):
        name, claim1 = name[: -len("+claim1")], True
    if name == "truthful":
        base = TruthfulAdversary(n)
    elif name == "consistent":
        base = ConsistentAdversary(n)
    elif name == "topbottom":
        base = TopBottomAdversary(n)
    else:
        raise ValueError(f"unknown adversary {name!r}; choose from {ADVERSARIES}")
    return claim1_wrap(base, k, kind) if claim1 else base
