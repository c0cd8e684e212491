"""Game loop: one solver against one adversary under a lie budget."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .adversaries import Adversary, AdversaryForfeit
from .core import (
    ENUMERATION_CAP,
    Claim,
    GameKind,
    LieTracker,
    Transcript,
    consistent_scenarios,
)
from .graph import (
    GraphBuilder,
    determined,
    from_transcript,
    is_consistent,
    min_lies,
    possible_claims,
)
from .solvers import Solver


def default_query_cap(n: int, k: int) -> int:
    return 10 * (k + 1) * n


def claims_within_budget(t: Transcript, k: int, kind: GameKind, cap: int | None = None) -> set[Claim]:
    """All claims compatible with ``t`` and at most ``k`` lies.

    Enumerates scenarios up to the cap; above it uses the degree criterion on
    consistent transcripts and the subset DP otherwise.
    """
    cap = ENUMERATION_CAP if cap is None else cap
    if t.n <= cap:
        return consistent_scenarios(t, k, kind, cap)
    g = from_transcript(t)
    if is_consistent(g):
        claim = determined(g, k, kind, check=False)
        if claim is not None:
            return {claim}
    return possible_claims(g, k, kind)


def verify_claim(t: Transcript, claim: Claim, k: int, kind: GameKind, cap: int | None = None) -> bool:
    if kind is GameKind.MAXMIN:
        claim = tuple(claim)
    return claims_within_budget(t, k, kind, cap) == {claim}


@dataclass
class GameResult:
    n: int
    k: int
    kind: GameKind
    solver: str
    adversary: str
    queries_used: int
    claim: Optional[Claim]
    verified: bool
    adversary_forfeit: bool = False
    transcript: Transcript = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "kind": self.kind.value,
            "solver": self.solver,
            "adversary": self.adversary,
            "queries": self.queries_used,
            "verified": self.verified,
            "forfeit": self.adversary_forfeit,
            "claim": list(self.claim) if isinstance(self.claim, tuple) else self.claim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "GameResult":
        claim = d.get("claim")
        if isinstance(claim, list):
            claim = tuple(claim)
        return cls(
            n=d["n"], k=d["k"], kind=GameKind(d["kind"]), solver=d["solver"],
            adversary=d["adversary"], queries_used=d["queries"], claim=claim,
            verified=d["verified"], adversary_forfeit=d["forfeit"],
            transcript=Transcript(d["n"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "GameResult":
        return cls.from_dict(json.loads(text))


class _Knowledge:
    """What the arena knows about the transcript so far, kept incrementally."""

    def __init__(self, n: int, k: int, kind: GameKind, cap: int | None) -> None:
        self.n, self.k, self.kind = n, k, kind
        cap = ENUMERATION_CAP if cap is None else cap
        self.tracker = LieTracker(n, cap) if n <= cap else None
        self.graph = GraphBuilder(n)

    def record(self, winner: int, loser: int) -> None:
        self.graph.add(winner, loser)
        if self.tracker is not None:
            self.tracker.record(winner, loser)

    def satisfiable(self) -> bool:
        if self.tracker is not None:
            return self.tracker.min_lies() <= self.k
        g = self.graph.freeze()
        return is_consistent(g) or min_lies(g) <= self.k

    def claims(self) -> set[Claim]:
        if self.tracker is not None:
            return self.tracker.claims(self.k, self.kind)
        g = self.graph.freeze()
        if is_consistent(g):
            claim = determined(g, self.k, self.kind, check=False)
            if claim is not None:
                return {claim}
        return possible_claims(g, self.k, self.kind)

    def determined(self) -> Optional[Claim]:
        claims = self.claims()
        return next(iter(claims)) if len(claims) == 1 else None


def run_game(
    solver: Solver,
    adversary: Adversary,
    n: int,
    k: int,
    kind: GameKind,
    query_cap: Optional[int] = None,
    cap: int | None = None,
) -> GameResult:
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    query_cap = default_query_cap(n, k) if query_cap is None else query_cap
    if query_cap < 1:
        raise ValueError("query_cap must be positive")
    know = _Knowledge(n, k, kind, cap)
    solver.start(n, k, kind, oracle=know.determined)
    t = Transcript(n)

    def result(claim=None, verified=False, forfeit=False) -> GameResult:
        return GameResult(n, k, kind, solver.name, adversary.name, len(t), claim,
                          verified, forfeit, t)

    last = None
    while True:
        decision = solver.step(last)
        if decision.is_claim:
            claims = know.claims()
            claim = decision.claim
            return result(claim, verified=claims == {claim})
        if len(t) >= query_cap:
            return result()
        q = decision.ask
        if q.a >= n or q.b >= n:
            raise ValueError(f"solver {solver.name} asked {q} outside n={n}")
        try:
            last = adversary.answer(t, q)
        except AdversaryForfeit:
            return result(forfeit=True)
        t = t.append(q, last)
        know.record(q.winner(last), q.loser(last))
        if not know.satisfiable():
            return result(forfeit=True)
