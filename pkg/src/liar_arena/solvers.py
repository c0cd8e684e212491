"""Query-asking strategies.

Each solver is written as a generator that yields queries, receives answers
and finally returns its claim; ``Solver.step`` adapts that to the arena's
ask/answer loop.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Generator, Optional

from .core import Answer, Claim, GameKind, Query

Oracle = Callable[[], Optional[Claim]]
Strategy = Generator[Query, Answer, Claim]


@dataclass(frozen=True)
class SolverDecision:
    ask: Optional[Query] = None
    claim: Optional[Claim] = None

    def __post_init__(self) -> None:
        if (self.ask is None) == (self.claim is None):
            raise ValueError("exactly one of ask/claim must be set")

    @property
    def is_claim(self) -> bool:
        return self.claim is not None


def pairing(a: int, b: int, k: int) -> Generator[Query, Answer, tuple[int, int]]:
    """Re-ask (a, b) until one side has been declared bigger k+1 times.

    Returns (winner, loser). At most 2k+1 queries; the winner is truly bigger
    whenever the whole game holds at most k lies.
    """
    wins = {a: 0, b: 0}
    q = Query(a, b)
    while True:
        ans = yield q
        w = q.winner(ans)
        wins[w] += 1
        if wins[w] == k + 1:
            return w, q.loser(ans)


def tournament(elements: list[int], k: int, want_max: bool = True) -> Generator[Query, Answer, int]:
    """Single-elimination ladder over ``elements`` in the given order."""
    champion = elements[0]
    for challenger in elements[1:]:
        w, l = yield from pairing(champion, challenger, k)
        champion = w if want_max else l
    return champion


def tournament_max(n: int, k: int) -> Strategy:
    return (yield from tournament(list(range(n)), k, want_max=True))


def tournament_min(n: int, k: int) -> Strategy:
    return (yield from tournament(list(range(n)), k, want_max=False))


def naive_maxmin(n: int, k: int) -> Strategy:
    top = yield from tournament(list(range(n)), k, want_max=True)
    rest = [e for e in range(n) if e != top]
    if not rest:
        return (top, top)
    bottom = yield from tournament(rest, k, want_max=False)
    return (top, bottom)


def pair_and_conquer(n: int, k: int) -> Strategy:
    """Pair up, settle each pair by (k+1)-majority, then max over winners and
    min over losers. An odd element out joins both pools."""
    winners: list[int] = []
    losers: list[int] = []
    for a in range(0, n - 1, 2):
        w, l = yield from pairing(a, a + 1, k)
        winners.append(w)
        losers.append(l)
    if n % 2:
        winners.append(n - 1)
        losers.append(n - 1)
    top = yield from tournament(winners, k, want_max=True)
    bottom = yield from tournament(losers, k, want_max=False)
    return (top, bottom)


class Solver:
    name = "solver"
    kinds: tuple[GameKind, ...] = (GameKind.MAX, GameKind.MAXMIN)

    def start(self, n: int, k: int, kind: GameKind, oracle: Optional[Oracle] = None) -> None:
        raise NotImplementedError

    def step(self, last_answer: Optional[Answer]) -> SolverDecision:
        raise NotImplementedError


class StrategySolver(Solver):
    """Drives one of the generator strategies above."""

    def __init__(self, name: str, factory: Callable[[int, int], Strategy],
                 kinds: tuple[GameKind, ...]) -> None:
        self.name = name
        self.factory = factory
        self.kinds = kinds
        self._gen: Optional[Strategy] = None

    def start(self, n, k, kind, oracle=None):
        if kind not in self.kinds:
            raise ValueError(f"{self.name} does not play {kind.value}")
        self._gen = self.factory(n, k)
        self._started = False

    def step(self, last_answer):
        try:
            if not self._started:
                self._started = True
                q = next(self._gen)
            else:
                q = self._gen.send(last_answer)
        except StopIteration as stop:
            return SolverDecision(claim=stop.value)
        return SolverDecision(ask=q)


class RandomSolver(Solver):
    """Uniformly random queries; claims as soon as the arena's oracle says the
    game is determined."""

    name = "random"

    def __init__(self, seed: int = 0) -> None:
        self.seed = seed

    def start(self, n, k, kind, oracle=None):
        if oracle is None:
            raise ValueError("random solver needs a determinedness oracle")
        self.n = n
        self.oracle = oracle
        self.rng = random.Random(self.seed)

    def step(self, last_answer):
        claim = self.oracle()
        if claim is not None:
            return SolverDecision(claim=claim)
        a, b = self.rng.sample(range(self.n), 2)
        return SolverDecision(ask=Query(a, b))


SOLVERS = ("tournament-max", "naive-maxmin", "pair-and-conquer", "random")


def make_solver(name: str, seed: int = 0) -> Solver:
    if name == "tournament-max":
        return StrategySolver(name, tournament_max, (GameKind.MAX,))
    if name == "naive-maxmin":
        return StrategySolver(name, naive_maxmin, (GameKind.MAXMIN,))
    if name == "pair-and-conquer":
        return StrategySolver(name, pair_and_conquer, (GameKind.MAXMIN,))
    if name == "random":
        return RandomSolver(seed)
    raise ValueError(f"unknown solver {name!r}; choose from {SOLVERS}")


def solvers_for(kind: GameKind) -> list[str]:
    """Registered deterministic solvers that play ``kind``."""
    return [s for s in SOLVERS if s != "random" and kind in make_solver(s).kinds]
