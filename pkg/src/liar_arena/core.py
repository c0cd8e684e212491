"""Shared vocabulary: queries, answers, scenarios, transcripts and lie accounting."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

# Largest ground set for which all n! scenarios are enumerated.
ENUMERATION_CAP = 8

Claim = Union[int, tuple[int, int]]


class EnumerationCapError(ValueError):
    """Raised when n! enumeration is requested above the configured cap."""


class GameKind(enum.Enum):
    MAX = "max"
    MAXMIN = "maxmin"

    @classmethod
    def parse(cls, text: str) -> "GameKind":
        return cls(text.lower())


class Answer(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class Query:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"cannot compare element {self.a} with itself")
        if self.a < 0 or self.b < 0:
            raise ValueError(f"negative element id in {self}")

    def winner(self, ans: Answer) -> int:
        return self.a if ans is Answer.FIRST else self.b

    def loser(self, ans: Answer) -> int:
        return self.b if ans is Answer.FIRST else self.a

    def answer_for(self, winner: int) -> Answer:
        """The answer that declares ``winner`` the bigger element."""
        if winner == self.a:
            return Answer.FIRST
        if winner == self.b:
            return Answer.SECOND
        raise ValueError(f"{winner} is not part of {self}")


@dataclass(frozen=True)
class Scenario:
    """A total order on ``n`` elements; ``rank[e]`` is higher for bigger ``e``."""

    rank: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.rank) != list(range(len(self.rank))):
            raise ValueError(f"rank {self.rank} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.rank)

    @classmethod
    def identity(cls, n: int) -> "Scenario":
        return cls(tuple(range(n)))

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "Scenario":
        """Build from a list of elements, biggest first."""
        order = list(order)
        n = len(order)
        rank = [0] * n
        for pos, e in enumerate(order):
            rank[e] = n - 1 - pos
        return cls(tuple(rank))

    def order(self) -> list[int]:
        """Elements from biggest to smallest."""
        return sorted(range(self.n), key=lambda e: -self.rank[e])

    def answer(self, q: Query) -> Answer:
        return Answer.FIRST if self.rank[q.a] > self.rank[q.b] else Answer.SECOND


Entry = tuple[Query, Answer]


@dataclass(frozen=True)
class Transcript:
    n: int
    entries: tuple[Entry, ...] = ()

    def __post_init__(self) -> None:
        for q, _ in self.entries:
            if q.a >= self.n or q.b >= self.n:
                raise ValueError(f"{q} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def append(self, q: Query, ans: Answer) -> "Transcript":
        if q.a >= self.n or q.b >= self.n:
            raise ValueError(f"{q} out of range for n={self.n}")
        # earlier entries are already validated
        out = object.__new__(Transcript)
        object.__setattr__(out, "n", self.n)
        object.__setattr__(out, "entries", self.entries + ((q, ans),))
        return out

    def prefix(self, t: int) -> "Transcript":
        return Transcript(self.n, self.entries[:t])

    def edges(self) -> list[tuple[int, int]]:
        """(winner, loser) per entry, in order."""
        return [(q.winner(ans), q.loser(ans)) for q, ans in self.entries]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Transcript":
        return cls(n, tuple((Query(w, l), Answer.FIRST) for w, l in edges))

    def dumps(self) -> str:
        """One line per entry: ``a b winner``."""
        return "".join(f"{q.a} {q.b} {q.winner(ans)}\n" for q, ans in self.entries)


def answer_truth(q: Query, ans: Answer, s: Scenario) -> bool:
    return s.rank[q.winner(ans)] > s.rank[q.loser(ans)]


def lie_count(t: Transcript, s: Scenario) -> int:
    if t.n != s.n:
        raise ValueError(f"transcript has n={t.n}, scenario has n={s.n}")
    return sum(1 for q, ans in t.entries if not answer_truth(q, ans, s))


def target_of(s: Scenario, kind: GameKind) -> Claim:
    top = max(range(s.n), key=s.rank.__getitem__)
    if kind is GameKind.MAX:
        return top
    return (top, min(range(s.n), key=s.rank.__getitem__))


def all_scenarios(n: int) -> list[Scenario]:
    """Every scenario on ``n`` elements, rank arrays in lexicographic order."""
    return [Scenario(p) for p in itertools.permutations(range(n))]


def _check_cap(n: int, cap: int | None) -> None:
    cap = ENUMERATION_CAP if cap is None else cap
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds enumeration cap {cap}")


def consistent_scenarios(
    t: Transcript, budget: int, kind: GameKind, cap: int | None = None
) -> set[Claim]:
    """Claims of every scenario that explains ``t`` with at most ``budget`` lies."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    _check_cap(t.n, cap)
    table = scenario_table(t.n)
    lies = table.lies(t)
    return table.claims(lies <= budget, kind)


class ScenarioTable:
    """Vectorised view of all n! scenarios of one ground set.

    Row ``i`` of ``rank`` is the i-th permutation in lexicographic order, so
    row order doubles as the lexicographic tie-break on rank arrays.
    """

    def __init__(self, n: int) -> None:
        self.n = n
        if n == 0:
            self.rank = np.zeros((1, 0), dtype=np.int8)
        else:
            self.rank = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
        self.size = self.rank.shape[0]
        self.top = self.rank.argmax(axis=1) if n else np.zeros(1, dtype=np.intp)
        self.bottom = self.rank.argmin(axis=1) if n else np.zeros(1, dtype=np.intp)
        # above[a, b] -> boolean vector: scenarios ranking a above b
        self.above = np.zeros((n, n, self.size), dtype=bool)
        for a in range(n):
            for b in range(n):
                if a != b:
                    self.above[a, b] = self.rank[:, a] > self.rank[:, b]

    def claim_codes(self, kind: GameKind) -> np.ndarray:
        """An integer code per scenario identifying its claim."""
        if kind is GameKind.MAX:
            return self.top
        return self.top * max(self.n, 1) + self.bottom

    def decode(self, code: int, kind: GameKind) -> Claim:
        if kind is GameKind.MAX:
            return int(code)
        return divmod(int(code), max(self.n, 1))

    def lies(self, t: Transcript) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int32)
        for w, l in t.edges():
            out += ~self.above[w, l]
        return out

    def claims(self, alive: np.ndarray, kind: GameKind) -> set[Claim]:
        codes = np.unique(self.claim_codes(kind)[alive])
        return {self.decode(c, kind) for c in codes}

    def scenario(self, i: int) -> Scenario:
        return Scenario(tuple(int(r) for r in self.rank[i]))


@lru_cache(maxsize=None)
def scenario_table(n: int) -> ScenarioTable:
    return ScenarioTable(n)


class LieTracker:
    """Incremental lie counts of a growing transcript against every scenario."""

    def __init__(self, n: int, cap: int | None = None) -> None:
        _check_cap(n, cap)
        self.table = scenario_table(n)
        self.lies = np.zeros(self.table.size, dtype=np.int32)

    def record(self, winner: int, loser: int) -> None:
        self.lies += ~self.table.above[winner, loser]

    def min_lies(self) -> int:
        return int(self.lies.min())

    def claims(self, budget: int, kind: GameKind) -> set[Claim]:
        return self.table.claims(self.lies <= budget, kind)
