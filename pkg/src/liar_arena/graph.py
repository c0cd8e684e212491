"""Comparison multigraph: winner -> loser edges with multiplicity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import Claim, GameKind, Transcript


class InconsistentGraphError(ValueError):
    """Degree criteria are only valid on acyclic graphs."""


@dataclass(frozen=True)
class ComparisonGraph:
    n: int
    edge_mult: dict[tuple[int, int], int] = field(default_factory=dict)
    in_deg: tuple[int, ...] = ()
    out_deg: tuple[int, ...] = ()

    @property
    def touched(self) -> tuple[bool, ...]:
        return tuple(i + o > 0 for i, o in zip(self.in_deg, self.out_deg))

    @property
    def size(self) -> int:
        """Total multiplicity, i.e. the number of answers summarised."""
        return sum(self.edge_mult.values())

    def successors(self, v: int) -> list[int]:
        return [l for (w, l) in self.edge_mult if w == v]

    def dumps(self) -> str:
        """Plain-text edge list, one ``winner>loser xMult`` per line."""
        return "".join(f"{w}>{l} x{m}\n" for (w, l), m in sorted(self.edge_mult.items()))

    @classmethod
    def loads(cls, n: int, text: str) -> "ComparisonGraph":
        b = GraphBuilder(n)
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            pair, mult = line.split()
            w, l = pair.split(">")
            for _ in range(int(mult.lstrip("x"))):
                b.add(int(w), int(l))
        return b.freeze()


class GraphBuilder:
    """Single-owner incremental builder; ``freeze`` yields an immutable graph."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.edge_mult: dict[tuple[int, int], int] = {}
        self.in_deg = [0] * n
        self.out_deg = [0] * n

    def add(self, winner: int, loser: int) -> None:
        if winner == loser:
            raise ValueError("self-loop")
        key = (winner, loser)
        self.edge_mult[key] = self.edge_mult.get(key, 0) + 1
        self.out_deg[winner] += 1
        self.in_deg[loser] += 1

    def freeze(self) -> ComparisonGraph:
        return ComparisonGraph(
            self.n, dict(self.edge_mult), tuple(self.in_deg), tuple(self.out_deg)
        )


def from_transcript(t: Transcript) -> ComparisonGraph:
    b = GraphBuilder(t.n)
    for w, l in t.edges():
        b.add(w, l)
    return b.freeze()


def is_consistent(g: ComparisonGraph) -> bool:
    """True iff the graph has no directed cycle."""
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for w, l in g.edge_mult:
        adj[w].append(l)
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * g.n
    for root in range(g.n):
        if color[root] != WHITE:
            continue
        color[root] = GREY
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = BLACK
                stack.pop()
            elif color[nxt] == GREY:
                return False
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(adj[nxt])))
    return True


def _require_consistent(g: ComparisonGraph) -> None:
    if not is_consistent(g):
        raise InconsistentGraphError("graph has a directed cycle; enumerate scenarios instead")


def max_candidates(g: ComparisonGraph, k: int, check: bool = True) -> set[int]:
    if check:
        _require_consistent(g)
    return {v for v in range(g.n) if g.in_deg[v] <= k}


def min_candidates(g: ComparisonGraph, k: int, check: bool = True) -> set[int]:
    if check:
        _require_consistent(g)
    return {v for v in range(g.n) if g.out_deg[v] <= k}


def determined(
    g: ComparisonGraph, k: int, kind: GameKind, check: bool = True
) -> Optional[Claim]:
    """The unique claim left by a consistent graph, or None."""
    tops = max_candidates(g, k, check)
    if len(tops) != 1:
        return None
    (top,) = tops
    if kind is GameKind.MAX:
        return top
    bottoms = min_candidates(g, k, check=False)
    if len(bottoms) != 1:
        return None
    return (top, next(iter(bottoms)))


# Exact lie minimisation for graphs too large to enumerate scenario by scenario.
# An ordering's lies are the multiplicities of edges pointing upward; the minimum
# over orderings is found by a DP over subsets (minimum weighted feedback arc set).

def _min_lies_subset(n: int, edge_mult: dict[tuple[int, int], int], members: list[int]) -> int:
    idx = {v: i for i, v in enumerate(members)}
    m = len(members)
    # into[i] = list of (bit of u, mult) for edges u -> members[i] inside the subset
    into: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for (w, l), mult in edge_mult.items():
        if w in idx and l in idx:
            into[idx[l]].append((1 << idx[w], mult))
    best = [0] * (1 << m)
    for mask in range(1, 1 << m):
        lowest = None
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            i = bit.bit_length() - 1
            # members[i] placed above all others in mask: every edge into it
            # from inside mask is a lie
            cost = best[mask ^ bit] + sum(mu for b, mu in into[i] if b & mask)
            if lowest is None or cost < lowest:
                lowest = cost
        best[mask] = lowest
    return best[(1 << m) - 1]


def min_lies(g: ComparisonGraph) -> int:
    """Fewest lies any scenario needs to explain the graph."""
    return _min_lies_subset(g.n, g.edge_mult, list(range(g.n)))


def min_lies_for_claim(g: ComparisonGraph, claim: Claim, kind: GameKind) -> int:
    """Fewest lies of a scenario whose max (and min) matches ``claim``."""
    if kind is GameKind.MAX:
        top = claim
        rest = [v for v in range(g.n) if v != top]
        return g.in_deg[top] + _min_lies_subset(g.n, g.edge_mult, rest)
    top, bottom = claim
    if g.n == 1:
        return 0 if top == bottom == 0 else _IMPOSSIBLE
    if top == bottom:
        return _IMPOSSIBLE
    rest = [v for v in range(g.n) if v not in (top, bottom)]
    both = g.edge_mult.get((bottom, top), 0)
    return (
        g.in_deg[top] + g.out_deg[bottom] - both
        + _min_lies_subset(g.n, g.edge_mult, rest)
    )


_IMPOSSIBLE = 1 << 30


def possible_claims(g: ComparisonGraph, k: int, kind: GameKind) -> set[Claim]:
    """Claims reachable with at most ``k`` lies, by subset DP (no n! enumeration)."""
    if kind is GameKind.MAX:
        cands = range(g.n)
    else:
        cands = [(a, b) for a in range(g.n) for b in range(g.n) if a != b or g.n == 1]
    return {c for c in cands if min_lies_for_claim(g, c, kind) <= k}
