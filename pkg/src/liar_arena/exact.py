"""Exact worst-case query counts for tiny games by memoised minimax.

A position is the vector of lie counts of the transcript so far against every
one of the n! scenarios, with counts above ``k`` collapsed to ``k + 1`` (dead).
The solver picks a comparison, the adversary picks any answer that leaves a
scenario alive, and the game ends once all live scenarios agree on the claim.
Positions are memoised up to relabelling of the elements.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Answer, GameKind, Query, scenario_table

log = logging.getLogger(__name__)

MAX_N = 5
MAX_K = 3


class GuardError(ValueError):
    """Instance is outside the exhaustive solver's size guard."""


class DepthCapExceeded(RuntimeError):
    pass


def check_guard(n: int, k: int) -> None:
    if n < 1 or k < 0:
        raise GuardError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if n > MAX_N or k > MAX_K or (n == MAX_N and k > 1):
        raise GuardError(f"(n={n}, k={k}) outside guard: n <= 4 with k <= 3, or n = 5 with k <= 1")


@dataclass(frozen=True)
class GameValueState:
    """Lie counts per scenario (lexicographic rank order); ``k + 1`` marks dead."""

    n: int
    k: int
    kind: GameKind
    lie_vec: tuple[int, ...]

    @classmethod
    def initial(cls, n: int, k: int, kind: GameKind) -> "GameValueState":
        return cls(n, k, kind, (0,) * scenario_table(n).size)

    @property
    def dead(self) -> int:
        return self.k + 1

    @property
    def alive_count(self) -> int:
        return sum(1 for v in self.lie_vec if v <= self.k)

    def claims(self) -> set:
        table = scenario_table(self.n)
        alive = np.array(self.lie_vec) <= self.k
        return table.claims(alive, self.kind)


def step(state: GameValueState, q: Query, ans: Answer) -> GameValueState:
    """Apply one answer; raises if it leaves no scenario alive."""
    table = scenario_table(state.n)
    w, l = q.winner(ans), q.loser(ans)
    vec = np.minimum(np.array(state.lie_vec) + ~table.above[w, l], state.dead)
    if not (vec <= state.k).any():
        raise ValueError(f"answer {ans.value} to {q} kills every scenario")
    return GameValueState(state.n, state.k, state.kind, tuple(int(v) for v in vec))


@lru_cache(maxsize=None)
def _relabelings(n: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Scenario index maps for every relabelling of the elements.

    Row ``p`` satisfies ``relabelled[j] = vec[P[p, j]]`` where element ``e`` is
    renamed ``perms[p][e]``.
    """
    table = scenario_table(n)
    index = {tuple(int(x) for x in r): i for i, r in enumerate(table.rank)}
    perms = list(itertools.permutations(range(n)))
    P = np.empty((len(perms), table.size), dtype=np.intp)
    for p, pi in enumerate(perms):
        for j, r_new in enumerate(table.rank):
            P[p, j] = index[tuple(int(r_new[pi[e]]) for e in range(n))]
    return P, perms


def _canonical_bytes(vec: np.ndarray, P: np.ndarray) -> bytes:
    S = vec.shape[0]
    raw = vec[P].tobytes()
    return min(raw[i : i + S] for i in range(0, len(raw), S))


def canonicalize(state: GameValueState) -> bytes:
    """Relabelling-invariant key: the lexicographically least permuted lie vector."""
    P, _ = _relabelings(state.n)
    return _canonical_bytes(np.array(state.lie_vec, dtype=np.uint8), P)


class ExactSolver:
    """Memoised minimax for one (n, k, kind).

    ``canonical=False`` keys the memo on raw vectors and branches on every
    pair; it exists to cross-check the symmetry reductions.
    """

    def __init__(self, n: int, k: int, kind: GameKind, canonical: bool = True,
                 guard: bool = True) -> None:
        if guard:
            check_guard(n, k)
        self.n, self.k, self.kind = n, k, kind
        self.canonical = canonical
        table = scenario_table(n)
        self.codes = table.claim_codes(kind)
        self.pairs = list(itertools.combinations(range(n), 2))
        # lie increments for "a wins" and "b wins" on pair (a, b)
        self.incs = {
            (a, b): ((~table.above[a, b]).astype(np.uint8), (~table.above[b, a]).astype(np.uint8))
            for a, b in self.pairs
        }
        self.P, self.perms = _relabelings(n)
        self.depth_cap = 4 * (k + 1) * n
        self.memo: dict[bytes, int] = {}
        self._canon_cache: dict[bytes, bytes] = {}

    def key(self, vec: np.ndarray) -> bytes:
        raw = vec.tobytes()
        if not self.canonical:
            return raw
        hit = self._canon_cache.get(raw)
        if hit is None:
            hit = _canonical_bytes(vec, self.P)
            self._canon_cache[raw] = hit
        return hit

    def _query_orbit_reps(self, vec: np.ndarray) -> list[tuple[int, int]]:
        if not self.canonical:
            return self.pairs
        autos = np.flatnonzero((vec[self.P] == vec).all(axis=1))
        seen: set[tuple[int, int]] = set()
        reps = []
        for a, b in self.pairs:
            if (a, b) in seen:
                continue
            reps.append((a, b))
            for p in autos:
                pi = self.perms[p]
                x, y = pi[a], pi[b]
                seen.add((min(x, y), max(x, y)))
        return reps

    def value(self) -> int:
        start = np.zeros(len(self.codes), dtype=np.uint8)
        return self._value(self.key(start), 0)

    def _value(self, key: bytes, depth: int) -> int:
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if depth > self.depth_cap:
            raise DepthCapExceeded(f"depth {depth} > {self.depth_cap} for n={self.n}, k={self.k}")
        k, dead = self.k, self.k + 1
        vec = np.frombuffer(key, dtype=np.uint8)
        alive_codes = self.codes[vec <= k]
        if (alive_codes == alive_codes[0]).all():
            self.memo[key] = 0
            return 0
        best = None
        for pair in self._query_orbit_reps(vec):
            worst = -1
            for inc in self.incs[pair]:
                new = np.minimum(vec + inc, dead)
                if not (new <= k).any():
                    continue  # illegal answer: no scenario survives
                if np.array_equal(new, vec):
                    # adversary can repeat this answer for free; query is dominated
                    worst = None
                    break
                worst = max(worst, self._value(self.key(new), depth + 1))
            if worst is None:
                continue
            if best is None or worst + 1 < best:
                best = worst + 1
        self.memo[key] = best
        return best


def game_value(n: int, k: int, kind: GameKind, canonical: bool = True) -> int:
    """Minimax number of comparisons to determine the claim with at most k lies."""
    solver = ExactSolver(n, k, kind, canonical=canonical)
    value = solver.value()
    log.debug("game_value(%d, %d, %s) = %d over %d positions", n, k, kind.value, value,
              len(solver.memo))
    return value
