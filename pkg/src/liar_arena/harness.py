"""Grid sweeps and bound verification shared by the CLI and the acceptance tests."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from . import bounds
from .adversaries import ADVERSARIES, make_adversary
from .arena import GameResult, default_query_cap, run_game
from .core import GameKind
from .exact import GuardError, check_guard, game_value
from .solvers import SOLVERS, make_solver, solvers_for

SWEEP_FIELDS = ["n", "k", "solver", "adversary", "kind", "queries", "verified"]
THREADS_ENV = "LIAR_ARENA_THREADS"
RANDOM_CAP_FACTOR = 4


def worker_count() -> int:
    cpus = os.cpu_count() or 1
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, min(int(env), cpus))
    return cpus


def _pool_map(fn, tasks: list, workers: int | None = None) -> list:
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def adversary_names() -> list[str]:
    return [a for a in ADVERSARIES] + [f"{a}+claim1" for a in ADVERSARIES]


def play(solver: str, adversary: str, n: int, k: int, kind: GameKind, seed: int = 0,
         query_cap: int | None = None) -> GameResult:
    return run_game(make_solver(solver, seed), make_adversary(adversary, n, k, kind),
                    n, k, kind, query_cap)


@dataclass
class SweepConfig:
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    solvers: list[str]
    adversaries: list[str]
    kind: GameKind
    seed: int = 0
    output: str | None = None
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.n_range[0] > self.n_range[1] or self.k_range[0] > self.k_range[1]:
            raise ValueError("empty n or k range")
        if self.n_range[0] < 1 or self.k_range[0] < 0:
            raise ValueError("need n >= 1 and k >= 0")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        for s in self.solvers:
            if s not in SOLVERS:
                raise ValueError(f"unknown solver {s!r}")
            if s != "random" and self.kind not in make_solver(s).kinds:
                raise ValueError(f"solver {s} does not play {self.kind.value}")
        for a in self.adversaries:
            if a not in adversary_names():
                raise ValueError(f"unknown adversary {a!r}")

    def points(self) -> list[tuple]:
        return [
            (n, k, s, a, self.kind, self.seed)
            for n in range(self.n_range[0], self.n_range[1] + 1)
            for k in range(self.k_range[0], self.k_range[1] + 1)
            for s in self.solvers
            for a in self.adversaries
        ]


def _sweep_point(task: tuple) -> dict:
    n, k, solver, adversary, kind, seed = task
    r = play(solver, adversary, n, k, kind, seed)
    return {"n": n, "k": k, "solver": solver, "adversary": adversary, "kind": kind.value,
            "queries": r.queries_used, "verified": r.verified}


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> list[dict]:
    rows = _pool_map(_sweep_point, cfg.points(), workers)
    return sorted(rows, key=lambda r: (r["n"], r["k"], r["solver"], r["adversary"]))


def format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "verified": str(r["verified"]).lower()})
    return buf.getvalue()


@dataclass
class Violation:
    n: int
    k: int
    bound: str
    expected: str
    observed: int
    detail: str = ""

    def __str__(self) -> str:
        return (f"n={self.n} k={self.k} bound={self.bound} expected {self.expected} "
                f"observed={self.observed} {self.detail}").rstrip()


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)
    games: int = 0
    cap_exhausted: int = 0
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Report") -> None:
        self.violations += other.violations
        self.games += other.games
        self.cap_exhausted += other.cap_exhausted
        self.checks += other.checks


# exact mode

def _exact_point(task: tuple) -> tuple[int, int, GameKind, int]:
    n, k, kind = task
    return n, k, kind, game_value(n, k, kind)


def exact_table(points: Iterable[tuple[int, int, GameKind]], workers: int | None = None):
    return _pool_map(_exact_point, list(points), workers)


def in_guard(n: int, k: int) -> bool:
    try:
        check_guard(n, k)
    except GuardError:
        return False
    return True


def verify_exact(kind: GameKind, n_values: Iterable[int], k_values: Iterable[int],
                 workers: int | None = None) -> Report:
    """Compare exact game values with the closed forms.

    Max: value == (k+1)n - 1. MaxMin: value == ceil(3n/2) - 2 at k = 0 and
    value >= ceil((k+1.5)(n-1) - 0.5) otherwise.
    """
    points = [(n, k, kind) for n in n_values for k in k_values if n >= 2 and in_guard(n, k)]
    report = Report()
    for n, k, _, value in exact_table(points, workers):
        report.checks += 1
        if kind is GameKind.MAX:
            want = bounds.rgl_max(n, k)
            if value != want:
                report.violations.append(Violation(n, k, "rgl_max", f"== {want}", value))
        elif k == 0:
            want = bounds.pohl(n)
            if value != want:
                report.violations.append(Violation(n, k, "pohl", f"== {want}", value))
        else:
            want = bounds.thm1_lower(n, k)
            if value < want:
                report.violations.append(Violation(n, k, "thm1_lower", f">= {want}", value))
    return report


# adversary mode

def _check_game(r: GameResult, lower: int, bound_name: str, report: Report) -> None:
    report.games += 1
    tag = f"solver={r.solver} adversary={r.adversary}"
    if r.adversary_forfeit:
        report.violations.append(Violation(r.n, r.k, "forfeit", "no forfeit", r.queries_used, tag))
        return
    if r.claim is None:
        report.cap_exhausted += 1
        return
    if not r.verified:
        report.violations.append(Violation(r.n, r.k, "soundness", "verified claim",
                                           r.queries_used, tag))
        return
    report.checks += 1
    if r.queries_used < lower:
        report.violations.append(Violation(r.n, r.k, bound_name, f">= {lower}", r.queries_used, tag))


def _adversary_point(task: tuple) -> Report:
    n, k, kind, trials = task
    report = Report()
    if kind is GameKind.MAX:
        adversary, lower, name = "consistent+claim1", bounds.rgl_max(n, k), "rgl_max"
    else:
        adversary, lower, name = "topbottom+claim1", bounds.thm1_lower(n, k), "thm1_lower"
    for solver in solvers_for(kind):
        _check_game(play(solver, adversary, n, k, kind), lower, name, report)
    # random play is slow to finish; give it room so few trials end uncapped
    cap = RANDOM_CAP_FACTOR * default_query_cap(n, k)
    for seed in range(trials):
        _check_game(play("random", adversary, n, k, kind, seed, cap), lower, name, report)
    if kind is GameKind.MAX:
        ceiling = (k + 1) * (n - 1) + k
        for adv in adversary_names():
            r = play("tournament-max", adv, n, k, kind)
            report.games += 1
            report.checks += 1
            if r.adversary_forfeit or not r.verified:
                report.violations.append(Violation(n, k, "soundness", "verified claim",
                                                   r.queries_used, f"adversary={adv}"))
            if r.queries_used > ceiling:
                report.violations.append(Violation(n, k, "tournament_ceiling", f"<= {ceiling}",
                                                   r.queries_used, f"adversary={adv}"))
    return report


def verify_adversary(kind: GameKind, n_values: Iterable[int], k_values: Iterable[int],
                     trials: int = 200, workers: int | None = None) -> Report:
    """Play every registered solver plus ``trials`` seeded random solvers against
    the wrapped paper adversary and check no verified claim beats the bound."""
    tasks = [(n, k, kind, trials) for n in n_values for k in k_values if n >= 2]
    report = Report()
    for part in _pool_map(_adversary_point, tasks, workers):
        report.merge(part)
    return report
