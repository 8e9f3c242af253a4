"""Iterative depth-first search for strong cyclic policies.

Each iteration runs a bounded depth-first recursion from the initial state.
A state is solved by an action when a fixed point over its successors marks
every successor solved; successors that loop back to the current path can
be solved on a later pass, once a sibling has found a way out. Bounds grow
to the smallest estimate that exceeded the previous one.

With ``pruning`` enabled, states that no action could even bring to a fixed
point are remembered for the rest of the iteration and never expanded again.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .heuristics import Aggregator, Heuristic, HeuristicKind
from .policy import Policy
from .task import INF, FondTask, NondetAction, State, applicable_actions, state_space_bound, successors

__all__ = [
    "SearchConfig",
    "SearchStats",
    "SearchResult",
    "Outcome",
    "idfs",
    "order_actions",
]


class Outcome(Enum):
    SOLVED = "solved"
    UNSOLVABLE = "unsolvable"
    UNSOLVED = "unsolved"
    RESOURCE_LIMIT = "resource-limit"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SearchConfig:
    heuristic: HeuristicKind = HeuristicKind.HMAX
    aggregator: Aggregator = Aggregator.MIN
    pruning: bool = False
    time_limit: float | None = None  # seconds
    max_calls: int | None = None  # recursive calls over the whole run
    memory_limit_mb: int | None = None  # advisory only, not enforced

    def __post_init__(self):
        object.__setattr__(self, "heuristic", HeuristicKind(self.heuristic))
        object.__setattr__(self, "aggregator", Aggregator(self.aggregator))
        for name in ("time_limit", "max_calls", "memory_limit_mb"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def label(self) -> str:
        algo = "idfsp" if self.pruning else "idfs"
        return f"{algo}({self.aggregator},{self.heuristic})"


@dataclass
class SearchStats:
    iterations: int = 0
    initial_bound: float = 0
    final_bound: float = 0
    bounds: list = field(default_factory=list)  # bound used by each iteration
    calls: int = 0
    fixed_point_rounds: int = 0
    wall_time: float = 0.0


@dataclass
class SearchResult:
    outcome: Outcome
    stats: SearchStats
    policy: Policy | None = None
    reason: str | None = None  # for RESOURCE_LIMIT

    @property
    def solved(self) -> bool:
        return self.outcome is Outcome.SOLVED


class _Limit(Exception):
    pass


def order_actions(task: FondTask, h: Callable[[State], float], s: State, g: int, candidates=None):
    """Applicable actions by ascending F_max of their successor sets.

    Actions whose F_max is infinite are dropped; ties keep declaration order.
    Returns ``(action, successors, f_min, f_max)`` tuples.
    """
    if candidates is None:
        candidates = applicable_actions(task, s)
    scored = []
    for i, a in enumerate(candidates):
        succ = successors(s, a)
        fs = [g + 1 + h(t) for t in succ]
        f_max = max(fs)
        if f_max == INF:
            continue
        scored.append((f_max, i, a, succ, min(fs)))
    scored.sort(key=lambda item: (item[0], item[1]))
    return [(a, succ, f_min, f_max) for f_max, _, a, succ, f_min in scored]


class _Search:
    def __init__(self, task: FondTask, cfg: SearchConfig, listener=None, debug=False):
        self.task = task
        self.debug = debug
        self.cfg = cfg
        self.h = Heuristic(cfg.heuristic, task)
        self.listener = listener
        self.stats = SearchStats()
        self.bound = 0
        self.next_bound = INF
        self.pruned: set = set()
        self.pi: dict = {}
        self.trail: list = []
        self._ordered: dict = {}
        self.deadline = None

    def emit(self, event: str, **info):
        if self.listener is not None:
            self.listener(event, **info)

    def actions_for(self, s: State, g: int):
        # F values shift uniformly with g, so the order is cached per state
        cached = self._ordered.get(s)
        if cached is None:
            cached = order_actions(self.task, self.h, s, 0)
            self._ordered[s] = cached
        return cached

    def undo(self, mark: int):
        while len(self.trail) > mark:
            del self.pi[self.trail.pop()]

    def run(self) -> SearchResult:
        task, cfg, stats = self.task, self.cfg, self.stats
        start = time.monotonic()
        if cfg.time_limit is not None:
            self.deadline = start + cfg.time_limit
        limit = state_space_bound(task)
        self.bound = self.h(task.init)
        self.next_bound = INF
        stats.initial_bound = stats.final_bound = self.bound
        try:
            while self.bound <= limit:
                stats.iterations += 1
                stats.bounds.append(self.bound)
                stats.final_bound = self.bound
                self.pruned = set()
                self.pi, self.trail = {}, []
                self.emit("iteration", bound=self.bound, index=stats.iterations)
                if self.recurse(task.init, set(), frozenset()):
                    stats.wall_time = time.monotonic() - start
                    return SearchResult(Outcome.SOLVED, stats, Policy(self.pi))
                self.bound, self.next_bound = self.next_bound, INF
        except _Limit as exc:
            stats.wall_time = time.monotonic() - start
            return SearchResult(Outcome.RESOURCE_LIMIT, stats, reason=str(exc))
        stats.wall_time = time.monotonic() - start
        return SearchResult(Outcome.UNSOLVED if cfg.pruning else Outcome.UNSOLVABLE, stats)

    def check_limits(self):
        self.stats.calls += 1
        if self.cfg.max_calls is not None and self.stats.calls > self.cfg.max_calls:
            raise _Limit(f"call limit {self.cfg.max_calls} reached")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Limit(f"time limit {self.cfg.time_limit}s reached")

    def recurse(self, s: State, path: set, solved_path: frozenset) -> bool:
        """One recursive call; ``path`` holds the ancestors of ``s``, ``solved_path`` ⊆ path."""
        self.check_limits()
        if self.debug:
            assert solved_path <= path, "solved ancestors must be ancestors"
            assert not any(p in self.pi for p in path), "policy overlaps the recursion path"
        self.emit("enter", state=s, depth=len(path))
        if self.task.is_goal(s) or s in self.pi or s in solved_path:
            self.emit("exit", state=s, solved=True, reason="base")
            return True
        if s in path:
            self.emit("exit", state=s, solved=False, reason="ancestor")
            return False
        pruning = self.cfg.pruning
        if pruning and s in self.pruned:
            self.emit("exit", state=s, solved=False, reason="pruned")
            return False

        g = len(path)
        bound = self.bound
        use_min = self.cfg.aggregator is Aggregator.MIN
        promising = False
        for a, succ, f_min, f_max in self.actions_for(s, g):
            f = g + (f_min if use_min else f_max)
            if f > bound and not solved_path:
                if f < self.next_bound:
                    self.next_bound = f
                continue
            if g + 1 > bound:
                if g + 1 < self.next_bound:
                    self.next_bound = g + 1
                continue

            mark = len(self.trail)
            solved_children: set = set()
            z_star = solved_path
            path.add(s)
            blocked = False
            try:
                while True:
                    self.stats.fixed_point_rounds += 1
                    progress = False
                    for t in succ:
                        if t in solved_children:
                            continue
                        ok = self.recurse(t, path, z_star)
                        if pruning and any(m in self.pruned for m in succ):
                            blocked = True
                            break
                        if ok:
                            solved_children.add(t)
                            z_star = frozenset(path)
                            progress = True
                    if blocked or not progress:
                        break
            finally:
                path.discard(s)
            if not blocked:
                promising = True
            if len(solved_children) == len(succ):
                self.pi[s] = a
                self.trail.append(s)
                self.emit("map", state=s, action=a)
                self.emit("exit", state=s, solved=True, reason="fixed-point")
                return True
            self.undo(mark)

        if pruning and not promising:
            self.pruned.add(s)
        self.emit("exit", state=s, solved=False, reason="exhausted")
        return False


def idfs(task: FondTask, cfg: SearchConfig | None = None, listener=None, debug: bool = False) -> SearchResult:
    """Search ``task`` for a strong cyclic policy.

    ``listener``, if given, is called as ``listener(event, **info)`` for the
    events ``iteration``, ``enter``, ``exit`` and ``map``. ``debug`` asserts
    the path invariants at every recursive call.
    """
    return _Search(task, cfg or SearchConfig(), listener, debug).run()
