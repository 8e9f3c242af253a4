"""Delete-relaxation heuristics on the all-outcomes determinization.

Facts are ``(variable, value)`` pairs flattened to integer ids. ``hmax`` and
``hadd`` run a unit-cost Dijkstra over the relaxed task; ``hff`` extracts a
relaxed plan from the ``hadd`` best supporters.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .task import INF, DetTask, FondTask, State, determinize

__all__ = [
    "HeuristicKind",
    "Aggregator",
    "FactCostTable",
    "RelaxedTask",
    "fact_costs",
    "relaxed_plan",
    "evaluate",
    "f_value",
    "aggregate",
    "Heuristic",
]


class HeuristicKind(Enum):
    BLIND = "blind"
    HMAX = "hmax"
    HADD = "hadd"
    HFF = "hff"

    def __str__(self):
        return self.value


class Aggregator(Enum):
    MIN = "min"
    MAX = "max"

    def __str__(self):
        return self.value

    def __call__(self, values: Iterable):
        return min(values) if self is Aggregator.MIN else max(values)


class RelaxedTask:
    """Integer-indexed view of a DetTask used by the relaxed fixpoints."""

    def __init__(self, det: DetTask):
        self.det = det
        sizes = det.variables.domain_sizes()
        self.offsets = []
        n = 0
        for size in sizes:
            self.offsets.append(n)
            n += size
        self.num_facts = n
        self.pre = [tuple(self.fact(v, x) for v, x in a.precondition) for a in det.actions]
        self.eff = [tuple(self.fact(v, x) for v, x in a.effect) for a in det.actions]
        self.goal = tuple(self.fact(v, x) for v, x in det.goal)
        self.pre_of = [[] for _ in range(n)]
        for i, pre in enumerate(self.pre):
            for f in pre:
                self.pre_of[f].append(i)
        self.achievers = [[] for _ in range(n)]
        for i, eff in enumerate(self.eff):
            for f in eff:
                self.achievers[f].append(i)
        self.no_pre = [i for i, pre in enumerate(self.pre) if not pre]

    def fact(self, var: int, value: int) -> int:
        return self.offsets[var] + value

    def state_facts(self, s: State) -> list[int]:
        return [o + x for o, x in zip(self.offsets, s)]


@dataclass
class FactCostTable:
    cost: list  # per fact; INF when not relaxed-reachable
    action_cost: list  # aggregated precondition cost per determinized action
    supporter: list  # per fact: lowest-index cheapest achiever, None if true or unreachable
    goal_cost: float


def fact_costs(rt: RelaxedTask, s: State, additive: bool) -> FactCostTable:
    cost = [INF] * rt.num_facts
    heap = []
    for f in rt.state_facts(s):
        cost[f] = 0
        heap.append((0, f))
    acc = [0] * len(rt.pre)
    unsat = [len(p) for p in rt.pre]
    action_cost = [INF] * len(rt.pre)

    def fire(a: int):
        c = acc[a]
        action_cost[a] = c
        for e in rt.eff[a]:
            if c + 1 < cost[e]:
                cost[e] = c + 1
                heapq.heappush(heap, (c + 1, e))

    for a in rt.no_pre:
        fire(a)
    heapq.heapify(heap)
    while heap:
        c, f = heapq.heappop(heap)
        if c > cost[f]:
            continue
        for a in rt.pre_of[f]:
            unsat[a] -= 1
            if additive:
                acc[a] += c
            elif c > acc[a]:
                acc[a] = c
            if unsat[a] == 0:
                fire(a)

    supporter = [None] * rt.num_facts
    for f in range(rt.num_facts):
        if cost[f] == 0 or cost[f] == INF:
            continue
        for a in rt.achievers[f]:  # ascending index, so the first match wins ties
            if action_cost[a] + 1 == cost[f]:
                supporter[f] = a
                break

    goal = [cost[f] for f in rt.goal]
    if not goal:
        goal_cost = 0
    elif additive:
        goal_cost = sum(goal)
    else:
        goal_cost = max(goal)
    return FactCostTable(cost, action_cost, supporter, goal_cost)


def relaxed_plan(rt: RelaxedTask, s: State) -> list[int] | None:
    """Relaxed plan (determinized action indices, executable order) or None if unreachable."""
    table = fact_costs(rt, s, additive=True)
    if table.goal_cost == INF:
        return None
    plan = set()
    marked = set()
    stack = [f for f in rt.goal if table.cost[f] > 0]
    marked.update(stack)
    while stack:
        f = stack.pop()
        a = table.supporter[f]
        if a in plan:
            continue
        plan.add(a)
        for p in rt.pre[a]:
            if table.cost[p] > 0 and p not in marked:
                marked.add(p)
                stack.append(p)
    return sorted(plan, key=lambda a: (table.action_cost[a], a))


def _relaxed(det: DetTask) -> RelaxedTask:
    # cached on the (frozen) task instance
    rt = det.__dict__.get("_relaxed")
    if rt is None:
        rt = RelaxedTask(det)
        object.__setattr__(det, "_relaxed", rt)
    return rt


def evaluate(kind: HeuristicKind, det: DetTask, s: State):
    """Heuristic value of ``s`` (an int, or INF when the goal is relaxed-unreachable)."""
    kind = HeuristicKind(kind)
    if kind is HeuristicKind.BLIND:
        return 0
    rt = _relaxed(det)
    if kind is HeuristicKind.HFF:
        plan = relaxed_plan(rt, s)
        return INF if plan is None else len(plan)
    return fact_costs(rt, s, additive=kind is HeuristicKind.HADD).goal_cost


def f_value(g: int, h):
    return g + h


def aggregate(agg: Aggregator, kind: HeuristicKind, det: DetTask, succ: Iterable[State], g_succ: int, h=None):
    """F value of a successor set: min or max of ``g_succ + h(s')``."""
    if h is None:
        def h(s):
            return evaluate(kind, det, s)
    values = [f_value(g_succ, h(s)) for s in succ]
    if not values:
        raise ValueError("successor set must be non-empty")
    return Aggregator(agg)(values)


class Heuristic:
    """Memoizing evaluator for one heuristic over one task."""

    def __init__(self, kind: HeuristicKind, task: FondTask | DetTask):
        self.kind = HeuristicKind(kind)
        self.det = determinize(task) if isinstance(task, FondTask) else task
        self.relaxed = _relaxed(self.det)
        self._cache: dict = {}

    def __call__(self, s: State):
        h = self._cache.get(s)
        if h is None:
            h = self._compute(s)
            self._cache[s] = h
        return h

    def _compute(self, s: State):
        return evaluate(self.kind, self.det, s)

    def __len__(self):
        return len(self._cache)
