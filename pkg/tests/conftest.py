"""Shared fixtures, random task strategies and independent brute-force oracles."""

from __future__ import annotations

import itertools
from collections import deque

import pytest
from hypothesis import strategies as st

from fondidfs import corpus
from fondidfs.task import INF, FondTask, NondetAction, PartialState, Variable, VariableTable, satisfies, successors


@pytest.fixture(scope="session")
def fig1_task():
    return corpus.fig1()


@pytest.fixture(scope="session")
def fig2_task():
    return corpus.fig2()


@pytest.fixture(scope="session")
def corpus_tasks():
    return [(entry, entry.load()) for entry in corpus.corpus()]


def fig2_policies(task):
    """The two strong cyclic policies of the fig2 fixture, spelled out by state label."""
    s = {label: corpus.fig2_state(task, label) for label in corpus.FIG2_STATES}
    a = task.action
    pi0 = {s["s0"]: a("c"), s["s4"]: a("b"), s["s5"]: a("d"), s["s6"]: a("c"), s["s7"]: a("e")}
    pi1 = {s["s0"]: a("a"), s["s2"]: a("c"), s["s3"]: a("d")}
    return pi0, pi1


# ---------------------------------------------------------------------------
# random small tasks


@st.composite
def small_tasks(draw, max_vars=3, max_values=3, max_actions=5, max_effects=3):
    n = draw(st.integers(1, max_vars))
    sizes = [draw(st.integers(2, max_values)) for _ in range(n)]
    vt = VariableTable(tuple(Variable(f"v{i}", tuple(f"x{j}" for j in range(k))) for i, k in enumerate(sizes)))

    def partial(max_len):
        chosen = draw(st.lists(st.integers(0, n - 1), max_size=max_len, unique=True))
        return PartialState.of({v: draw(st.integers(0, sizes[v] - 1)) for v in chosen})

    init = tuple(draw(st.integers(0, k - 1)) for k in sizes)
    goal = partial(n)
    actions = []
    for i in range(draw(st.integers(1, max_actions))):
        pre = partial(2)
        effects = tuple(partial(2) for _ in range(draw(st.integers(1, max_effects))))
        actions.append(NondetAction(f"a{i}", pre, effects))
    return FondTask(vt, init, goal, tuple(actions), "random")


# ---------------------------------------------------------------------------
# independent oracles


def all_states(task):
    return list(itertools.product(*(range(k) for k in task.variables.domain_sizes())))


def bfs_plan_length(task, s):
    """Shortest plan length from ``s`` in the all-outcomes determinization (INF if none)."""
    dist = {s: 0}
    queue = deque([s])
    while queue:
        t = queue.popleft()
        if task.is_goal(t):
            return dist[t]
        for a in task.actions:
            if satisfies(t, a.precondition):
                for u in successors(t, a):
                    if u not in dist:
                        dist[u] = dist[t] + 1
                        queue.append(u)
    return INF


def relaxed_costs_naive(task, s, combine):
    """Bellman-Ford style relaxed fact costs; ``combine`` is ``max`` or ``sum``."""
    facts = {(v, x) for v, k in enumerate(task.variables.domain_sizes()) for x in range(k)}
    cost = {f: (0 if s[f[0]] == f[1] else INF) for f in facts}
    changed = True
    while changed:
        changed = False
        for a in task.actions:
            pre = [cost[f] for f in a.precondition.items]
            c = 1 + (combine(pre) if pre else 0)
            if c == INF:
                continue
            for eff in a.effects:
                for f in eff.items:
                    if c < cost[f]:
                        cost[f] = c
                        changed = True
    return cost


def naive_h(task, s, combine):
    cost = relaxed_costs_naive(task, s, combine)
    g = [cost[f] for f in task.goal.items]
    return combine(g) if g else 0


def optimal_relaxed_plan_length(task, s, limit=6):
    """h+ by exhaustive search over sets of determinized actions (tiny tasks only)."""
    det = [(a.precondition.items, eff.items) for a in task.actions for eff in a.effects]
    start = frozenset((v, x) for v, x in enumerate(s))
    goal = set(task.goal.items)
    frontier = {start}
    seen = {start}
    for depth in range(limit + 1):
        if any(goal <= facts for facts in frontier):
            return depth
        nxt = set()
        for facts in frontier:
            for pre, eff in det:
                if set(pre) <= facts:
                    grown = facts | set(eff)
                    if grown not in seen:
                        seen.add(grown)
                        nxt.add(grown)
        if not nxt:
            return INF
        frontier = nxt
    return None


def reachable_under(task, pi):
    seen = {task.init}
    queue = deque([task.init])
    while queue:
        s = queue.popleft()
        if task.is_goal(s) or s not in pi:
            continue
        for t in successors(s, pi[s]):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def strong_cyclic_naive(task, pi):
    """Per-state forward search: every reachable state is closed and can still reach a goal."""
    for s, a in pi.items():
        if not satisfies(s, a.precondition):
            return False
    reach = reachable_under(task, pi)
    if any(not task.is_goal(s) and s not in pi for s in reach):
        return False
    for s in reach:
        if task.is_goal(s):
            continue
        seen = {s}
        queue = deque([s])
        ok = False
        while queue and not ok:
            t = queue.popleft()
            if task.is_goal(t):
                ok = True
                break
            for u in successors(t, pi[t]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if not ok:
            return False
    return True


def brute_force_policies(task, max_combos=50_000):
    """Every strong cyclic policy restricted to its reachable states, by full product enumeration.

    Returns None when the product of per-state choices exceeds ``max_combos``.
    """
    states = [s for s in all_states(task) if not task.is_goal(s)]
    choices = [[None] + [a for a in task.actions if satisfies(s, a.precondition)] for s in states]
    total = 1
    for c in choices:
        total *= len(c)
        if total > max_combos:
            return None
    found = set()
    for combo in itertools.product(*choices):
        pi = {s: a for s, a in zip(states, combo) if a is not None}
        if strong_cyclic_naive(task, pi):
            reach = reachable_under(task, pi)
            found.add(frozenset((s, a.name) for s, a in pi.items() if s in reach))
    return found


def longest_simple_prefix(task, pi):
    """Critical value by enumerating every trajectory explicitly."""
    best = 0
    stack = [(task.init,)]
    while stack:
        traj = stack.pop()
        best = max(best, len(traj) - 1)
        last = traj[-1]
        if last in traj[:-1] or task.is_goal(last) or last not in pi:
            continue
        for t in successors(last, pi[last]):
            stack.append(traj + (t,))
    return best


# ---------------------------------------------------------------------------
# acceptance report: one PASS/FAIL line per criterion

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by the test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, text = marker
    failed = report.failed or (report.when == "call" and report.skipped)
    prev = _CRITERIA.get(number, (text, True))
    _CRITERIA[number] = (text, prev[1] and not failed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result()._criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
