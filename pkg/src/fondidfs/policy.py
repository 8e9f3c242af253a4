"""Policies over FOND tasks and the checks and oracles built on them.

Everything here works on the explicit state space and is deliberately
simple; these functions are the reference the search is tested against.
"""

from __future__ import annotations

import os
import random
import re
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .task import FondTask, NondetAction, State, satisfies, successors

__all__ = [
    "Policy",
    "PolicyGraph",
    "TargetSets",
    "SimulationResult",
    "OracleCaps",
    "OracleOverflow",
    "OracleResult",
    "PolicyFormatError",
    "policy_graph",
    "verify_closed",
    "verify_strong_cyclic",
    "verify_partial_strong_cyclic",
    "is_trajectory",
    "critical_value",
    "policy_size",
    "simulate_fair",
    "reachable_states",
    "enumerate_closed_policies",
    "cv_star_oracle",
    "solvability_oracle",
    "format_policy",
    "parse_policy",
]


class Policy(Mapping):
    """Partial map from states to actions."""

    def __init__(self, mapping: Mapping[State, NondetAction] | Iterable = ()):
        self._map = dict(mapping)

    def __getitem__(self, s: State) -> NondetAction:
        return self._map[s]

    def __iter__(self):
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __repr__(self):
        inner = ", ".join(f"{s}: {a.name}" for s, a in self._map.items())
        return f"Policy({{{inner}}})"

    @property
    def states(self) -> frozenset:
        return frozenset(self._map)

    @property
    def size(self) -> int:
        return len(self._map)

    def extended(self, s: State, a: NondetAction) -> Policy:
        out = Policy(self._map)
        out._map[s] = a
        return out

    def without(self, s: State) -> Policy:
        out = Policy(self._map)
        del out._map[s]
        return out

    def check(self, task: FondTask) -> None:
        """Raise ValueError unless every mapping is an applicable action in a non-goal state."""
        for s, a in self._map.items():
            if task.is_goal(s):
                raise ValueError(f"goal state {s} is mapped")
            if not satisfies(s, a.precondition):
                raise ValueError(f"action {a.name!r} is not applicable in {s}")


def policy_size(pi: Policy) -> int:
    return len(pi)


def _step(task: FondTask, pi: Mapping, s: State):
    """Policy successors of ``s``; None if unmapped; raises if the mapping is inapplicable."""
    a = pi.get(s)
    if a is None:
        return None
    return successors(s, a)


@dataclass(frozen=True)
class PolicyGraph:
    nodes: frozenset
    edges: dict  # state -> tuple of successor states; unmapped nodes have ()

    def out_degree(self, s: State) -> int:
        return len(self.edges[s])


def policy_graph(task: FondTask, pi: Policy) -> PolicyGraph:
    """Policy graph over the mapped states and the frontier states they reach."""
    edges = {}
    for s, a in pi.items():
        edges[s] = successors(s, a)
    for succ in list(edges.values()):
        for t in succ:
            edges.setdefault(t, ())
    return PolicyGraph(frozenset(edges), edges)


def _forward(task: FondTask, pi: Mapping, start: State, stop: Callable[[State], bool]):
    """States reachable from ``start`` under ``pi``, not expanding past ``stop`` states."""
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if stop(s):
            continue
        succ = _step(task, pi, s)
        if not succ:
            continue
        for t in succ:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def _can_reach(task: FondTask, pi: Mapping, states: Iterable[State], target: Callable[[State], bool]) -> set:
    """Subset of ``states`` (and everything explored from them) with a pi-trajectory into ``target``."""
    region = set()
    for s in states:
        region |= _forward(task, pi, s, target)
    preds: dict = {}
    good = set()
    for s in region:
        if target(s):
            good.add(s)
            continue
        for t in _step(task, pi, s) or ():
            preds.setdefault(t, []).append(s)
    queue = deque(good)
    while queue:
        t = queue.popleft()
        for s in preds.get(t, ()):
            if s not in good:
                good.add(s)
                queue.append(s)
    return good


def _applicable_everywhere(pi: Mapping) -> bool:
    return all(satisfies(s, a.precondition) for s, a in pi.items())


def verify_closed(task: FondTask, pi: Mapping) -> bool:
    if not _applicable_everywhere(pi):
        return False
    reach = _forward(task, pi, task.init, task.is_goal)
    return all(task.is_goal(s) or s in pi for s in reach)


def verify_strong_cyclic(task: FondTask, pi: Mapping) -> bool:
    """Closed, and a goal stays reachable from every state the execution can visit."""
    if not _applicable_everywhere(pi):
        return False
    reach = _forward(task, pi, task.init, task.is_goal)
    if not all(task.is_goal(s) or s in pi for s in reach):
        return False
    preds: dict = {}
    for s in reach:
        if not task.is_goal(s):
            for t in successors(s, pi[s]):
                preds.setdefault(t, []).append(s)
    alive = {s for s in reach if task.is_goal(s)}
    queue = deque(alive)
    while queue:
        t = queue.popleft()
        for s in preds.get(t, ()):
            if s not in alive:
                alive.add(s)
                queue.append(s)
    return alive >= reach


@dataclass(frozen=True)
class TargetSets:
    """Primary (A) and secondary (B) target states; goal states belong to both when ``goals`` is set."""

    primary: frozenset = frozenset()
    secondary: frozenset = frozenset()
    goals: bool = True

    def __post_init__(self):
        object.__setattr__(self, "primary", frozenset(self.primary))
        object.__setattr__(self, "secondary", frozenset(self.secondary) | frozenset(self.primary))

    def in_primary(self, task: FondTask, s: State) -> bool:
        return s in self.primary or (self.goals and task.is_goal(s))

    def in_secondary(self, task: FondTask, s: State) -> bool:
        return s in self.secondary or (self.goals and task.is_goal(s))


def verify_partial_strong_cyclic(task: FondTask, pi: Mapping, s: State, targets: TargetSets) -> bool:
    """Reachability of A from ``s`` avoiding B\\A, and sinking of ``pi`` into B from ``s``."""
    if not _applicable_everywhere(pi):
        return False

    def in_a(t):
        return targets.in_primary(task, t)

    def in_b(t):
        return targets.in_secondary(task, t)

    if in_a(s):
        return True

    # reachable: a trajectory into A whose states before A stay outside B
    seen = {s}
    queue = deque([s])
    found = False
    while queue and not found:
        t = queue.popleft()
        for u in _step(task, pi, t) or ():
            if in_a(u):
                found = True
                break
            if u not in seen and not in_b(u):
                seen.add(u)
                queue.append(u)
    if not found:
        return False

    # sinking: every trajectory from s passes through B or ends where B is still reachable
    region = _forward(task, pi, s, lambda t: t != s and in_b(t))
    open_states = [t for t in region if t == s or not in_b(t)]
    good = _can_reach(task, pi, open_states, in_b)
    return all(t in good for t in open_states)


def is_trajectory(task: FondTask, pi: Mapping, states: list) -> bool:
    if not states:
        return False
    for s, t in zip(states, states[1:]):
        succ = _step(task, pi, s)
        if not succ or t not in succ:
            return False
    return True


def critical_value(task: FondTask, pi: Mapping) -> int:
    """Length of the longest trajectory from the initial state whose prefix repeats no state.

    The last state of the trajectory may repeat an earlier one. A goal
    initial state gives 0.
    """
    best = 0
    path = set()

    def dfs(s: State, length: int):
        nonlocal best
        best = max(best, length)
        succ = None if task.is_goal(s) else _step(task, pi, s)
        if not succ:
            return
        path.add(s)
        for t in succ:
            if t in path:
                best = max(best, length + 1)
            else:
                dfs(t, length + 1)
        path.discard(s)

    dfs(task.init, 0)
    return best


@dataclass(frozen=True)
class SimulationResult:
    reached_goal: bool
    steps: int
    unmapped_state: State | None = None  # set when execution hit a non-goal state outside the policy

    @property
    def status(self) -> str:
        if self.reached_goal:
            return "goal"
        return "unmapped" if self.unmapped_state is not None else "max_steps"


def simulate_fair(task: FondTask, pi: Mapping, seed: int, max_steps: int) -> SimulationResult:
    """Execute ``pi`` from the initial state, picking outcomes uniformly at random."""
    rng = random.Random(seed)
    s = task.init
    for step in range(max_steps + 1):
        if task.is_goal(s):
            return SimulationResult(True, step)
        if step == max_steps:
            break
        a = pi.get(s)
        if a is None:
            return SimulationResult(False, step, s)
        s = rng.choice(successors(s, a))
    return SimulationResult(False, max_steps)


# ---------------------------------------------------------------------------
# Oracles


class OracleOverflow(RuntimeError):
    """The explicit state space or policy enumeration exceeded the configured caps."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"oracle cap exceeded: {what} > {cap}")
        self.what = what
        self.cap = cap


@dataclass(frozen=True)
class OracleCaps:
    max_states: int = 10_000
    max_candidates: int = 1_000_000

    @classmethod
    def from_env(cls) -> OracleCaps:
        """Caps overridden by FONDIDFS_ORACLE_MAX_STATES / FONDIDFS_ORACLE_MAX_CANDIDATES."""
        default = cls()
        return cls(
            int(os.environ.get("FONDIDFS_ORACLE_MAX_STATES", default.max_states)),
            int(os.environ.get("FONDIDFS_ORACLE_MAX_CANDIDATES", default.max_candidates)),
        )


def reachable_states(task: FondTask, max_states: int | None = None) -> list:
    """States reachable from the initial state under any actions (goal states not expanded)."""
    seen = {task.init: None}
    queue = deque([task.init])
    while queue:
        s = queue.popleft()
        if task.is_goal(s):
            continue
        for a in task.applicable(s):
            for t in successors(s, a):
                if t not in seen:
                    seen[t] = None
                    if max_states is not None and len(seen) > max_states:
                        raise OracleOverflow("states", max_states)
                    queue.append(t)
    return list(seen)


def enumerate_closed_policies(task: FondTask, caps: OracleCaps | None = None) -> Iterator[Policy]:
    """Every closed policy, restricted to the states it reaches from the initial state.

    Each candidate is produced once: branching always happens on the first
    unmapped non-goal state in breadth-first order, which is fixed by the
    mappings made so far.
    """
    caps = caps or OracleCaps()
    reachable_states(task, caps.max_states)
    produced = 0
    assign: dict = {}

    def first_open():
        seen = {task.init}
        queue = deque([task.init])
        while queue:
            s = queue.popleft()
            if task.is_goal(s):
                continue
            a = assign.get(s)
            if a is None:
                return s
            for t in successors(s, a):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return None

    def rec():
        nonlocal produced
        s = first_open()
        if s is None:
            produced += 1
            if produced > caps.max_candidates:
                raise OracleOverflow("candidates", caps.max_candidates)
            yield Policy(assign)
            return
        for a in task.applicable(s):
            assign[s] = a
            yield from rec()
            del assign[s]

    yield from rec()


@dataclass(frozen=True)
class OracleResult:
    solvable: bool
    cv_star: int | None
    policies: int  # strong cyclic policies (restricted to reachable states)
    candidates: int  # closed policies enumerated
    critical_values: tuple = ()


def cv_star_oracle(task: FondTask, caps: OracleCaps | None = None) -> OracleResult:
    """Minimal critical value by brute-force enumeration of closed policies."""
    cvs = []
    candidates = 0
    for pi in enumerate_closed_policies(task, caps):
        candidates += 1
        if verify_strong_cyclic(task, pi):
            cvs.append(critical_value(task, pi))
    if not cvs:
        return OracleResult(False, None, 0, candidates)
    return OracleResult(True, min(cvs), len(cvs), candidates, tuple(cvs))


def solvability_oracle(task: FondTask, caps: OracleCaps | None = None) -> bool:
    """Strong-cyclic solvability by fixpoint elimination of state-action pairs."""
    caps = caps or OracleCaps()
    states = reachable_states(task, caps.max_states)
    if task.is_goal(task.init):
        return True
    pairs = {
        s: {a.name: successors(s, a) for a in task.applicable(s)}
        for s in states
        if not task.is_goal(s)
    }
    while True:
        changed = False
        # drop pairs with an outcome outside the candidate set
        for s, acts in pairs.items():
            for name in [n for n, succ in acts.items() if any(t not in pairs and not task.is_goal(t) for t in succ)]:
                del acts[name]
                changed = True
        # keep states that can still reach a goal through the remaining pairs
        alive = set()
        frontier = True
        while frontier:
            frontier = False
            for s, acts in pairs.items():
                if s in alive:
                    continue
                if any(task.is_goal(t) or t in alive for succ in acts.values() for t in succ):
                    alive.add(s)
                    frontier = True
        dead = [s for s in pairs if s not in alive]
        for s in dead:
            del pairs[s]
            changed = True
        if not changed:
            return task.init in pairs


# ---------------------------------------------------------------------------
# Text format


class PolicyFormatError(ValueError):
    pass


_LINE = re.compile(r"^state: \{(.*)\} action: (.+)$")


def _format_state(task: FondTask, s: State) -> str:
    vt = task.variables
    if vt.is_propositional():
        return ", ".join(vt[i].name for i, x in enumerate(s) if x == 1)
    return ", ".join(f"{v.name}={v.values[x]}" for v, x in zip(vt, s))


def _parse_state(task: FondTask, text: str) -> State:
    vt = task.variables
    parts = [p for p in text.split(", ")] if text else []
    if vt.is_propositional():
        values = [0] * len(vt)
        for name in parts:
            values[vt.index(name)] = 1
        return tuple(values)
    assignment = {}
    for part in parts:
        name, sep, value = part.partition("=")
        if not sep:
            raise PolicyFormatError(f"expected var=value, got {part!r}")
        assignment[name] = value
    return task.state_from(assignment)


def format_policy(task: FondTask, pi: Mapping) -> str:
    from .taskio import task_hash

    lines = [f"# task-hash: {task_hash(task)}", f"# size: {len(pi)}"]
    for s in sorted(pi):
        lines.append(f"state: {{{_format_state(task, s)}}} action: {pi[s].name}")
    return "\n".join(lines) + "\n"


def parse_policy(task: FondTask, text: str) -> Policy:
    from .taskio import task_hash

    mapping = {}
    size = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key, value = key.strip(), value.strip()
            if key == "task-hash" and value != task_hash(task):
                raise PolicyFormatError("policy was written for a different task")
            if key == "size":
                size = int(value)
            continue
        m = _LINE.match(line)
        if not m:
            raise PolicyFormatError(f"line {lineno}: malformed record")
        try:
            s = _parse_state(task, m.group(1))
            a = task.action(m.group(2))
        except (ValueError, KeyError) as exc:
            raise PolicyFormatError(f"line {lineno}: {exc}") from None
        if s in mapping:
            raise PolicyFormatError(f"line {lineno}: state mapped twice")
        mapping[s] = a
    if size is not None and size != len(mapping):
        raise PolicyFormatError(f"size header says {size}, found {len(mapping)} records")
    return Policy(mapping)
