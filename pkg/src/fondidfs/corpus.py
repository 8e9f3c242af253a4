"""Small bundled tasks used by the tests, the benchmark harness and the demos.

Hand-built tasks are constructed in code here and also checked in as JSON
under ``data/``; the PDDL domains live next to them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .task import FondTask, NondetAction, PartialState, Variable, VariableTable

__all__ = [
    "DATA_DIR",
    "CorpusEntry",
    "fig1",
    "fig2",
    "fig2_state",
    "chain",
    "dead_end",
    "unsolvable_chain",
    "dead_end_only",
    "goal_free",
    "goal_init",
    "corpus",
    "load_entry",
    "builders",
    "FIG1_STATES",
    "FIG2_STATES",
]

DATA_DIR = Path(__file__).parent / "data"


def _location_task(name: str, locations: list[str], init: str, goals: list[str], edges: list[tuple[str, str, list[str]]]) -> FondTask:
    """Task over one location variable; each edge is ``(action, source, [targets])``."""
    vt = VariableTable((Variable("loc", tuple(locations)),))
    idx = {loc: i for i, loc in enumerate(locations)}
    if len(goals) != 1:
        raise ValueError("one goal location expected")
    actions = tuple(
        NondetAction(a, PartialState.of({0: idx[src]}), tuple(PartialState.of({0: idx[t]}) for t in targets))
        for a, src, targets in edges
    )
    return FondTask(vt, (idx[init],), PartialState.of({0: idx[goals[0]]}), actions, name)


FIG1_STATES = [f"s{i}" for i in range(13)]


def fig1() -> FondTask:
    """Walk-through task: s10 has a non-deterministic action ``a`` leading to s12 (back to s9) or s11.

    The goal is s5; s7 is a dead end.
    """
    edges = [
        ("go-s0-s1", "s0", ["s1"]),
        ("split-s1", "s1", ["s2", "s9"]),
        ("go-s2-s3", "s2", ["s3"]),
        ("go-s2-s7", "s2", ["s7"]),
        ("split-s3", "s3", ["s4", "s6"]),
        ("go-s4-s5", "s4", ["s5"]),
        ("go-s6-s8", "s6", ["s8"]),
        ("go-s8-s5", "s8", ["s5"]),
        ("go-s9-s10", "s9", ["s10"]),
        ("a", "s10", ["s12", "s11"]),
        ("go-s11-s8", "s11", ["s8"]),
        ("go-s12-s9", "s12", ["s9"]),
    ]
    return _location_task("fig1", FIG1_STATES, "s0", ["s5"], edges)


# (x, y, u) value names of the eight reachable states; s1 is the goal.
FIG2_STATES = {
    "s0": ("x0", "y0", "0"),
    "s1": ("xg", "y0", "0"),
    "s2": ("x0", "y2", "0"),
    "s3": ("x0", "y2", "1"),
    "s4": ("x0", "y0", "1"),
    "s5": ("x6", "y2", "1"),
    "s6": ("x6", "y0", "0"),
    "s7": ("x6", "y0", "1"),
}


def fig2() -> FondTask:
    """Eight reachable states, deterministic c, d, e and non-deterministic a, b.

    Exactly two strong cyclic policies exist:
    {s0: c, s4: b, s5: d, s6: c, s7: e} and {s0: a, s2: c, s3: d}.
    """
    vt = VariableTable((Variable("x", ("x0", "x6", "xg")), Variable("y", ("y0", "y2")), Variable("u", ("0", "1"))))
    X0, X6, XG = 0, 1, 2
    Y0, Y2 = 0, 1
    P = PartialState.of
    actions = (
        NondetAction("a", P({0: X0, 1: Y0, 2: 0}), (P({0: XG}), P({1: Y2}))),
        NondetAction("b", P({0: X0, 1: Y0, 2: 1}), (P({0: XG, 2: 0}), P({0: X6, 1: Y2}))),
        NondetAction("c", P({2: 0}), (P({2: 1}),)),
        NondetAction("d", P({1: Y2, 2: 1}), (P({1: Y0, 2: 0}),)),
        NondetAction("e", P({0: X6, 1: Y0, 2: 1}), (P({0: X0}),)),
    )
    return FondTask(vt, (X0, Y0, 0), P({0: XG}), actions, "fig2")


def fig2_state(task: FondTask, label: str):
    x, y, u = FIG2_STATES[label]
    return task.state_from({"x": x, "y": y, "u": u})


def chain(k: int) -> FondTask:
    """Positions 0..k; each step advances or stays put."""
    vt = VariableTable((Variable("pos", tuple(f"p{i}" for i in range(k + 1))),))
    P = PartialState.of
    actions = tuple(NondetAction(f"advance-{i}", P({0: i}), (P({0: i + 1}), P())) for i in range(k))
    return FondTask(vt, (0,), P({0: k}), actions, f"chain-{k}")


def dead_end(n: int) -> FondTask:
    """A risky shortcut (goal or dead end) next to a safe walk of length n."""
    locations = [f"p{i}" for i in range(n + 1)] + ["dead"]
    edges = []
    for i in range(n):
        edges.append((f"risky-{i}", f"p{i}", [f"p{n}", "dead"]))
        edges.append((f"safe-{i}", f"p{i}", [f"p{i + 1}"]))
    return _location_task(f"dead-end-{n}", locations, "p0", [f"p{n}"], edges)


def unsolvable_chain(n: int) -> FondTask:
    """Every step may fall into a dead end."""
    locations = [f"p{i}" for i in range(n + 1)] + ["dead"]
    edges = [(f"step-{i}", f"p{i}", [f"p{i + 1}", "dead"]) for i in range(n)]
    return _location_task(f"unsolvable-{n}", locations, "p0", [f"p{n}"], edges)


def dead_end_only() -> FondTask:
    """Three states: the only action leads to a dead end; the goal is never reached."""
    return _location_task("dead-end-only", ["s0", "s1", "goal"], "s0", ["goal"], [("fall", "s0", ["s1"])])


def goal_free() -> FondTask:
    """A cycle that never reaches the goal location."""
    edges = [("left", "a", ["b"]), ("right", "b", ["a"])]
    return _location_task("goal-free", ["a", "b", "g"], "a", ["g"], edges)


def goal_init() -> FondTask:
    return _location_task("goal-init", ["g", "x"], "g", ["g"], [("leave", "g", ["x"])])


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    family: str
    solvable: bool
    json: str | None = None
    domain: str | None = None
    problem: str | None = None

    def load(self) -> FondTask:
        return load_entry(self)


def load_entry(entry: CorpusEntry) -> FondTask:
    from .pddl import load_pddl
    from .taskio import load_task

    if entry.json is not None:
        return load_task(DATA_DIR / entry.json)
    return load_pddl(DATA_DIR / entry.domain, DATA_DIR / entry.problem)[0]


def corpus() -> list[CorpusEntry]:
    """Entries listed in the bundled manifest."""
    manifest = json.loads((DATA_DIR / "corpus.json").read_text())
    return [CorpusEntry(**item) for item in manifest["tasks"]]


def builders() -> dict:
    """Builder for every hand-made task checked in as JSON, keyed by file stem."""
    out = {"fig1": fig1, "fig2": fig2, "dead-end-only": dead_end_only, "goal-free": goal_free, "goal-init": goal_init}
    for k in (5, 10, 15, 20, 25, 30):
        out[f"chain-{k}"] = lambda k=k: chain(k)
    for n in (2, 4):
        out[f"dead-end-{n}"] = lambda n=n: dead_end(n)
        out[f"unsolvable-{n}"] = lambda n=n: unsolvable_chain(n)
    return out
