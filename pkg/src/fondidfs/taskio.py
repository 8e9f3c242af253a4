"""JSON serialization of ground FOND tasks.

Schema ``fond-task/1``::

    {
      "schema": "fond-task/1",
      "name": "fig2",
      "variables": [{"name": "x", "values": ["a", "b"]}, ...],
      "init": {"x": "a", ...},              # every variable
      "goal": {"x": "b"},                   # any subset
      "actions": [
        {"name": "go", "precondition": {"x": "a"}, "effects": [{"x": "b"}, {}]}
      ]
    }

Partial assignments are written in variable order so that
``dumps(loads(text)) == text`` for files written by :func:`dumps`.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .task import FondTask, NondetAction, PartialState, TaskError, Variable, VariableTable

__all__ = ["SCHEMA", "task_to_dict", "task_from_dict", "dumps", "loads", "load_task", "save_task", "task_hash"]

SCHEMA = "fond-task/1"


def _partial_to_dict(vt: VariableTable, p: PartialState) -> dict:
    return {vt[v].name: vt[v].values[x] for v, x in p}


def _partial_from_dict(vt: VariableTable, d: dict) -> PartialState:
    items = []
    for name, value in d.items():
        i = vt.index(name)
        items.append((i, vt.value_index(i, value)))
    return PartialState(tuple(items))


def task_to_dict(task: FondTask) -> dict:
    vt = task.variables
    return {
        "schema": SCHEMA,
        "name": task.name,
        "variables": [{"name": v.name, "values": list(v.values)} for v in vt],
        "init": {v.name: v.values[x] for v, x in zip(vt, task.init)},
        "goal": _partial_to_dict(vt, task.goal),
        "actions": [
            {
                "name": a.name,
                "precondition": _partial_to_dict(vt, a.precondition),
                "effects": [_partial_to_dict(vt, e) for e in a.effects],
            }
            for a in task.actions
        ],
    }


def task_from_dict(data: dict) -> FondTask:
    schema = data.get("schema")
    if schema != SCHEMA:
        raise TaskError(f"unsupported task schema {schema!r} (expected {SCHEMA!r})")
    try:
        vt = VariableTable(tuple(Variable(v["name"], tuple(v["values"])) for v in data["variables"]))
        init = [None] * len(vt)
        for name, value in data["init"].items():
            i = vt.index(name)
            init[i] = vt.value_index(i, value)
        if any(x is None for x in init):
            raise TaskError("init must assign every variable")
        actions = tuple(
            NondetAction(
                a["name"],
                _partial_from_dict(vt, a.get("precondition", {})),
                tuple(_partial_from_dict(vt, e) for e in a["effects"]),
            )
            for a in data["actions"]
        )
        return FondTask(vt, tuple(init), _partial_from_dict(vt, data.get("goal", {})), actions, data.get("name", "task"))
    except KeyError as exc:
        raise TaskError(f"missing field {exc.args[0]!r}") from None


def dumps(task: FondTask) -> str:
    return json.dumps(task_to_dict(task), indent=1) + "\n"


def loads(text: str) -> FondTask:
    return task_from_dict(json.loads(text))


def load_task(path) -> FondTask:
    return loads(Path(path).read_text(encoding="utf-8"))


def save_task(task: FondTask, path) -> None:
    Path(path).write_text(dumps(task), encoding="utf-8")


def task_hash(task: FondTask) -> str:
    """Short content hash identifying a task, written into policy files."""
    canonical = json.dumps(task_to_dict(task), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]
