"""Benchmark sweeps over (task, configuration) pairs with CSV reports.

Per-family aggregate rows follow the usual convention for planner tables:
coverage counts every solved task, while the averages only use tasks solved
by every configuration in the sweep.
"""

from __future__ import annotations

import csv
import io
import json
import re
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .heuristics import Aggregator, HeuristicKind
from .search import Outcome, SearchConfig, idfs
from .task import INF, FondTask

__all__ = ["CSV_COLUMNS", "RunRecord", "BenchTask", "parse_config", "load_manifest", "run_one", "run_sweep", "aggregate", "to_csv"]

CSV_COLUMNS = ["task", "config", "outcome", "T", "policy_size", "b_init", "b_final", "iterations", "calls"]

_LABEL = re.compile(r"^(idfsp?)\((min|max),(blind|hmax|hadd|hff)\)$")


def parse_config(label: str, **limits) -> SearchConfig:
    """``idfs(min,hmax)`` / ``idfsp(max,hadd)`` → SearchConfig."""
    m = _LABEL.match(label.replace(" ", ""))
    if not m:
        raise ValueError(f"bad configuration label {label!r}")
    algo, agg, h = m.groups()
    return SearchConfig(HeuristicKind(h), Aggregator(agg), algo == "idfsp", **limits)


@dataclass
class RunRecord:
    task: str
    config: str
    outcome: str
    T: float
    policy_size: int | None = None
    b_init: float | None = None
    b_final: float | None = None
    iterations: int = 0
    calls: int = 0
    family: str = ""

    @property
    def solved(self) -> bool:
        return self.outcome == Outcome.SOLVED.value


@dataclass(frozen=True)
class BenchTask:
    id: str
    family: str
    json: str | None = None
    domain: str | None = None
    problem: str | None = None

    def load(self) -> FondTask:
        from .pddl import load_pddl
        from .taskio import load_task

        if self.json:
            return load_task(self.json)
        return load_pddl(self.domain, self.problem)[0]


def load_manifest(path) -> tuple[list[BenchTask], list[str]]:
    """Read a manifest: ``{"tasks": [...], "configs": [labels]}``; paths are relative to the file."""
    path = Path(path)
    data = json.loads(path.read_text())
    base = path.parent
    tasks = []
    for item in data.get("tasks", []):
        resolved = {k: str(base / item[k]) for k in ("json", "domain", "problem") if item.get(k)}
        tasks.append(BenchTask(item["id"], item.get("family", item["id"]), **resolved))
    configs = list(data.get("configs", []))
    return tasks, configs


def run_one(bt: BenchTask, label: str, timeout: float | None = None) -> RunRecord:
    try:
        cfg = parse_config(label, time_limit=timeout)
        task = bt.load()
        result = idfs(task, cfg)
    except Exception as exc:  # a broken task must not abort the sweep
        return RunRecord(bt.id, label, f"error: {exc}", 0.0, family=bt.family)
    st = result.stats
    return RunRecord(
        bt.id,
        label,
        result.outcome.value,
        st.wall_time,
        len(result.policy) if result.policy is not None else None,
        st.initial_bound,
        st.final_bound,
        st.iterations,
        st.calls,
        bt.family,
    )


def _run_args(args):
    return run_one(*args)


def run_sweep(tasks: list[BenchTask], configs: list[str], timeout: float | None = None, jobs: int = 1) -> list[RunRecord]:
    work = [(bt, label, timeout) for bt in tasks for label in configs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_args, work))
    return [run_one(*w) for w in work]


def _mean(values):
    values = [v for v in values if v is not None]
    return statistics.fmean(values) if values else None


def aggregate(records: list[RunRecord]) -> list[RunRecord]:
    """One row per (family, config): coverage plus means over the commonly solved tasks."""
    configs = list(dict.fromkeys(r.config for r in records))
    families = list(dict.fromkeys(r.family for r in records))
    rows = []
    for fam in families:
        fam_records = [r for r in records if r.family == fam]
        tasks = list(dict.fromkeys(r.task for r in fam_records))
        common = {
            t for t in tasks if all(any(r.task == t and r.config == c and r.solved for r in fam_records) for c in configs)
        }
        for c in configs:
            mine = [r for r in fam_records if r.config == c]
            coverage = sum(r.solved for r in mine)
            sel = [r for r in mine if r.task in common]
            rows.append(
                RunRecord(
                    f"[{fam}]",
                    c,
                    f"C={coverage}",
                    _mean([r.T for r in sel]),
                    _mean([r.policy_size for r in sel]),
                    _mean([r.b_init for r in sel]),
                    _mean([r.b_final for r in sel]),
                    _mean([r.iterations for r in sel]),
                    _mean([r.calls for r in sel]),
                    fam,
                )
            )
    return rows


def _cell(value):
    if value is None:
        return ""
    if value == INF:
        return "inf"
    if isinstance(value, float):
        return f"{value:.4f}".rstrip("0").rstrip(".") if value != int(value) else str(int(value))
    return str(value)


def to_csv(records: list[RunRecord], aggregates: list[RunRecord] = ()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in list(records) + list(aggregates):
        writer.writerow([_cell(getattr(r, col)) for col in CSV_COLUMNS])
    return buf.getvalue()
