"""Strong cyclic FOND planning by iterative depth-first search."""

from .heuristics import Aggregator, Heuristic, HeuristicKind
from .pddl import load_pddl
from .policy import (
    OracleCaps,
    Policy,
    critical_value,
    cv_star_oracle,
    format_policy,
    parse_policy,
    simulate_fair,
    solvability_oracle,
    verify_strong_cyclic,
)
from .search import Outcome, SearchConfig, SearchResult, SearchStats, idfs
from .task import INF, FondTask, NondetAction, PartialState, Variable, VariableTable, determinize
from .taskio import load_task, save_task

__version__ = "0.1.0"

__all__ = [
    "Aggregator",
    "Heuristic",
    "HeuristicKind",
    "load_pddl",
    "OracleCaps",
    "Policy",
    "critical_value",
    "cv_star_oracle",
    "format_policy",
    "parse_policy",
    "simulate_fair",
    "solvability_oracle",
    "verify_strong_cyclic",
    "Outcome",
    "SearchConfig",
    "SearchResult",
    "SearchStats",
    "idfs",
    "INF",
    "FondTask",
    "NondetAction",
    "PartialState",
    "Variable",
    "VariableTable",
    "determinize",
    "load_task",
    "save_task",
]
