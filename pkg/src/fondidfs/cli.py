"""Command-line interface: ``fondidfs {solve,verify,oracle,bench}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .heuristics import Aggregator, HeuristicKind
from .pddl import GroundingError, PDDLError, PDDLSyntaxError, load_pddl
from .policy import (
    OracleCaps,
    OracleOverflow,
    PolicyFormatError,
    critical_value,
    cv_star_oracle,
    format_policy,
    parse_policy,
    simulate_fair,
    solvability_oracle,
    verify_strong_cyclic,
)
from .search import Outcome, SearchConfig, idfs
from .task import INF, TaskError
from .taskio import dumps, load_task

EXIT_SOLVED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_POLICY = 3
EXIT_ORACLE_CAP = 4
EXIT_UNSOLVABLE = 10
EXIT_UNSOLVED = 11
EXIT_LIMIT = 12

_OUTCOME_EXIT = {
    Outcome.SOLVED: EXIT_SOLVED,
    Outcome.UNSOLVABLE: EXIT_UNSOLVABLE,
    Outcome.UNSOLVED: EXIT_UNSOLVED,
    Outcome.RESOURCE_LIMIT: EXIT_LIMIT,
}


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _add_task_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("domain", nargs="?", help="domain PDDL file")
    p.add_argument("problem", nargs="?", help="problem PDDL file")
    p.add_argument("--task", help="task in JSON format instead of PDDL")


def _load(args):
    if args.task:
        if args.domain or args.problem:
            raise _Usage("give either --task or a domain/problem pair, not both")
        return load_task(args.task)
    if not (args.domain and args.problem):
        raise _Usage("a domain and a problem file (or --task) are required")
    return load_pddl(args.domain, args.problem)[0]


def _num(x):
    return "inf" if x == INF else x


def _stats_dict(result, task_name: str, cfg: SearchConfig) -> dict:
    st = result.stats
    return {
        "task": task_name,
        "config": cfg.label,
        "outcome": result.outcome.value,
        "T": round(st.wall_time, 6),
        "policy_size": len(result.policy) if result.policy is not None else None,
        "b_init": _num(st.initial_bound),
        "b_final": _num(st.final_bound),
        "iterations": st.iterations,
        "calls": st.calls,
        "bounds": [_num(b) for b in st.bounds],
        "fixed_point_rounds": st.fixed_point_rounds,
    }


def cmd_solve(args) -> int:
    task = _load(args)
    if args.dump_task:
        Path(args.dump_task).write_text(dumps(task), encoding="utf-8")
    cfg = SearchConfig(
        HeuristicKind(args.heuristic),
        Aggregator(args.aggregation),
        args.pruning,
        time_limit=args.timeout,
        max_calls=args.max_calls,
        memory_limit_mb=args.memory_limit,
    )
    result = idfs(task, cfg)
    if result.outcome is Outcome.RESOURCE_LIMIT:
        _err(f"resource limit: {result.reason}")
    if args.stats == "json":
        print(json.dumps(_stats_dict(result, task.name, cfg)))
    elif args.stats == "csv":
        rec = _stats_dict(result, task.name, cfg)
        row = bench.RunRecord(*(rec[c] for c in bench.CSV_COLUMNS))
        sys.stdout.write(bench.to_csv([row]))
    else:
        print(f"outcome: {result.outcome.value}")
    if result.solved:
        if args.verify and not verify_strong_cyclic(task, result.policy):
            _err("returned policy failed strong cyclic verification")
            return EXIT_FAILED
        if args.policy_out:
            Path(args.policy_out).write_text(format_policy(task, result.policy), encoding="utf-8")
        if args.seed is not None:
            sim = simulate_fair(task, result.policy, args.seed, args.max_steps)
            print(f"simulation: {sim.status} after {sim.steps} steps", file=sys.stderr)
    return _OUTCOME_EXIT[result.outcome]


def cmd_verify(args) -> int:
    task = _load(args)
    try:
        pi = parse_policy(task, Path(args.policy).read_text(encoding="utf-8"))
    except (OSError, PolicyFormatError) as exc:
        _err(f"invalid policy file: {exc}")
        return EXIT_BAD_POLICY
    ok = verify_strong_cyclic(task, pi)
    print(f"strong-cyclic: {'yes' if ok else 'no'}")
    if args.cv:
        print(f"cv: {critical_value(task, pi)}")
    return EXIT_SOLVED if ok else EXIT_FAILED


def cmd_oracle(args) -> int:
    task = _load(args)
    env = OracleCaps.from_env()
    caps = OracleCaps(args.max_states or env.max_states, args.max_candidates or env.max_candidates)
    try:
        solvable = solvability_oracle(task, caps)
        result = cv_star_oracle(task, caps)
    except OracleOverflow as exc:
        _err(f"{exc} (caps: max_states={caps.max_states}, max_candidates={caps.max_candidates})")
        return EXIT_ORACLE_CAP
    print(f"solvable: {'yes' if solvable else 'no'}")
    print(f"cv*: {result.cv_star if result.solvable else 'unsolvable'}")
    if args.count:
        print(f"policies: {result.policies}")
        print(f"candidates: {result.candidates}")
    if solvable != result.solvable:
        _err("oracles disagree on solvability")
        return EXIT_FAILED
    return EXIT_SOLVED


def cmd_bench(args) -> int:
    tasks, configs = bench.load_manifest(args.manifest)
    if args.config:
        configs = args.config
    if not configs:
        configs = ["idfs(min,hmax)"]
    for label in configs:
        bench.parse_config(label)
    records = bench.run_sweep(tasks, configs, timeout=args.timeout, jobs=args.jobs)
    text = bench.to_csv(records, bench.aggregate(records))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fondidfs", description="Strong cyclic FOND planning by iterative depth-first search.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("solve", help="search for a strong cyclic policy")
    _add_task_args(p)
    p.add_argument("--heuristic", choices=[k.value for k in HeuristicKind], default="hmax")
    p.add_argument("--aggregation", choices=[a.value for a in Aggregator], default="min")
    p.add_argument("--pruning", action="store_true", help="prune unpromising states (IDFSP)")
    p.add_argument("--timeout", type=float, default=300.0, help="wall-clock limit in seconds")
    p.add_argument("--max-calls", type=int, help="limit on recursive calls")
    p.add_argument("--memory-limit", type=int, help="advisory memory limit in MB (not enforced)")
    p.add_argument("--policy-out", help="write the policy in text format")
    p.add_argument("--stats", choices=["json", "csv"], help="print run statistics")
    p.add_argument("--verify", action="store_true", help="check the returned policy is strong cyclic")
    p.add_argument("--seed", type=int, help="simulate the policy with this seed")
    p.add_argument("--max-steps", type=int, default=10_000, help="step limit for --seed simulation")
    p.add_argument("--dump-task", help="write the ground task as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a policy file")
    _add_task_args(p)
    p.add_argument("--policy", required=True)
    p.add_argument("--cv", action="store_true", help="print the critical value")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force solvability and minimal critical value")
    _add_task_args(p)
    p.add_argument("--count", action="store_true", help="print enumerated policy counts")
    p.add_argument("--max-states", type=int)
    p.add_argument("--max-candidates", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run a manifest of tasks and configurations")
    p.add_argument("manifest")
    p.add_argument("--config", action="append", help="configuration label such as 'idfs(min,hmax)'")
    p.add_argument("--timeout", type=float, default=300.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the CSV report here instead of stdout")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _Usage("a command is required (solve, verify, oracle, bench)")
        return args.func(args)
    except _Usage as exc:
        _err(str(exc))
        return EXIT_USAGE
    except (PDDLSyntaxError, PDDLError, GroundingError, TaskError, ValueError, OSError) as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
