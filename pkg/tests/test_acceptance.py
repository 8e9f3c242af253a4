"""Acceptance criteria 1-10.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion (see ``pytest_terminal_summary`` in conftest).
"""

import functools
import random
import time

import pytest

from conftest import bfs_plan_length
from fondidfs import corpus
from fondidfs.heuristics import Aggregator, HeuristicKind, evaluate
from fondidfs.pddl import format_domain, format_problem, ground, load_pddl, parse_domain, parse_problem
from fondidfs.policy import OracleCaps, cv_star_oracle, reachable_states, solvability_oracle, verify_strong_cyclic
from fondidfs.search import Outcome, SearchConfig, idfs
from fondidfs.task import determinize
from fondidfs.taskio import dumps, loads

ALL_CONFIGS = [SearchConfig(h, agg, p) for agg in Aggregator for h in HeuristicKind for p in (False, True)]


@functools.lru_cache(maxsize=None)
def _corpus():
    return tuple((entry, entry.load()) for entry in corpus.corpus())


@functools.lru_cache(maxsize=None)
def _sweep():
    """Every configuration on every corpus task: ``[(entry, task, cfg, result)]``."""
    return tuple((entry, task, cfg, idfs(task, cfg)) for entry, task in _corpus() for cfg in ALL_CONFIGS)


@pytest.mark.criterion(1, "fig2: cv* = 3 from exactly two strong cyclic policies with cv 5 and 3, < 1 s")
def test_c1_fig2_minimal_critical_value():
    start = time.perf_counter()
    res = cv_star_oracle(corpus.fig2())
    elapsed = time.perf_counter() - start
    assert res.solvable
    assert res.cv_star == 3
    assert res.policies == 2
    assert sorted(res.critical_values) == [3, 5]
    assert elapsed < 1.0, f"{elapsed:.3f}s"


@pytest.mark.criterion(2, "IDFS(min, blind|hmax) solves every solvable corpus task with b_F <= cv*, < 30 s")
def test_c2_final_bound_at_most_cv_star():
    start = time.perf_counter()
    checked = 0
    for entry, task in _corpus():
        if not entry.solvable:
            continue
        oracle = cv_star_oracle(task, OracleCaps())
        assert oracle.solvable, entry.id
        for h in (HeuristicKind.BLIND, HeuristicKind.HMAX):
            res = idfs(task, SearchConfig(h, Aggregator.MIN))
            assert res.outcome is Outcome.SOLVED, (entry.id, h)
            assert res.stats.final_bound <= oracle.cv_star, (entry.id, h, res.stats.final_bound, oracle.cv_star)
        checked += 1
    elapsed = time.perf_counter() - start
    assert checked == sum(e.solvable for e, _ in _corpus())
    assert elapsed < 30.0, f"{elapsed:.1f}s"


@pytest.mark.criterion(3, "every Solved outcome over 2 aggregators x 4 heuristics x pruning on/off verifies")
def test_c3_soundness():
    solved = 0
    for entry, task, cfg, res in _sweep():
        assert res.outcome is not Outcome.RESOURCE_LIMIT, (entry.id, cfg.label)
        if res.solved:
            assert verify_strong_cyclic(task, res.policy), (entry.id, cfg.label)
            solved += 1
    assert solved > 0


@pytest.mark.criterion(4, "IDFS reports Unsolvable on unsolvable tasks; solvability oracle agrees both ways")
def test_c4_unsolvability():
    for entry, task in _corpus():
        oracle = solvability_oracle(task)
        assert oracle == entry.solvable, entry.id
        res = idfs(task, SearchConfig())
        if entry.solvable:
            assert res.solved, entry.id
        else:
            assert res.outcome is Outcome.UNSOLVABLE, entry.id
        assert oracle == res.solved, entry.id
    assert any(not e.solvable for e, _ in _corpus())


@pytest.mark.criterion(5, "per-iteration bounds increase by at least one on every run")
def test_c5_bounds_strictly_increase():
    runs = 0
    for entry, _, cfg, res in _sweep():
        bounds = res.stats.bounds
        for b1, b2 in zip(bounds, bounds[1:]):
            assert b2 >= b1 + 1, (entry.id, cfg.label, bounds)
        runs += 1
    assert runs == len(_corpus()) * len(ALL_CONFIGS)


@pytest.mark.criterion(6, "200 sampled states: blind <= hmax <= hadd, hmax <= hff, hmax <= BFS plan length")
def test_c6_dominance_and_admissibility():
    rng = random.Random(20240607)
    pools = []
    for entry, task in _corpus():
        pools.append((task, determinize(task), reachable_states(task)))
    for _ in range(200):
        task, det, states = rng.choice(pools)
        s = rng.choice(states)
        blind, hmax, hadd, hff = (evaluate(k, det, s) for k in HeuristicKind)
        assert blind <= hmax <= hadd
        assert hmax <= hff
        assert hmax <= bfs_plan_length(task, s)


@pytest.mark.criterion(7, "fig1 trace: s12 unsolved, s11 solved, s12 solved, then s10 -> a")
def test_c7_fig1_trace():
    task = corpus.fig1()
    idx = corpus.FIG1_STATES.index
    s10, s11, s12 = (idx("s10"),), (idx("s11"),), (idx("s12"),)
    events = []
    current = [0]

    def listener(event, **info):
        if event == "iteration":
            current[0] = info["index"]
        events.append((current[0], event, info))

    res = idfs(task, SearchConfig(HeuristicKind.HMAX, Aggregator.MIN), listener=listener)
    assert res.solved
    trace = []
    for it, event, info in events:
        if it != res.stats.iterations:
            continue
        if event == "exit" and info["state"] in (s11, s12):
            trace.append((corpus.FIG1_STATES[info["state"][0]], "solved" if info["solved"] else "unsolved"))
        elif event == "map" and info["state"] == s10:
            trace.append(("s10", info["action"].name))
    assert trace == [("s12", "unsolved"), ("s11", "solved"), ("s12", "solved"), ("s10", "a")]


@pytest.mark.criterion(8, "IDFSP(max, hadd) verifies on every solvable task and never claims Unsolvable")
def test_c8_idfsp_consistency():
    cfg = SearchConfig(HeuristicKind.HADD, Aggregator.MAX, pruning=True)
    for entry, task in _corpus():
        res = idfs(task, cfg)
        assert res.outcome is not Outcome.UNSOLVABLE, entry.id
        if entry.solvable:
            assert res.solved and verify_strong_cyclic(task, res.policy), entry.id
    for _, _, swept_cfg, res in _sweep():
        if swept_cfg.pruning:
            assert res.outcome is not Outcome.UNSOLVABLE


@pytest.mark.criterion(9, "chain-k (k = 5..30): i(hmax) <= i(blind), b_I = hmax(s0) and 0, < 10 s")
def test_c9_chain_iterations():
    start = time.perf_counter()
    for k in range(5, 31):
        task = corpus.chain(k)
        with_h = idfs(task, SearchConfig(HeuristicKind.HMAX, Aggregator.MIN))
        blind = idfs(task, SearchConfig(HeuristicKind.BLIND, Aggregator.MIN))
        assert with_h.solved and blind.solved
        assert with_h.stats.iterations <= blind.stats.iterations, k
        assert with_h.stats.initial_bound == evaluate(HeuristicKind.HMAX, determinize(task), task.init)
        assert blind.stats.initial_bound == 0
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"{elapsed:.2f}s"


@pytest.mark.criterion(10, "PDDL parse -> ground -> dump -> load is identity; tireworld-1 solved and verified < 5 s")
def test_c10_frontend_round_trip():
    pairs = [e for e in corpus.corpus() if e.domain]
    assert pairs
    for entry in pairs:
        dom = parse_domain((corpus.DATA_DIR / entry.domain).read_text())
        prob = parse_problem((corpus.DATA_DIR / entry.problem).read_text(), dom)
        assert parse_domain(format_domain(dom)) == dom
        assert parse_problem(format_problem(prob), dom) == prob
        task, _ = ground(dom, prob)
        assert loads(dumps(task)) == task, entry.id
    start = time.perf_counter()
    task, _ = load_pddl(corpus.DATA_DIR / "tireworld-domain.pddl", corpus.DATA_DIR / "tireworld-p1.pddl")
    res = idfs(task, SearchConfig())
    ok = res.solved and verify_strong_cyclic(task, res.policy)
    elapsed = time.perf_counter() - start
    assert ok
    assert elapsed < 5.0, f"{elapsed:.2f}s"
