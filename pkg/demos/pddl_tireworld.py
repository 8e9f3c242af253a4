"""
From PDDL files to a checked policy
===================================

Parse the bundled triangle tireworld, ground it, solve it, and write the
policy in the text format the ``verify`` command reads back. A few seeded
executions show the policy reaching the goal despite flat tires.
"""

from fondidfs import SearchConfig, corpus, format_policy, idfs, simulate_fair, verify_strong_cyclic
from fondidfs.pddl import load_pddl

task, report = load_pddl(corpus.DATA_DIR / "tireworld-domain.pddl", corpus.DATA_DIR / "tireworld-p1.pddl")
print(f"{report.facts} facts, {report.actions_after} of {report.actions_before} ground actions kept")
for warning in report.warnings:
    print("warning:", warning)

res = idfs(task, SearchConfig("hmax", "min"))
print(res.outcome, "bounds", res.stats.bounds, "verified:", verify_strong_cyclic(task, res.policy))
print(format_policy(task, res.policy))

for seed in range(5):
    run = simulate_fair(task, res.policy, seed, max_steps=1000)
    print(f"seed {seed}: {run.status} after {run.steps} steps")
