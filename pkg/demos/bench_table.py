"""
A small benchmark table
=======================

Run a few configurations over the bundled corpus and print the CSV report,
including one coverage row per family. Averages in those rows use only the
tasks every configuration solved.
"""

import sys

from fondidfs import corpus
from fondidfs.bench import BenchTask, aggregate, run_sweep, to_csv

tasks = []
for entry in corpus.corpus():
    paths = {k: str(corpus.DATA_DIR / v) for k, v in (("json", entry.json), ("domain", entry.domain), ("problem", entry.problem)) if v}
    tasks.append(BenchTask(entry.id, entry.family, **paths))

configs = ["idfs(min,blind)", "idfs(min,hmax)", "idfs(max,hff)", "idfsp(max,hadd)"]
records = run_sweep(tasks, configs, timeout=60, jobs=2)
sys.stdout.write(to_csv(records, aggregate(records)))
