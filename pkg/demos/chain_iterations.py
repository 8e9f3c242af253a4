"""
Iterations with and without an estimate
=======================================

On the chain family every step may fail and leave the agent in place. The
blind estimate starts at bound 0 and climbs one step per iteration; hmax
starts at the true distance and finishes in a single pass.
"""

from fondidfs import SearchConfig, corpus, idfs

print(f"{'k':>3s} {'i blind':>8s} {'i hmax':>7s} {'b_I hmax':>9s} {'calls blind':>12s} {'calls hmax':>11s}")
for k in range(5, 31, 5):
    task = corpus.chain(k)
    blind = idfs(task, SearchConfig("blind")).stats
    hmax = idfs(task, SearchConfig("hmax")).stats
    print(f"{k:3d} {blind.iterations:8d} {hmax.iterations:7d} {hmax.initial_bound:9d} {blind.calls:12d} {hmax.calls:11d}")
