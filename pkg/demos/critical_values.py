"""
Critical values and the depth a search needs
============================================

The ``fig2`` task has eight reachable states and exactly two strong cyclic
policies. Their critical values differ, and the smaller one bounds how deep
an iterative search with an admissible estimate has to go.
"""

from fondidfs import SearchConfig, corpus, critical_value, idfs
from fondidfs.policy import enumerate_closed_policies, verify_strong_cyclic

task = corpus.fig2()
labels = {corpus.fig2_state(task, name): name for name in corpus.FIG2_STATES}

# every closed policy, keeping the strong cyclic ones
for pi in enumerate_closed_policies(task):
    if not verify_strong_cyclic(task, pi):
        continue
    mapping = ", ".join(f"{labels[s]}->{a.name}" for s, a in sorted(pi.items(), key=lambda kv: labels[kv[0]]))
    print(f"cv = {critical_value(task, pi)}   {{{mapping}}}")

# the search stops at the first bound that admits a policy
for heuristic in ("blind", "hmax", "hadd", "hff"):
    for aggregator in ("min", "max"):
        cfg = SearchConfig(heuristic, aggregator)
        res = idfs(task, cfg)
        print(f"{cfg.label:18s} bounds={res.stats.bounds}  |pi|={len(res.policy)}")
