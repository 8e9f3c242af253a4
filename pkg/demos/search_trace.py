"""
Watching the fixed point at work
================================

In ``fig1`` the action ``a`` at s10 leads either to s11, which can reach the
goal, or back to s12, whose only move returns to an ancestor. A listener
shows s12 failing on the first pass and succeeding once s11 is solved.
"""

from fondidfs import SearchConfig, corpus, idfs

task = corpus.fig1()
name = {(i,): s for i, s in enumerate(corpus.FIG1_STATES)}
log = []


def listener(event, **info):
    if event == "iteration":
        log.append(f"-- bound {info['bound']}")
    elif event == "exit" and info["reason"] != "base":
        log.append(f"{name[info['state']]:>4s} {'solved' if info['solved'] else 'unsolved'} ({info['reason']})")
    elif event == "exit":
        log.append(f"{name[info['state']]:>4s} solved (goal, policy or solved ancestor)")
    elif event == "map":
        log.append(f"{name[info['state']]:>4s} -> {info['action'].name}")


res = idfs(task, SearchConfig("hmax", "min"), listener=listener)
print("\n".join(log))
print(res.outcome, "with", len(res.policy), "mappings")
