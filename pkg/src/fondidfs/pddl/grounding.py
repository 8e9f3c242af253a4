"""Grounding of lifted schemas into a propositional FondTask.

Only facts reachable from the initial state in the delete relaxation (all
outcomes unioned, negative preconditions ignored) become variables, and only
actions whose positive preconditions are relaxed-reachable are kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..task import FondTask, NondetAction, PartialState, Variable, VariableTable
from .ast import DomainAst, Literal, ProblemAst, count_oneof

__all__ = ["GroundingError", "GroundingReport", "ground", "fact_name", "DEFAULT_ACTION_CAP"]

DEFAULT_ACTION_CAP = 100_000


class GroundingError(RuntimeError):
    pass


@dataclass
class GroundingReport:
    schemas: int = 0
    actions_before: int = 0  # type-consistent instantiations
    actions_after: int = 0  # kept after equality and reachability pruning
    facts: int = 0
    warnings: list = field(default_factory=list)


def fact_name(atom: tuple) -> str:
    return "(" + " ".join(atom) + ")"


@dataclass
class _GroundAction:
    name: str
    pos: list
    neg: list
    outcomes: list  # list of (adds, dels)


def _substitute(lit: Literal, binding: dict) -> tuple:
    return (lit.predicate, *(binding.get(a, a) for a in lit.args))


def ground(dom: DomainAst, prob: ProblemAst, max_actions: int = DEFAULT_ACTION_CAP) -> tuple[FondTask, GroundingReport]:
    report = GroundingReport(schemas=len(dom.actions))
    if any(count_oneof(a.effect) for a in dom.actions) and ":non-deterministic" not in dom.requirements:
        report.warnings.append("oneof effects used without :non-deterministic requirement")

    objects = list(dom.constants) + list(prob.objects)

    def of_type(t: str) -> list[str]:
        return [o for o, ot in objects if dom.is_subtype(ot, t)]

    candidates: list[_GroundAction] = []
    for schema in dom.actions:
        params = [v for v, _ in schema.parameters]
        domains = [of_type(t) for _, t in schema.parameters]
        outcomes = schema.outcomes()
        for combo in itertools.product(*domains):
            report.actions_before += 1
            if report.actions_before > max_actions:
                raise GroundingError(f"grounding exceeds the cap of {max_actions} actions")
            binding = dict(zip(params, combo))
            pos, neg, ok = [], [], True
            for lit in schema.precondition:
                atom = _substitute(lit, binding)
                if lit.predicate == "=":
                    if (atom[1] == atom[2]) != lit.positive:
                        ok = False
                        break
                    continue
                (pos if lit.positive else neg).append(atom)
            if not ok:
                continue
            ground_outcomes = []
            for outcome in outcomes:
                adds = [_substitute(l, binding) for l in outcome if l.positive]
                dels = [_substitute(l, binding) for l in outcome if not l.positive]
                ground_outcomes.append((adds, dels))
            name = fact_name((schema.name, *combo))
            candidates.append(_GroundAction(name, pos, neg, ground_outcomes))

    reached = {l.atom for l in prob.init}
    fired = [False] * len(candidates)
    changed = True
    while changed:
        changed = False
        for i, ga in enumerate(candidates):
            if fired[i] or not all(f in reached for f in ga.pos):
                continue
            fired[i] = True
            changed = True
            for adds, _ in ga.outcomes:
                reached.update(adds)
    kept = [ga for ga, f in zip(candidates, fired) if f]
    if len(kept) < len(candidates):
        report.warnings.append(f"{len(candidates) - len(kept)} ground actions are statically unreachable")

    facts = set(reached)
    facts.update(l.atom for l in prob.goal if l.positive)
    used = {p.name for p in dom.predicates if any(f[0] == p.name for f in facts)}
    for p in dom.predicates:
        if p.name not in used:
            report.warnings.append(f"predicate {p.name!r} has no reachable instance")
    order = sorted(facts)
    index = {f: i for i, f in enumerate(order)}
    vt = VariableTable(tuple(Variable(fact_name(f), ("false", "true")) for f in order))

    def partial(true_atoms, false_atoms) -> PartialState:
        items = {index[f]: 0 for f in false_atoms if f in index}
        items.update({index[f]: 1 for f in true_atoms})  # add wins over delete
        return PartialState.of(items)

    actions = []
    for ga in kept:
        pre = partial(ga.pos, ga.neg)
        effects = tuple(partial(adds, dels) for adds, dels in ga.outcomes)
        actions.append(NondetAction(ga.name, pre, effects))

    init_atoms = {l.atom for l in prob.init}
    init = tuple(1 if f in init_atoms else 0 for f in order)
    goal = partial([l.atom for l in prob.goal if l.positive], [l.atom for l in prob.goal if not l.positive])
    report.actions_after = len(actions)
    report.facts = len(order)
    return FondTask(vt, init, goal, tuple(actions), name=prob.name), report
