"""FOND-PDDL frontend: parse domain/problem files and ground them."""

from pathlib import Path

from .ast import ActionSchema, DomainAst, EffectAnd, EffectOneOf, Literal, Predicate, ProblemAst, effect_outcomes
from .grounding import GroundingError, GroundingReport, fact_name, ground
from .parser import PDDLError, PDDLSyntaxError, parse_domain, parse_problem
from .printer import format_domain, format_problem

__all__ = [
    "ActionSchema",
    "DomainAst",
    "EffectAnd",
    "EffectOneOf",
    "Literal",
    "Predicate",
    "ProblemAst",
    "effect_outcomes",
    "GroundingError",
    "GroundingReport",
    "fact_name",
    "ground",
    "PDDLError",
    "PDDLSyntaxError",
    "parse_domain",
    "parse_problem",
    "format_domain",
    "format_problem",
    "load_pddl",
]


def load_pddl(domain_path, problem_path, max_actions=None):
    """Parse and ground a domain/problem file pair. Returns ``(task, report)``."""
    dom = parse_domain(Path(domain_path).read_text(encoding="utf-8"))
    prob = parse_problem(Path(problem_path).read_text(encoding="utf-8"), dom)
    if max_actions is None:
        return ground(dom, prob)
    return ground(dom, prob, max_actions)
