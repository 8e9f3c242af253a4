"""Pretty-printer for domain and problem trees; its output parses back to an equal tree."""

from __future__ import annotations

from .ast import ActionSchema, DomainAst, EffectOneOf, Literal, ProblemAst

__all__ = ["format_domain", "format_problem", "format_literal"]


def format_literal(lit: Literal) -> str:
    atom = "(" + " ".join((lit.predicate, *lit.args)) + ")"
    return atom if lit.positive else f"(not {atom})"


def _typed(pairs) -> str:
    return " ".join(f"{name} - {t}" for name, t in pairs)


def _conj(lits) -> str:
    if len(lits) == 1:
        return format_literal(lits[0])
    return "(and " + " ".join(format_literal(l) for l in lits) + ")" if lits else "(and)"


def _effect(eff) -> str:
    if isinstance(eff, Literal):
        return format_literal(eff)
    head = "oneof" if isinstance(eff, EffectOneOf) else "and"
    if not eff.children:
        return f"({head})"
    return f"({head} " + " ".join(_effect(c) for c in eff.children) + ")"


def _action(a: ActionSchema) -> str:
    return (
        f"  (:action {a.name}\n"
        f"    :parameters ({_typed(a.parameters)})\n"
        f"    :precondition {_conj(a.precondition)}\n"
        f"    :effect {_effect(a.effect)})"
    )


def format_domain(dom: DomainAst) -> str:
    out = [f"(define (domain {dom.name})"]
    if dom.requirements:
        out.append("  (:requirements " + " ".join(dom.requirements) + ")")
    if dom.types:
        out.append(f"  (:types {_typed(dom.types)})")
    if dom.constants:
        out.append(f"  (:constants {_typed(dom.constants)})")
    if dom.predicates:
        preds = " ".join(
            "(" + " ".join([p.name] + [f"{v} - {t}" for v, t in p.parameters]) + ")" for p in dom.predicates
        )
        out.append(f"  (:predicates {preds})")
    out.extend(_action(a) for a in dom.actions)
    return "\n".join(out) + ")\n"


def format_problem(prob: ProblemAst) -> str:
    out = [f"(define (problem {prob.name})", f"  (:domain {prob.domain_name})"]
    if prob.objects:
        out.append(f"  (:objects {_typed(prob.objects)})")
    out.append("  (:init " + " ".join(format_literal(l) for l in prob.init) + ")")
    out.append(f"  (:goal {_conj(prob.goal)}))")
    return "\n".join(out) + "\n"
