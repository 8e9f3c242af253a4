"""Syntax trees for the supported FOND-PDDL subset."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

__all__ = [
    "Literal",
    "EffectAnd",
    "EffectOneOf",
    "Effect",
    "Predicate",
    "ActionSchema",
    "DomainAst",
    "ProblemAst",
    "effect_outcomes",
    "count_oneof",
]


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: tuple[str, ...] = ()
    positive: bool = True

    def negated(self) -> Literal:
        return Literal(self.predicate, self.args, not self.positive)

    @property
    def atom(self) -> tuple:
        return (self.predicate, *self.args)


@dataclass(frozen=True)
class EffectAnd:
    children: tuple = ()


@dataclass(frozen=True)
class EffectOneOf:
    children: tuple = ()


Effect = Union[Literal, EffectAnd, EffectOneOf]


def effect_outcomes(effect: Effect) -> list[tuple[Literal, ...]]:
    """Flatten an effect tree into its list of outcome conjunctions.

    Sibling ``oneof`` nodes under an ``and`` combine as a cartesian product.
    """
    if isinstance(effect, Literal):
        return [(effect,)]
    if isinstance(effect, EffectOneOf):
        out = []
        for child in effect.children:
            out.extend(effect_outcomes(child))
        return out
    parts = [effect_outcomes(child) for child in effect.children]
    return [tuple(itertools.chain.from_iterable(combo)) for combo in itertools.product(*parts)]


def count_oneof(effect: Effect) -> int:
    if isinstance(effect, Literal):
        return 0
    own = 1 if isinstance(effect, EffectOneOf) else 0
    return own + sum(count_oneof(c) for c in effect.children)


@dataclass(frozen=True)
class Predicate:
    name: str
    parameters: tuple[tuple[str, str], ...] = ()  # (variable, type)

    @property
    def arity(self) -> int:
        return len(self.parameters)


@dataclass(frozen=True)
class ActionSchema:
    name: str
    parameters: tuple[tuple[str, str], ...]
    precondition: tuple[Literal, ...]
    effect: Effect

    def outcomes(self) -> list[tuple[Literal, ...]]:
        return effect_outcomes(self.effect)


@dataclass(frozen=True)
class DomainAst:
    name: str
    requirements: tuple[str, ...] = ()
    types: tuple[tuple[str, str], ...] = ()  # (type, parent type)
    constants: tuple[tuple[str, str], ...] = ()
    predicates: tuple[Predicate, ...] = ()
    actions: tuple[ActionSchema, ...] = ()

    def parent_map(self) -> dict[str, str]:
        return dict(self.types)

    def is_subtype(self, t: str, ancestor: str) -> bool:
        parents = self.parent_map()
        seen = set()
        while t not in seen:
            if t == ancestor:
                return True
            seen.add(t)
            if t not in parents:
                break
            t = parents[t]
        return ancestor == "object"

    def known_type(self, t: str) -> bool:
        return t == "object" or t in self.parent_map()

    def predicate(self, name: str) -> Predicate | None:
        for p in self.predicates:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class ProblemAst:
    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...] = ()
    init: tuple[Literal, ...] = ()
    goal: tuple[Literal, ...] = ()
