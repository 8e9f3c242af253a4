"""Ground FOND task model: variables, states, non-deterministic actions.

States are plain tuples of value indices, one per variable, so they hash by
value and can be used directly as dictionary keys. Partial states keep their
assignments as a tuple of ``(variable, value)`` pairs sorted by variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "INF",
    "SATURATED",
    "Variable",
    "VariableTable",
    "State",
    "PartialState",
    "NondetAction",
    "FondTask",
    "DetAction",
    "DetTask",
    "NotApplicableError",
    "TaskError",
    "satisfies",
    "apply_effect",
    "successors",
    "applicable_actions",
    "determinize",
    "state_space_bound",
]

INF = math.inf
# Returned by state_space_bound when the product of domain sizes overflows 64 bits.
SATURATED = 2**63 - 1

State = tuple  # tuple[int, ...], one value index per variable


class TaskError(ValueError):
    """A task violates one of the structural invariants of the model."""


class NotApplicableError(ValueError):
    """An action was applied in a state that does not satisfy its precondition."""


@dataclass(frozen=True)
class Variable:
    name: str
    values: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise TaskError(f"variable {self.name!r} has an empty domain")
        if len(set(self.values)) != len(self.values):
            raise TaskError(f"variable {self.name!r} has duplicate values")


@dataclass(frozen=True)
class VariableTable:
    variables: tuple[Variable, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(
            v if isinstance(v, Variable) else Variable(v[0], tuple(v[1])) for v in self.variables
        )
        object.__setattr__(self, "variables", variables)
        index = {v.name: i for i, v in enumerate(variables)}
        if len(index) != len(variables):
            raise TaskError("variable names must be unique")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self.variables)

    def __getitem__(self, i: int) -> Variable:
        return self.variables[i]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise TaskError(f"unknown variable {name!r}") from None

    def value_index(self, var: int, value: str) -> int:
        try:
            return self.variables[var].values.index(value)
        except ValueError:
            raise TaskError(
                f"value {value!r} not in domain of {self.variables[var].name!r}"
            ) from None

    def domain_sizes(self) -> list[int]:
        return [len(v.values) for v in self.variables]

    def is_propositional(self) -> bool:
        """True when every variable is a ``false``/``true`` fact."""
        return all(v.values == ("false", "true") for v in self.variables)


@dataclass(frozen=True, order=True)
class PartialState:
    """Assignment to a subset of the variables; unlisted variables are undefined."""

    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        items = tuple(sorted((int(v), int(x)) for v, x in self.items))
        for (v1, _), (v2, _) in zip(items, items[1:]):
            if v1 == v2:
                raise TaskError(f"variable {v1} assigned twice in partial state")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, assignment: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> PartialState:
        if isinstance(assignment, Mapping):
            assignment = assignment.items()
        return cls(tuple(assignment))

    def vars(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.items)

    def get(self, var: int, default=None):
        for v, x in self.items:
            if v == var:
                return x
        return default

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def issubset(self, other: PartialState) -> bool:
        return set(self.items) <= set(other.items)


@dataclass(frozen=True)
class NondetAction:
    name: str
    precondition: PartialState
    effects: tuple[PartialState, ...]
    cost: int = 1

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))
        if not self.effects:
            raise TaskError(f"action {self.name!r} has no effects")
        if self.cost != 1:
            raise TaskError("only unit action costs are supported")

    @property
    def is_deterministic(self) -> bool:
        return len(self.effects) == 1


def satisfies(s: State, p: PartialState) -> bool:
    for v, x in p.items:
        if s[v] != x:
            return False
    return True


def apply_effect(s: State, eff: PartialState) -> State:
    if not eff.items:
        return s
    out = list(s)
    for v, x in eff.items:
        out[v] = x
    return tuple(out)


def successors(s: State, a: NondetAction) -> tuple[State, ...]:
    """Successor set of applying ``a`` in ``s``.

    Duplicates are removed; the remaining states keep the order of the
    effects that produced them, which the search relies on for determinism.
    """
    if not satisfies(s, a.precondition):
        raise NotApplicableError(f"action {a.name!r} is not applicable in state {s}")
    seen = {}
    for eff in a.effects:
        seen.setdefault(apply_effect(s, eff), None)
    return tuple(seen)


@dataclass(frozen=True)
class FondTask:
    variables: VariableTable
    init: State
    goal: PartialState
    actions: tuple[NondetAction, ...]
    name: str = "task"
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.variables, VariableTable):
            object.__setattr__(self, "variables", VariableTable(tuple(self.variables)))
        object.__setattr__(self, "init", tuple(self.init))
        object.__setattr__(self, "actions", tuple(self.actions))
        sizes = self.variables.domain_sizes()
        if len(self.init) != len(sizes):
            raise TaskError("initial state must assign every variable")
        for v, x in enumerate(self.init):
            if not 0 <= x < sizes[v]:
                raise TaskError(f"initial value {x} out of range for {self.variables[v].name!r}")
        _check_partial(self.goal, sizes, "goal")
        by_name = {}
        for a in self.actions:
            if a.name in by_name:
                raise TaskError(f"duplicate action name {a.name!r}")
            by_name[a.name] = a
            _check_partial(a.precondition, sizes, f"precondition of {a.name!r}")
            for eff in a.effects:
                _check_partial(eff, sizes, f"effect of {a.name!r}")
        object.__setattr__(self, "_by_name", by_name)

    def action(self, name: str) -> NondetAction:
        try:
            return self._by_name[name]
        except KeyError:
            raise TaskError(f"unknown action {name!r}") from None

    def is_goal(self, s: State) -> bool:
        return satisfies(s, self.goal)

    def applicable(self, s: State) -> list[NondetAction]:
        return applicable_actions(self, s)

    def state_from(self, assignment: Mapping[str, str]) -> State:
        """Build a state from a ``{variable name: value name}`` mapping."""
        vt = self.variables
        values = [None] * len(vt)
        for name, value in assignment.items():
            i = vt.index(name)
            values[i] = vt.value_index(i, value)
        if any(x is None for x in values):
            raise TaskError("assignment does not cover every variable")
        return tuple(values)

    def describe(self, s: State) -> dict[str, str]:
        return {v.name: v.values[x] for v, x in zip(self.variables, s)}


def _check_partial(p: PartialState, sizes: Sequence[int], what: str) -> None:
    for v, x in p.items:
        if not 0 <= v < len(sizes):
            raise TaskError(f"{what} refers to undeclared variable {v}")
        if not 0 <= x < sizes[v]:
            raise TaskError(f"{what} assigns out-of-range value {x} to variable {v}")


def applicable_actions(task: FondTask, s: State) -> list[NondetAction]:
    return [a for a in task.actions if satisfies(s, a.precondition)]


@dataclass(frozen=True)
class DetAction:
    name: str
    precondition: PartialState
    effect: PartialState
    source: int  # index of the non-deterministic action in the FOND task
    outcome: int  # index into that action's effect list


@dataclass(frozen=True)
class DetTask:
    variables: VariableTable
    init: State
    goal: PartialState
    actions: tuple[DetAction, ...]

    def is_goal(self, s: State) -> bool:
        return satisfies(s, self.goal)


def determinize(task: FondTask) -> DetTask:
    """All-outcomes determinization: one deterministic action per effect."""
    actions = []
    for i, a in enumerate(task.actions):
        for k, eff in enumerate(a.effects):
            name = a.name if a.is_deterministic else f"{a.name}#{k}"
            actions.append(DetAction(name, a.precondition, eff, i, k))
    return DetTask(task.variables, task.init, task.goal, tuple(actions))


def state_space_bound(task: FondTask) -> int:
    """Number of total assignments, saturating at ``SATURATED``."""
    total = 1
    for size in task.variables.domain_sizes():
        total *= size
        if total > SATURATED:
            return SATURATED
    return total
