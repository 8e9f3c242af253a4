import pytest

from fondidfs import corpus, idfs
from fondidfs.pddl import (
    EffectOneOf,
    GroundingError,
    PDDLError,
    PDDLSyntaxError,
    effect_outcomes,
    format_domain,
    format_problem,
    ground,
    load_pddl,
    parse_domain,
    parse_problem,
)
from fondidfs.pddl.ast import count_oneof
from fondidfs.policy import solvability_oracle, verify_strong_cyclic
from fondidfs.taskio import dumps, loads

DATA = corpus.DATA_DIR
PAIRS = [(e.id, e.domain, e.problem) for e in corpus.corpus() if e.domain]

MINI = """
(define (domain mini)
  (:requirements :strips :typing :non-deterministic)
  (:types thing)
  (:predicates (p ?x - thing) (q ?x - thing) (r))
  (:action poke
    :parameters (?x - thing)
    :precondition (p ?x)
    :effect (oneof (and (q ?x) (r)) (not (p ?x)))))
"""

MINI_PROBLEM = """
(define (problem mini-1)
  (:domain mini)
  (:objects o1 o2 - thing)
  (:init (p o1))
  (:goal (q o1)))
"""


def _domain(body, requirements=":strips :typing"):
    return f"(define (domain d) (:requirements {requirements}) (:types obj) {body})"


def test_minimal_deterministic_domain():
    dom = parse_domain(_domain("(:predicates (p)) (:action a :parameters () :precondition () :effect (p))"))
    assert len(dom.actions) == 1
    assert count_oneof(dom.actions[0].effect) == 0


def test_oneof_outcomes():
    dom = parse_domain(MINI)
    (schema,) = dom.actions
    assert isinstance(schema.effect, EffectOneOf)
    outcomes = schema.outcomes()
    assert len(outcomes) == 2
    assert {l.predicate for l in outcomes[0]} == {"q", "r"}


def test_sibling_oneofs_multiply():
    dom = parse_domain(
        _domain(
            "(:predicates (p) (q) (r) (s)) (:action a :parameters () :precondition ()"
            " :effect (and (oneof (p) (q)) (oneof (r) (s))))",
            ":strips :non-deterministic",
        )
    )
    assert len(effect_outcomes(dom.actions[0].effect)) == 4


def test_syntax_error_position():
    with pytest.raises(PDDLSyntaxError) as err:
        parse_domain("(define (domain d)\n  (:predicates (p)")
    assert err.value.line >= 1 and err.value.col >= 1
    with pytest.raises(PDDLSyntaxError) as err:
        parse_domain("(define (domain d))\n)")
    assert err.value.line == 2


def test_unsupported_requirement_is_named():
    with pytest.raises(PDDLError, match=":conditional-effects"):
        parse_domain(_domain("", ":strips :conditional-effects"))


def test_rejected_constructs():
    with pytest.raises(PDDLError, match="nested oneof"):
        parse_domain(_domain(
            "(:predicates (p) (q) (r)) (:action a :parameters () :precondition ()"
            " :effect (oneof (p) (oneof (q) (r))))", ":strips :non-deterministic"))
    with pytest.raises(PDDLSyntaxError):
        parse_domain(_domain("(:predicates (p)) (:action a :parameters () :precondition () :effect (oneof (p)))"))
    with pytest.raises(PDDLError, match="when"):
        parse_domain(_domain("(:predicates (p)) (:action a :parameters () :precondition () :effect (when (p) (p)))"))


def test_domain_name_checks():
    with pytest.raises(PDDLError):
        parse_domain(_domain("(:predicates (p)) (:action a :parameters () :precondition (zz) :effect (p))"))
    with pytest.raises(PDDLError):
        parse_domain(_domain("(:predicates (p ?x - obj)) (:action a :parameters (?x - obj) :precondition () :effect (p))"))
    with pytest.raises(PDDLError):
        parse_domain(_domain("(:predicates (p ?x - nosuch))"))


def test_problem_examples():
    dom = parse_domain(MINI)
    prob = parse_problem(MINI_PROBLEM, dom)
    assert len(prob.objects) == 2 and len(prob.goal) == 1
    with pytest.raises(PDDLError, match="o9"):
        parse_problem(MINI_PROBLEM.replace("(:goal (q o1))", "(:goal (q o9))"), dom)
    with pytest.raises(PDDLError):
        parse_problem(MINI_PROBLEM.replace("(:init (p o1))", "(:init (p o1 o2))"), dom)
    with pytest.raises(PDDLError):
        parse_problem(MINI_PROBLEM.replace("(:init (p o1))", "(:init (zz o1))"), dom)
    with pytest.raises(PDDLError):
        parse_problem(MINI_PROBLEM.replace("- thing)", "- gadget)"), dom)
    empty = parse_problem(MINI_PROBLEM.replace("(:goal (q o1))", "(:goal (and))"), dom)
    assert empty.goal == ()
    task, _ = ground(dom, empty)
    assert len(task.goal) == 0 and task.is_goal(task.init)


def test_grounding_counts_and_pruning():
    dom = parse_domain(
        _domain(
            "(:predicates (at ?x - obj) (never ?x - obj))"
            " (:action move :parameters (?a - obj ?b - obj) :precondition (at ?a) :effect (and (at ?b) (not (at ?a))))",
        )
    )
    prob = parse_problem("(define (problem p) (:domain d) (:objects a b - obj) (:init (at a)) (:goal (at b)))", dom)
    task, report = ground(dom, prob)
    assert report.actions_before == 4
    assert report.actions_after <= 4
    names = {v.name for v in task.variables}
    assert names == {"(at a)", "(at b)"}
    assert not any("never" in n for n in names)
    assert any("never" in w for w in report.warnings)
    with pytest.raises(GroundingError, match="3"):
        ground(dom, prob, max_actions=3)


def test_grounding_oneof_with_nested_and():
    dom = parse_domain(MINI)
    task, _ = ground(dom, parse_problem(MINI_PROBLEM, dom))
    poke = task.action("(poke o1)")
    assert len(poke.effects) == 2
    first = {task.variables[v].name: x for v, x in poke.effects[0]}
    assert first == {"(q o1)": 1, "(r)": 1}
    second = {task.variables[v].name: x for v, x in poke.effects[1]}
    assert second == {"(p o1)": 0}


def test_oneof_without_requirement_warns():
    text = MINI.replace(" :non-deterministic", "")
    dom = parse_domain(text)
    _, report = ground(dom, parse_problem(MINI_PROBLEM, dom))
    assert any("non-deterministic" in w for w in report.warnings)


@pytest.mark.parametrize("entry_id,domain,problem", PAIRS)
def test_print_parse_round_trip(entry_id, domain, problem):
    dom = parse_domain((DATA / domain).read_text())
    prob = parse_problem((DATA / problem).read_text(), dom)
    dom2 = parse_domain(format_domain(dom))
    assert dom2 == dom
    assert parse_problem(format_problem(prob), dom2) == prob


@pytest.mark.parametrize("entry_id,domain,problem", PAIRS)
def test_ground_dump_load(entry_id, domain, problem):
    task, report = load_pddl(DATA / domain, DATA / problem)
    assert loads(dumps(task)) == task
    assert report.actions_after == len(task.actions)
    # every ground action name re-lifts to a schema with matching arity
    dom = parse_domain((DATA / domain).read_text())
    schemas = {a.name: len(a.parameters) for a in dom.actions}
    for a in task.actions:
        parts = a.name.strip("()").split()
        assert schemas[parts[0]] == len(parts) - 1


@pytest.mark.parametrize("entry_id,domain,problem", PAIRS)
def test_pruning_preserves_solvability(entry_id, domain, problem):
    task, _ = load_pddl(DATA / domain, DATA / problem)
    res = idfs(task)
    assert res.solved == solvability_oracle(task)
    if res.solved:
        assert verify_strong_cyclic(task, res.policy)
