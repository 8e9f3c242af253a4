"""Parser for typed STRIPS domains and problems with ``oneof`` effects."""

from __future__ import annotations

from .ast import ActionSchema, DomainAst, EffectAnd, EffectOneOf, Literal, Predicate, ProblemAst
from .sexpr import PDDLSyntaxError, SList, Sym, read_sexpr

__all__ = ["PDDLError", "PDDLSyntaxError", "SUPPORTED_REQUIREMENTS", "parse_domain", "parse_problem"]

SUPPORTED_REQUIREMENTS = (":strips", ":typing", ":non-deterministic", ":negative-preconditions", ":equality")


class PDDLError(ValueError):
    """Well-formed input that the frontend cannot accept (unknown names, unsupported features)."""


def _pos(node) -> tuple[int, int]:
    return getattr(node, "line", 0), getattr(node, "col", 0)


def _fail(message: str, node) -> PDDLSyntaxError:
    return PDDLSyntaxError(message, *_pos(node))


def _expect_list(node, what: str) -> SList:
    if not isinstance(node, SList):
        raise _fail(f"expected {what}", node)
    return node


def _expect_sym(node, what: str) -> Sym:
    if not isinstance(node, Sym):
        raise _fail(f"expected {what}", node)
    return node


def _typed_list(items, what: str) -> list[tuple[str, str]]:
    """``a b - t c`` → [(a, t), (b, t), (c, object)]."""
    out = []
    pending = []
    i = 0
    while i < len(items):
        tok = _expect_sym(items[i], what)
        if tok == "-":
            if i + 1 >= len(items):
                raise _fail("missing type after '-'", tok)
            typ = items[i + 1]
            if isinstance(typ, SList):
                raise PDDLError(f"'either' types are not supported (line {typ.line})")
            out.extend((name, str(typ)) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(str(tok))
            i += 1
    out.extend((name, "object") for name in pending)
    return out


def _sections(root: SList, kind: str) -> tuple[str, list]:
    if len(root) < 2 or root[0] != "define":
        raise _fail("expected (define ...)", root)
    header = _expect_list(root[1], f"({kind} <name>)")
    if len(header) != 2 or header[0] != kind:
        raise _fail(f"expected ({kind} <name>)", header)
    return str(_expect_sym(header[1], "name")), list(root[2:])


def _literal(node, allow_vars: bool = True) -> Literal:
    node = _expect_list(node, "literal")
    if not node:
        raise _fail("empty literal", node)
    if node[0] == "not":
        if len(node) != 2:
            raise _fail("'not' takes exactly one argument", node)
        return _literal(node[1], allow_vars).negated()
    if isinstance(node[0], SList):
        raise _fail("expected predicate name", node)
    args = tuple(str(_expect_sym(a, "argument")) for a in node[1:])
    if not allow_vars:
        for a, raw in zip(args, node[1:]):
            if a.startswith("?"):
                raise _fail(f"variable {a} in ground literal", raw)
    return Literal(str(node[0]), args)


def _conjunction(node, allow_vars: bool = True) -> tuple[Literal, ...]:
    node = _expect_list(node, "condition")
    if not node:
        return ()
    if node[0] == "and":
        out = []
        for child in node[1:]:
            out.extend(_conjunction(child, allow_vars))
        return tuple(out)
    if node[0] in ("or", "imply", "exists", "forall", "when"):
        raise PDDLError(f"'{node[0]}' conditions are not supported (line {node.line})")
    return (_literal(node, allow_vars),)


def _effect(node, inside_oneof: bool = False):
    node = _expect_list(node, "effect")
    if not node:
        return EffectAnd(())
    head = node[0]
    if head == "and":
        children = []
        for child in node[1:]:
            eff = _effect(child, inside_oneof)
            if isinstance(eff, EffectAnd):
                children.extend(eff.children)
            else:
                children.append(eff)
        return EffectAnd(tuple(children))
    if head == "oneof":
        if inside_oneof:
            raise PDDLError(f"nested oneof is not supported (line {node.line})")
        if len(node) < 3:
            raise _fail("oneof needs at least two alternatives", node)
        return EffectOneOf(tuple(_effect(child, True) for child in node[1:]))
    if head in ("when", "forall", "increase", "decrease", "probabilistic"):
        raise PDDLError(f"'{head}' effects are not supported (line {node.line})")
    return _literal(node)


def _action(items: SList) -> ActionSchema:
    name = str(_expect_sym(items[1], "action name")) if len(items) > 1 else None
    if name is None:
        raise _fail("action without a name", items)
    fields = {}
    rest = list(items[2:])
    if len(rest) % 2:
        raise _fail("action fields must be ':key value' pairs", items)
    for key, value in zip(rest[::2], rest[1::2]):
        key = _expect_sym(key, "action field")
        if key not in (":parameters", ":precondition", ":effect"):
            raise _fail(f"unknown action field {key}", key)
        fields[str(key)] = value
    params = _typed_list(_expect_list(fields.get(":parameters", SList()), "parameter list"), "parameter")
    pre = _conjunction(fields[":precondition"]) if ":precondition" in fields else ()
    eff = _effect(fields[":effect"]) if ":effect" in fields else EffectAnd(())
    schema = ActionSchema(name, tuple(params), pre, eff)
    _check_bound(schema, items)
    return schema


def _check_bound(schema: ActionSchema, node) -> None:
    bound = {v for v, _ in schema.parameters}
    lits = list(schema.precondition)
    for outcome in schema.outcomes():
        lits.extend(outcome)
    for lit in lits:
        for a in lit.args:
            if a.startswith("?") and a not in bound:
                raise PDDLError(f"unbound variable {a} in action {schema.name!r} (line {node.line})")


def parse_domain(text: str) -> DomainAst:
    name, sections = _sections(read_sexpr(text), "domain")
    requirements, types, constants, predicates, actions = [], [], [], [], []
    for sec in sections:
        sec = _expect_list(sec, "domain section")
        if not sec:
            raise _fail("empty section", sec)
        key = sec[0]
        if key == ":requirements":
            for req in sec[1:]:
                req = _expect_sym(req, "requirement")
                if req not in SUPPORTED_REQUIREMENTS:
                    raise PDDLError(f"unsupported requirement {req}")
                requirements.append(str(req))
        elif key == ":types":
            types.extend(_typed_list(sec[1:], "type"))
        elif key == ":constants":
            constants.extend(_typed_list(sec[1:], "constant"))
        elif key == ":predicates":
            for p in sec[1:]:
                p = _expect_list(p, "predicate signature")
                if not p or isinstance(p[0], SList):
                    raise _fail("expected predicate name", p)
                predicates.append(Predicate(str(p[0]), tuple(_typed_list(p[1:], "predicate parameter"))))
        elif key == ":action":
            actions.append(_action(sec))
        else:
            raise _fail(f"unsupported domain section {key}", sec)
    dom = DomainAst(name, tuple(requirements), tuple(types), tuple(constants), tuple(predicates), tuple(actions))
    _check_domain(dom)
    return dom


def _check_domain(dom: DomainAst) -> None:
    for t, parent in dom.types:
        if not dom.known_type(parent):
            raise PDDLError(f"unknown type {parent!r}")
    for obj, t in dom.constants:
        if not dom.known_type(t):
            raise PDDLError(f"unknown type {t!r} for constant {obj!r}")
    for pred in dom.predicates:
        for _, t in pred.parameters:
            if not dom.known_type(t):
                raise PDDLError(f"unknown type {t!r} in predicate {pred.name!r}")
    names = [a.name for a in dom.actions]
    if len(set(names)) != len(names):
        raise PDDLError("duplicate action names")
    for schema in dom.actions:
        for _, t in schema.parameters:
            if not dom.known_type(t):
                raise PDDLError(f"unknown type {t!r} in action {schema.name!r}")
        lits = list(schema.precondition) + [l for o in schema.outcomes() for l in o]
        for lit in lits:
            if lit.predicate == "=":
                if len(lit.args) != 2:
                    raise PDDLError("equality takes two arguments")
                continue
            pred = dom.predicate(lit.predicate)
            if pred is None:
                raise PDDLError(f"unknown predicate {lit.predicate!r} in action {schema.name!r}")
            if pred.arity != len(lit.args):
                raise PDDLError(f"arity mismatch for {lit.predicate!r} in action {schema.name!r}")


def parse_problem(text: str, dom: DomainAst) -> ProblemAst:
    name, sections = _sections(read_sexpr(text), "problem")
    domain_name = None
    objects, init, goal = [], [], ()
    for sec in sections:
        sec = _expect_list(sec, "problem section")
        if not sec:
            raise _fail("empty section", sec)
        key = sec[0]
        if key == ":domain":
            domain_name = str(_expect_sym(sec[1], "domain name"))
        elif key == ":objects":
            objects.extend(_typed_list(sec[1:], "object"))
        elif key == ":init":
            for lit in sec[1:]:
                lit = _literal(lit, allow_vars=False)
                if not lit.positive:
                    raise PDDLError(f"negative initial fact {lit.atom}")
                init.append(lit)
        elif key == ":goal":
            goal = _conjunction(sec[1], allow_vars=False)
        elif key == ":requirements":
            continue
        else:
            raise _fail(f"unsupported problem section {key}", sec)
    if domain_name is None:
        raise PDDLError("problem does not name its domain")
    if domain_name != dom.name:
        raise PDDLError(f"problem is for domain {domain_name!r}, not {dom.name!r}")
    prob = ProblemAst(name, domain_name, tuple(objects), tuple(init), tuple(goal))
    _check_problem(prob, dom)
    return prob


def _check_problem(prob: ProblemAst, dom: DomainAst) -> None:
    types = {}
    for obj, t in list(dom.constants) + list(prob.objects):
        if not dom.known_type(t):
            raise PDDLError(f"unknown type {t!r} for object {obj!r}")
        if obj in types:
            raise PDDLError(f"object {obj!r} declared twice")
        types[obj] = t
    for where, lits in (("init", prob.init), ("goal", prob.goal)):
        for lit in lits:
            for a in lit.args:
                if a not in types:
                    raise PDDLError(f"unknown object {a!r} in {where}")
            if lit.predicate == "=":
                continue
            pred = dom.predicate(lit.predicate)
            if pred is None:
                raise PDDLError(f"unknown predicate {lit.predicate!r} in {where}")
            if pred.arity != len(lit.args):
                raise PDDLError(f"arity mismatch for {lit.predicate!r} in {where}")
            for a, (_, t) in zip(lit.args, pred.parameters):
                if not dom.is_subtype(types[a], t):
                    raise PDDLError(f"object {a!r} of type {types[a]!r} does not fit {lit.predicate!r}")
