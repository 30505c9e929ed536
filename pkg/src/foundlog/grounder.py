"""Grounding: instantiate rules over the constant domain.

The constant domain is the set of all constants appearing in the program.
Each rule is instantiated once per assignment of its free variables to
domain constants; quantifiers expand to finite disjunctions/conjunctions
over the domain (exists over the empty domain becomes ``false``, forall
becomes ``true``).  Bodies simplify only by constant folding of true/false.

The size metric counts rule heads, literal occurrences (including the
``true``/``false`` leaves), and connective nodes; it is the denominator of
all linearity measurements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .language import (And, Atom, Const, Exists, Forall, HypExpr, Lit, Not,
                       Or, Program, Term, free_variables, rule_constants)


# ---------------------------------------------------------------------------
# Ground atoms and variable-free bodies
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GroundAtom:
    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


class GExpr:
    """Base class for variable-free bodies."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class GLit(GExpr):
    atom: GroundAtom


@dataclass(frozen=True, slots=True)
class GNot(GExpr):
    item: GExpr


@dataclass(frozen=True, slots=True)
class GAnd(GExpr):
    items: tuple[GExpr, ...]


@dataclass(frozen=True, slots=True)
class GOr(GExpr):
    items: tuple[GExpr, ...]


@dataclass(frozen=True, slots=True)
class GConst(GExpr):
    value: bool


G_TRUE = GConst(True)
G_FALSE = GConst(False)


def make_and(items: list[GExpr]) -> GExpr:
    """Conjunction with constant folding only (no flattening)."""
    kept: list[GExpr] = []
    for item in items:
        if isinstance(item, GConst):
            if not item.value:
                return G_FALSE
            continue
        kept.append(item)
    if not kept:
        return G_TRUE
    if len(kept) == 1:
        return kept[0]
    return GAnd(tuple(kept))


def make_or(items: list[GExpr]) -> GExpr:
    kept: list[GExpr] = []
    for item in items:
        if isinstance(item, GConst):
            if item.value:
                return G_TRUE
            continue
        kept.append(item)
    if not kept:
        return G_FALSE
    if len(kept) == 1:
        return kept[0]
    return GOr(tuple(kept))


@dataclass(frozen=True, slots=True)
class GroundRule:
    head: GroundAtom
    head_positive: bool
    body: GExpr


@dataclass(frozen=True, slots=True)
class GroundFact:
    atom: GroundAtom
    positive: bool


@dataclass
class GroundProgram:
    rules: tuple[GroundRule, ...]
    facts: tuple[GroundFact, ...]
    domain: tuple[str, ...]
    size: int
    arities: dict[str, int] = field(default_factory=dict)

    def herbrand_base(self) -> list[GroundAtom]:
        return herbrand_base(self.arities, self.domain)


# ---------------------------------------------------------------------------
# Domain
# ---------------------------------------------------------------------------

def constant_key(name: str) -> tuple:
    """Sort key: numerals numerically first, then strings lexicographically."""
    if name[:1].isdigit():
        return (0, int(name), name)
    return (1, 0, name)


def constant_domain(program: Program) -> tuple[str, ...]:
    names = {t.name for t in rule_constants(program)}
    return tuple(sorted(names, key=constant_key))


def herbrand_base(arities: dict[str, int],
                  domain: tuple[str, ...]) -> list[GroundAtom]:
    atoms: list[GroundAtom] = []
    for pred in sorted(arities):
        for args in itertools.product(domain, repeat=arities[pred]):
            atoms.append(GroundAtom(pred, args))
    return atoms


# ---------------------------------------------------------------------------
# Grounding
# ---------------------------------------------------------------------------

def _ground_atom(atom: Atom, env: dict[str, str]) -> GroundAtom:
    args = tuple(t.name if t.is_constant else env[t.name] for t in atom.args)
    return GroundAtom(atom.predicate, args)


def _expand(expr: HypExpr, env: dict[str, str],
            domain: tuple[str, ...]) -> GExpr:
    if isinstance(expr, Lit):
        ground = GLit(_ground_atom(expr.literal.atom, env))
        return ground if expr.literal.positive else GNot(ground)
    if isinstance(expr, Not):
        return GNot(_expand(expr.item, env, domain))
    if isinstance(expr, And):
        return make_and([_expand(i, env, domain) for i in expr.items])
    if isinstance(expr, Or):
        return make_or([_expand(i, env, domain) for i in expr.items])
    if isinstance(expr, (Exists, Forall)):
        parts: list[GExpr] = []
        for values in itertools.product(domain, repeat=len(expr.variables)):
            inner = dict(env)
            inner.update(zip(expr.variables, values))
            parts.append(_expand(expr.body, inner, domain))
        # Empty domain: exists -> false, forall -> true (the neutral values).
        if isinstance(expr, Exists):
            return make_or(parts)
        return make_and(parts)
    if isinstance(expr, Const):
        return G_TRUE if expr.value else G_FALSE
    raise TypeError(f"unknown hypothesis node {expr!r}")  # pragma: no cover


def rule_instances(rule, domain: tuple[str, ...]) -> Iterator[GroundRule]:
    variables = sorted(free_variables(rule.body))
    head = rule.conclusion
    for values in itertools.product(domain, repeat=len(variables)):
        env = dict(zip(variables, values))
        yield GroundRule(_ground_atom(head.atom, env), head.positive,
                         _expand(rule.body, env, domain))


def ground(program: Program) -> GroundProgram:
    """Naive grounding: every rule instantiated over the full domain."""
    domain = constant_domain(program)
    rules: list[GroundRule] = []
    for rule in program.rules:
        rules.extend(rule_instances(rule, domain))
    facts = tuple(GroundFact(_ground_atom(f.literal.atom, {}), f.literal.positive)
                  for f in program.facts)
    gp = GroundProgram(tuple(rules), facts, domain, 0, dict(program.arities))
    gp.size = ground_size(gp)
    return gp


# ---------------------------------------------------------------------------
# Size metric
# ---------------------------------------------------------------------------

def expr_size(expr: GExpr) -> int:
    """Literal occurrences (true/false count as leaves) plus connectives."""
    if isinstance(expr, (GLit, GConst)):
        return 1
    if isinstance(expr, GNot):
        return 1 + expr_size(expr.item)
    if isinstance(expr, (GAnd, GOr)):
        return 1 + sum(expr_size(i) for i in expr.items)
    raise TypeError(f"unknown ground node {expr!r}")  # pragma: no cover


def ground_size(gp: GroundProgram) -> int:
    total = len(gp.facts)  # each fact is one head
    for rule in gp.rules:
        total += 1 + expr_size(rule.body)
    return total


# ---------------------------------------------------------------------------
# Rendering (debug dumps)
# ---------------------------------------------------------------------------

_G_OR, _G_AND, _G_NOT, _G_ATOM = range(4)


def _g_level(expr: GExpr) -> int:
    if isinstance(expr, GOr):
        return _G_OR
    if isinstance(expr, GAnd):
        return _G_AND
    if isinstance(expr, GNot):
        return _G_NOT
    return _G_ATOM


def render_gexpr(expr: GExpr, min_level: int = _G_OR) -> str:
    def wrap(text: str, level: int) -> str:
        return f"({text})" if level < min_level else text

    if isinstance(expr, GLit):
        return str(expr.atom)
    if isinstance(expr, GConst):
        return "true" if expr.value else "false"
    if isinstance(expr, GNot):
        return wrap(f"not {render_gexpr(expr.item, _G_NOT)}", _G_NOT)
    if isinstance(expr, GAnd):
        return wrap(" and ".join(render_gexpr(i, _G_NOT) for i in expr.items),
                    _G_AND)
    if isinstance(expr, GOr):
        return wrap(" or ".join(render_gexpr(i, _G_AND) for i in expr.items),
                    _G_OR)
    raise TypeError(f"unknown ground node {expr!r}")  # pragma: no cover


def render_ground_rule(rule: GroundRule) -> str:
    head = str(rule.head) if rule.head_positive else f"not {rule.head}"
    return f"{head} <- {render_gexpr(rule.body)}."
