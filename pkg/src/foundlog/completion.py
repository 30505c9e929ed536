"""Completion: combined rules, inverse rules, and negation renaming.

For every complete predicate and every ground atom A of it, the completed
program holds exactly one *combined* rule ``A <- B`` (B is the disjunction of
the bodies of all ground rules concluding A, plus ``true`` when A is a given
positive fact, or ``false`` when there is nothing) and one *inverse* rule
``n.A <- dual(B)``.  ``dual`` swaps conjunction/disjunction and true/false
and maps every literal to its sign-flipped renaming, pushing negations down
by De Morgan.

Negation renaming then replaces every remaining negative literal ``not p(c)``
anywhere — passthrough bodies, negative facts, negative conclusions — by the
positive atom ``n.p(c)``, yielding a negation-free ground program over the
doubled atom space.

Rules of certain predicates and of incomplete uncertain predicates, and all
negative rules, are never combined; they are copied through unchanged
(modulo renaming).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .language import Completeness, PredicateDecl
from .grounder import (G_FALSE, G_TRUE, GAnd, GConst, GExpr, GLit, GNot, GOr,
                       GroundAtom, GroundFact, GroundProgram, GroundRule,
                       expr_size, herbrand_base, make_and, make_or)

NEG_PREFIX = "n."


def is_negative_atom(atom: GroundAtom) -> bool:
    return atom.predicate.startswith(NEG_PREFIX)


def negate_atom(atom: GroundAtom) -> GroundAtom:
    """The renaming bijection between p(c) and n.p(c); involutive."""
    if is_negative_atom(atom):
        return GroundAtom(atom.predicate[len(NEG_PREFIX):], atom.args)
    return GroundAtom(NEG_PREFIX + atom.predicate, atom.args)


def base_atom(atom: GroundAtom) -> GroundAtom:
    return negate_atom(atom) if is_negative_atom(atom) else atom


@dataclass
class CompletedProgram:
    combined_rules: tuple[GroundRule, ...] = ()
    inverse_rules: tuple[GroundRule, ...] = ()
    passthrough_rules: tuple[GroundRule, ...] = ()
    facts: tuple[GroundFact, ...] = ()
    decls: dict[str, PredicateDecl] = field(default_factory=dict)
    domain: tuple[str, ...] = ()
    arities: dict[str, int] = field(default_factory=dict)
    renamed: bool = False
    # one entry per ground atom of each complete predicate
    combined_body: dict[GroundAtom, GExpr] = field(default_factory=dict)

    def all_rules(self) -> tuple[GroundRule, ...]:
        return self.combined_rules + self.inverse_rules + self.passthrough_rules

    def herbrand_base(self) -> list[GroundAtom]:
        return herbrand_base(self.arities, self.domain)

    def with_extra_facts(self, atoms) -> "CompletedProgram":
        extra = tuple(GroundFact(a, True) for a in sorted(atoms, key=str))
        return replace(self, facts=self.facts + extra)

    def size(self) -> int:
        total = len(self.facts)
        for rule in self.all_rules():
            total += 1 + expr_size(rule.body)
        return total


# ---------------------------------------------------------------------------
# Duality and renaming
# ---------------------------------------------------------------------------

def dual(expr: GExpr) -> GExpr:
    """Renamed negation of ``expr``: De Morgan dual over the doubled atoms."""
    if isinstance(expr, GLit):
        return GLit(negate_atom(expr.atom))
    if isinstance(expr, GNot):
        return rename_expr(expr.item)
    if isinstance(expr, GAnd):
        return GOr(tuple(dual(i) for i in expr.items))
    if isinstance(expr, GOr):
        return GAnd(tuple(dual(i) for i in expr.items))
    if isinstance(expr, GConst):
        return G_FALSE if expr.value else G_TRUE
    raise TypeError(f"unknown ground node {expr!r}")  # pragma: no cover


def rename_expr(expr: GExpr) -> GExpr:
    """Eliminate negation: ``not p(c)`` becomes the positive atom ``n.p(c)``."""
    if isinstance(expr, GLit):
        return expr
    if isinstance(expr, GNot):
        return dual(expr.item)
    if isinstance(expr, GAnd):
        return GAnd(tuple(rename_expr(i) for i in expr.items))
    if isinstance(expr, GOr):
        return GOr(tuple(rename_expr(i) for i in expr.items))
    if isinstance(expr, GConst):
        return expr
    raise TypeError(f"unknown ground node {expr!r}")  # pragma: no cover


def expr_is_positive(expr: GExpr) -> bool:
    if isinstance(expr, GNot):
        return False
    if isinstance(expr, (GAnd, GOr)):
        return all(expr_is_positive(i) for i in expr.items)
    return True


# ---------------------------------------------------------------------------
# The three completion stages
# ---------------------------------------------------------------------------

def combine(gp: GroundProgram, decls: dict[str, PredicateDecl]) -> CompletedProgram:
    """Build one combined rule per ground atom of each complete predicate.

    Only positive facts and positive rules are combined; negative rules and
    all rules of non-complete predicates pass through unchanged.
    """
    complete = {p for p, d in decls.items()
                if d.completeness is Completeness.COMPLETE}
    bodies: dict[GroundAtom, list[GExpr]] = {}
    passthrough: list[GroundRule] = []
    for rule in gp.rules:
        if rule.head_positive and rule.head.predicate in complete:
            bodies.setdefault(rule.head, []).append(rule.body)
        else:
            passthrough.append(rule)

    positive_facts = {f.atom for f in gp.facts if f.positive}
    combined: list[GroundRule] = []
    combined_body: dict[GroundAtom, GExpr] = {}
    for pred in sorted(complete):
        for atom in herbrand_base({pred: gp.arities[pred]}, gp.domain):
            parts = list(bodies.get(atom, []))
            if atom in positive_facts:
                parts.append(G_TRUE)
            body = make_or(parts) if parts else G_FALSE
            combined.append(GroundRule(atom, True, body))
            combined_body[atom] = body

    return CompletedProgram(
        combined_rules=tuple(combined),
        passthrough_rules=tuple(passthrough),
        facts=gp.facts,
        decls=dict(decls),
        domain=gp.domain,
        arities=dict(gp.arities),
        combined_body=combined_body,
    )


def add_inverse_rules(cp: CompletedProgram) -> CompletedProgram:
    inverse = tuple(GroundRule(negate_atom(rule.head), True, dual(rule.body))
                    for rule in cp.combined_rules)
    return replace(cp, inverse_rules=inverse)


def rename_negations(cp: CompletedProgram) -> CompletedProgram:
    """Replace every negative literal by its n.-renamed positive atom."""
    def rename_rule(rule: GroundRule) -> GroundRule:
        head = rule.head if rule.head_positive else negate_atom(rule.head)
        return GroundRule(head, True, rename_expr(rule.body))

    combined = tuple(rename_rule(r) for r in cp.combined_rules)
    inverse = tuple(rename_rule(r) for r in cp.inverse_rules)
    passthrough = tuple(rename_rule(r) for r in cp.passthrough_rules)
    facts = tuple(f if f.positive else GroundFact(negate_atom(f.atom), True)
                  for f in cp.facts)
    body_map = {atom: rename_expr(body)
                for atom, body in cp.combined_body.items()}
    return replace(cp, combined_rules=combined, inverse_rules=inverse,
                   passthrough_rules=passthrough, facts=facts, renamed=True,
                   combined_body=body_map)


def complete_program(gp: GroundProgram,
                     decls: dict[str, PredicateDecl]) -> CompletedProgram:
    """combine + add_inverse_rules + rename_negations."""
    return rename_negations(add_inverse_rules(combine(gp, decls)))
