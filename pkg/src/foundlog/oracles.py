"""Brute-force reference implementations of prior semantics.

These are desk-scale oracles for differential testing: Fitting (Kripke-
Kleene), supported models, well-founded semantics via the alternating fixed
point, stable models via the Gelfond-Lifschitz reduct, stratified semantics,
and plain first-order models.  They work on ground programs, refuse inputs
beyond a budget, and are deliberately independent of the engine's completed
program and SCC evaluator.

None of these semantics are defined for programs with negative facts or
negative conclusions; such inputs are rejected.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .founded import F, Interpretation, T, Truth, U, eval3, kleene_not
from .constraint import ModelSet, canonical_models
from .grounder import (GAnd, GConst, GExpr, GLit, GNot, GroundAtom,
                       GroundProgram, make_or, G_FALSE, G_TRUE)
from .language import (And, Lit, Not, Program, literal_occurrences,
                       scc_condensation)


@dataclass(frozen=True)
class OracleBudget:
    max_ground_atoms: int = 16
    max_models_examined: int = 1 << 16


class BudgetExceeded(Exception):
    pass


class NotStratified(Exception):
    pass


def _guard(gp: GroundProgram, budget: OracleBudget,
           enumerates: bool = False) -> list[GroundAtom]:
    atoms = gp.herbrand_base()
    if len(atoms) > budget.max_ground_atoms:
        raise BudgetExceeded(
            f"{len(atoms)} ground atoms exceed the budget of "
            f"{budget.max_ground_atoms}")
    if enumerates and 2 ** len(atoms) > budget.max_models_examined:
        raise BudgetExceeded(
            f"2^{len(atoms)} interpretations exceed the budget of "
            f"{budget.max_models_examined}")
    return atoms


def _require_positive_heads(gp: GroundProgram) -> None:
    if any(not r.head_positive for r in gp.rules) or \
            any(not f.positive for f in gp.facts):
        raise ValueError("prior semantics are not defined for programs with "
                         "negative facts or conclusions")


def _completion_bodies(gp: GroundProgram) -> dict[GroundAtom, GExpr]:
    """Clark completion over every atom of the Herbrand base."""
    _require_positive_heads(gp)
    bodies: dict[GroundAtom, list[GExpr]] = {}
    for rule in gp.rules:
        bodies.setdefault(rule.head, []).append(rule.body)
    fact_atoms = {f.atom for f in gp.facts}
    out: dict[GroundAtom, GExpr] = {}
    for atom in gp.herbrand_base():
        parts = list(bodies.get(atom, []))
        if atom in fact_atoms:
            parts.append(G_TRUE)
        out[atom] = make_or(parts) if parts else G_FALSE
    return out


def _flat_rules(gp: GroundProgram) -> list[tuple[GroundAtom, list[GroundAtom], list[GroundAtom]]]:
    """Rules as (head, positive body atoms, negated body atoms).

    Only flat conjunctions of literals are accepted; quantifier expansions
    produce nested bodies, for which these semantics are not defined.
    """
    _require_positive_heads(gp)
    out = []
    for rule in gp.rules:
        positive: list[GroundAtom] = []
        negative: list[GroundAtom] = []
        items: tuple[GExpr, ...]
        if isinstance(rule.body, GAnd):
            items = rule.body.items
        else:
            items = (rule.body,)
        for item in items:
            if isinstance(item, GLit):
                positive.append(item.atom)
            elif isinstance(item, GNot) and isinstance(item.item, GLit):
                negative.append(item.item.atom)
            elif isinstance(item, GConst):
                if not item.value:
                    positive = None  # body can never hold
                    break
            else:
                raise ValueError("rule bodies must be flat conjunctions of "
                                 "literals for this oracle")
        if positive is None:
            continue
        out.append((rule.head, positive, negative))
    for fact in gp.facts:
        out.append((fact.atom, [], []))
    return out


# ---------------------------------------------------------------------------
# 3-valued and 2-valued completion semantics
# ---------------------------------------------------------------------------

def fitting_oracle(gp: GroundProgram,
                   budget: OracleBudget = OracleBudget()) -> Interpretation:
    """Least 3-valued fixed point of the completion's consequence operator."""
    atoms = _guard(gp, budget)
    bodies = _completion_bodies(gp)
    values: dict[GroundAtom, Truth] = {a: U for a in atoms}
    while True:
        updated = {a: eval3(bodies[a], values.__getitem__) for a in atoms}
        if updated == values:
            return Interpretation(updated)
        values = updated


def _eval2(expr: GExpr, true_atoms: frozenset[GroundAtom]) -> bool:
    if isinstance(expr, GLit):
        return expr.atom in true_atoms
    if isinstance(expr, GConst):
        return expr.value
    if isinstance(expr, GNot):
        return not _eval2(expr.item, true_atoms)
    if isinstance(expr, GAnd):
        return all(_eval2(i, true_atoms) for i in expr.items)
    return any(_eval2(i, true_atoms) for i in expr.items)


def _all_interpretations(atoms: list[GroundAtom]):
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield frozenset(a for a, bit in zip(atoms, bits) if bit)


def supported_oracle(gp: GroundProgram,
                     budget: OracleBudget = OracleBudget()) -> ModelSet:
    """All 2-valued fixed points of the completion."""
    atoms = _guard(gp, budget, enumerates=True)
    bodies = _completion_bodies(gp)
    kept = [m for m in _all_interpretations(atoms)
            if all((a in m) == _eval2(bodies[a], m) for a in atoms)]
    models = canonical_models(kept)
    return ModelSet(models, len(models))


# ---------------------------------------------------------------------------
# WFS and SMS
# ---------------------------------------------------------------------------

def _reduct_least_model(flat, assumed: frozenset[GroundAtom]) -> frozenset[GroundAtom]:
    """Least model of the Gelfond-Lifschitz reduct by ``assumed``."""
    derived: set[GroundAtom] = set()
    changed = True
    while changed:
        changed = False
        for head, positive, negative in flat:
            if head in derived:
                continue
            if any(n in assumed for n in negative):
                continue
            if all(p in derived for p in positive):
                derived.add(head)
                changed = True
    return frozenset(derived)


def wfs_oracle(gp: GroundProgram,
               budget: OracleBudget = OracleBudget()) -> Interpretation:
    """Alternating fixed point: lfp/gfp of the squared reduct operator."""
    atoms = _guard(gp, budget)
    flat = _flat_rules(gp)

    def gamma2(m: frozenset[GroundAtom]) -> frozenset[GroundAtom]:
        return _reduct_least_model(flat, _reduct_least_model(flat, m))

    lfp = frozenset()
    while True:
        nxt = gamma2(lfp)
        if nxt == lfp:
            break
        lfp = nxt
    gfp = frozenset(atoms)
    while True:
        nxt = gamma2(gfp)
        if nxt == gfp:
            break
        gfp = nxt

    values = {a: (T if a in lfp else U if a in gfp else F) for a in atoms}
    return Interpretation(values)


def sms_oracle(gp: GroundProgram,
               budget: OracleBudget = OracleBudget()) -> ModelSet:
    """Stable models: fixed points of the reduct operator."""
    atoms = _guard(gp, budget, enumerates=True)
    flat = _flat_rules(gp)
    kept = [m for m in _all_interpretations(atoms)
            if _reduct_least_model(flat, m) == m]
    models = canonical_models(kept)
    return ModelSet(models, len(models))


# ---------------------------------------------------------------------------
# Stratified and first-order semantics
# ---------------------------------------------------------------------------

def stratified_oracle(gp: GroundProgram,
                      budget: OracleBudget = OracleBudget()) -> Interpretation:
    """Iterated least models along the predicate strata (2-valued)."""
    atoms = _guard(gp, budget)
    flat = _flat_rules(gp)

    predicates = set(gp.arities)
    edges = set()
    negative_edges = set()
    for head, positive, negative in flat:
        for atom in positive:
            edges.add((atom.predicate, head.predicate))
        for atom in negative:
            edges.add((atom.predicate, head.predicate))
            negative_edges.add((atom.predicate, head.predicate))
    strata = scc_condensation(predicates, edges)
    level = {p: i for i, scc in enumerate(strata) for p in scc}
    for src, dst in negative_edges:
        if level[src] == level[dst]:
            raise NotStratified(
                f"negative dependency of '{dst}' on '{src}' inside one "
                f"stratum")

    derived: set[GroundAtom] = set()
    for index, scc in enumerate(strata):
        changed = True
        while changed:
            changed = False
            for head, positive, negative in flat:
                if head.predicate not in scc or head in derived:
                    continue
                if all(p in derived for p in positive) and \
                        all(n not in derived for n in negative):
                    derived.add(head)
                    changed = True
    values = {a: (T if a in derived else F) for a in atoms}
    return Interpretation(values)


def fo_oracle(gp: GroundProgram,
              budget: OracleBudget = OracleBudget()) -> ModelSet:
    """All 2-valued interpretations satisfying each rule as an implication."""
    atoms = _guard(gp, budget, enumerates=True)
    _require_positive_heads(gp)
    kept = []
    for m in _all_interpretations(atoms):
        ok = all(f.atom in m for f in gp.facts)
        ok = ok and all(not _eval2(r.body, m) or r.head in m for r in gp.rules)
        if ok:
            kept.append(m)
    models = canonical_models(kept)
    return ModelSet(models, len(models))


# ---------------------------------------------------------------------------
# Non-ground minimal model (grounding cross-check)
# ---------------------------------------------------------------------------

def minimal_model_oracle(program: Program) -> frozenset[GroundAtom]:
    """Minimal model of a negation-free program by on-the-fly substitution.

    Evaluates without grounding first: rule bodies are matched against the
    derived facts directly, so this is an independent check that grounding
    plus evaluation agrees with evaluation by substitution.  Bodies must be
    conjunctions of positive literals.
    """
    literals_of = {}
    for rule in program.rules:
        if not rule.conclusion.positive:
            raise ValueError("negation-free programs only")
        body = rule.body
        items = body.items if isinstance(body, And) else (body,)
        flat = []
        for item in items:
            if not isinstance(item, Lit) or not item.literal.positive:
                raise ValueError("negation-free programs only")
            flat.append(item.literal.atom)
        literals_of[rule] = flat

    derived: set[GroundAtom] = set()
    for fact in program.facts:
        if not fact.literal.positive:
            raise ValueError("negation-free programs only")
        args = tuple(t.name for t in fact.literal.atom.args)
        derived.add(GroundAtom(fact.literal.atom.predicate, args))

    def matches(pattern, env):
        for atom in derived:
            if atom.predicate != pattern.predicate or \
                    len(atom.args) != len(pattern.args):
                continue
            bound = dict(env)
            ok = True
            for term, value in zip(pattern.args, atom.args):
                if term.is_constant:
                    if term.name != value:
                        ok = False
                        break
                elif bound.setdefault(term.name, value) != value:
                    ok = False
                    break
            if ok:
                yield bound

    changed = True
    while changed:
        changed = False
        for rule, body_atoms in literals_of.items():
            envs = [{}]
            for pattern in body_atoms:
                envs = [b for env in envs for b in matches(pattern, env)]
                if not envs:
                    break
            for env in envs:
                head = rule.conclusion.atom
                atom = GroundAtom(head.predicate,
                                  tuple(t.name if t.is_constant else env[t.name]
                                        for t in head.args))
                if atom not in derived:
                    derived.add(atom)
                    changed = True
    return frozenset(derived)
