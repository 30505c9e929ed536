"""Random differential testing against the brute-force oracles.

Generates small programs (no quantifiers, no negative facts or conclusions,
within oracle budget) and checks the four declaration-regime correspondences:

(a) all-certain on stratified programs: founded matches the stratified
    oracle and constraint semantics is that single model;
(b) conclusion predicates uncertain+complete, extensional predicates
    certain: founded matches Fitting, constraint matches supported models;
(c) additionally closed: the closure iteration matches WFS and the
    self-false filter matches stable models;
(d) everything uncertain and incomplete: constraint models are exactly the
    first-order models extending the founded model.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .closed import wfs_by_closure
from .constraint import (ModelSet, constraint_models, drop_completeness,
                         replace_decls, sms_filter)
from .founded import Interpretation, T, F, U
from .language import (And, Atom, Certainty, Closedness, Completeness,
                       DeclarationError, Fact, Lit, Literal, Not,
                       PredicateDecl, Program, Rule, Term)
from .oracles import (BudgetExceeded, NotStratified, OracleBudget,
                      fitting_oracle, fo_oracle, sms_oracle, stratified_oracle,
                      supported_oracle, wfs_oracle)
from .parser import render_program
from .pipeline import prepare

_VARIABLES = ("x", "y")


@dataclass
class FuzzReport:
    checked: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)  # (text, what)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_program(rng: random.Random) -> Program:
    """A small program: <=3 predicates, <=3 constants, <=6 flat rules."""
    signatures = [("q", 0), ("p", 1)]
    if rng.random() < 0.5:
        signatures.append(("r", 1))
    if rng.random() < 0.25:
        signatures.append(("s", 2))
        constants = ["1", "2"]
    else:
        constants = ["1", "2", "3"] if rng.random() < 0.3 else ["1", "2"]

    def random_term(allow_vars: bool) -> Term:
        if allow_vars and rng.random() < 0.6:
            return Term.variable(rng.choice(_VARIABLES))
        return Term.constant(rng.choice(constants))

    def random_atom(allow_vars: bool) -> Atom:
        pred, arity = rng.choice(signatures)
        return Atom(pred, tuple(random_term(allow_vars) for _ in range(arity)))

    rules = []
    for _ in range(rng.randint(1, 6)):
        head = random_atom(allow_vars=True)
        body_literals = [rng.choice(signatures) for _ in range(rng.randint(1, 3))]
        body = []
        for pred, arity in body_literals:
            atom = Atom(pred, tuple(random_term(True) for _ in range(arity)))
            lit = Lit(Literal(atom))
            body.append(Not(lit) if rng.random() < 0.4 else lit)
        head_vars = {t.name for t in head.args if not t.is_constant}
        body_vars = set()
        for item in body:
            lit = item.item if isinstance(item, Not) else item
            body_vars.update(t.name for t in lit.literal.atom.args
                             if not t.is_constant)
        for var in sorted(head_vars - body_vars):
            carriers = [s for s in signatures if s[1] >= 1]
            pred, arity = rng.choice(carriers)
            args = tuple(Term.variable(var) if i == 0 else random_term(True)
                         for i in range(arity))
            body.append(Lit(Literal(Atom(pred, args))))
        expr = body[0] if len(body) == 1 else And(tuple(body))
        rules.append(Rule(Literal(head), expr))

    facts = []
    for _ in range(rng.randint(0, 3)):
        facts.append(Fact(Literal(random_atom(allow_vars=False))))
    # Keep the domain nonempty whenever variables can occur, so the naive
    # grounding bound n^k * r is meaningful.
    carriers = [s for s in signatures if s[1] >= 1]
    if carriers and not any(f.literal.atom.args for f in facts):
        pred, arity = rng.choice(carriers)
        args = tuple(Term.constant(rng.choice(constants)) for _ in range(arity))
        facts.append(Fact(Literal(Atom(pred, args))))

    return Program(rules=tuple(rules), facts=tuple(facts),
                   arities={p: a for p, a in signatures})


# ---------------------------------------------------------------------------
# Declaration regimes
# ---------------------------------------------------------------------------

def _declare(program: Program, certain: set[str], closed: bool) -> Program:
    conclusions = {r.conclusion.atom.predicate for r in program.rules}
    decls = {}
    for name in program.arities:
        if name in certain:
            decls[name] = PredicateDecl(name, Certainty.CERTAIN,
                                        Completeness.NOT_APPLICABLE,
                                        Closedness.OPEN)
        else:
            complete = name in conclusions
            decls[name] = PredicateDecl(
                name, Certainty.UNCERTAIN,
                Completeness.COMPLETE if complete else Completeness.NOT_APPLICABLE,
                Closedness.CLOSED if closed and complete else Closedness.OPEN)
    return replace_decls(program, decls)


def all_certain_variant(program: Program) -> Program:
    return _declare(program, certain=set(program.arities), closed=False)


def fitting_variant(program: Program) -> Program:
    """Conclusion predicates uncertain+complete, extensional ones certain."""
    conclusions = {r.conclusion.atom.predicate for r in program.rules}
    extensional = set(program.arities) - conclusions
    return _declare(program, certain=extensional, closed=False)


def closed_variant(program: Program) -> Program:
    conclusions = {r.conclusion.atom.predicate for r in program.rules}
    extensional = set(program.arities) - conclusions
    return _declare(program, certain=extensional, closed=True)


def _models_equal(a: ModelSet, b: ModelSet) -> bool:
    return a.true_lists() == b.true_lists()


def _extends(model: frozenset, founded: Interpretation) -> bool:
    for atom, value in founded.values.items():
        if value is T and atom not in model:
            return False
        if value is F and atom in model:
            return False
    return True


def correspondence_failures(program: Program,
                            budget: OracleBudget = OracleBudget()) -> list[str]:
    """Run all four regime checks; returns human-readable mismatches."""
    failures: list[str] = []

    # (a) stratified / all-certain
    try:
        prep = prepare(all_certain_variant(program))
    except DeclarationError:
        prep = None  # non-stratified: certain-for-everything is illegal
    if prep is not None:
        try:
            oracle = stratified_oracle(prep.gp, budget)
        except NotStratified:
            failures.append("all-certain accepted but oracle found the "
                            "program non-stratified")
            oracle = None
        if oracle is not None:
            founded = prep.founded_fast()
            if not founded.is_two_valued():
                failures.append("all-certain founded model has undefined atoms")
            elif founded != oracle:
                failures.append("stratified: founded differs from the oracle")
            else:
                models = constraint_models(prep, founded)
                if models.count != 1 or models.models[0] != founded.true_set():
                    failures.append("stratified: constraint semantics is not "
                                    "the single founded model")

    # (b) Fitting / supported
    prep = prepare(fitting_variant(program))
    founded = prep.founded_fast()
    if founded != fitting_oracle(prep.gp, budget):
        failures.append("uncertain+complete: founded differs from Fitting")
    if not _models_equal(constraint_models(prep, founded),
                         supported_oracle(prep.gp, budget)):
        failures.append("uncertain+complete: constraint differs from "
                        "supported models")

    # (c) WFS / SMS under closed
    prep = prepare(closed_variant(program))
    closure = wfs_by_closure(prep)
    if closure.interpretation != wfs_oracle(prep.gp, budget):
        failures.append("closed: closure iteration differs from WFS")
    sms = sms_filter(constraint_models(prep, closure.interpretation), prep)
    if not _models_equal(sms, sms_oracle(prep.gp, budget)):
        failures.append("closed: self-false filter differs from stable models")

    # (d) first-order models under incomplete
    prep = prepare(drop_completeness(program))
    founded = prep.founded_fast()
    fo = fo_oracle(prep.gp, budget)
    expected = [m for m in fo.models if _extends(m, founded)]
    got = constraint_models(prep, founded)
    if got.true_lists() != ModelSet(tuple(expected), len(expected)).true_lists():
        failures.append("incomplete: constraint differs from the first-order "
                        "models extending founded")
    return failures


def minimize(program: Program, budget: OracleBudget) -> Program:
    """Greedy shrink: drop rules/facts while the failure persists."""
    current = program
    changed = True
    while changed:
        changed = False
        for index in range(len(current.rules)):
            candidate = Program(
                rules=current.rules[:index] + current.rules[index + 1:],
                facts=current.facts, arities=dict(current.arities))
            if correspondence_failures(candidate, budget):
                current = candidate
                changed = True
                break
        else:
            for index in range(len(current.facts)):
                candidate = Program(
                    rules=current.rules,
                    facts=current.facts[:index] + current.facts[index + 1:],
                    arities=dict(current.arities))
                if correspondence_failures(candidate, budget):
                    current = candidate
                    changed = True
                    break
    return current


def run_fuzz(seed: int, count: int,
             budget: OracleBudget = OracleBudget()) -> FuzzReport:
    rng = random.Random(seed)
    report = FuzzReport()
    for _ in range(count):
        program = random_program(rng)
        try:
            failures = correspondence_failures(program, budget)
        except BudgetExceeded:
            continue  # generator strayed out of budget; not a counterexample
        report.checked += 1
        if failures:
            small = minimize(program, budget)
            report.failures.append((render_program(small), "; ".join(failures)))
    return report
