"""Constraint semantics: 2-valued extensions of the founded model.

A constraint model assigns true/false to every undefined atom such that

* every given ground rule holds as a 2-valued implication (body true
  implies the conclusion literal true), and
* for every atom A of a complete predicate, A is equivalent to its
  combined body (the completion constraint).

For incomplete predicates only the implications apply.  Enumeration is
exhaustive over the undefined atoms with 3-valued pruning; the result is
canonically ordered (models sorted by their sorted true-atom lists), so
output never depends on search order.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .closed import greatest_self_false
from .completion import is_negative_atom, base_atom
from .founded import F, Interpretation, T, Truth, U, eval3, kleene_not
from .grounder import GExpr, GroundAtom
from .language import (Certainty, Closedness, Completeness, PredicateDecl,
                       Program)
from .pipeline import Prepared, prepare

EXACT_COUNT_LIMIT = 30    # exact model counts guaranteed up to 2^30 leaves
DEFAULT_SEARCH_CAP = 10000


@dataclass(frozen=True)
class ModelSet:
    """Canonically ordered 2-valued models (as frozensets of true atoms)."""

    models: tuple[frozenset[GroundAtom], ...]
    count: int
    exact: bool = True

    def true_lists(self) -> list[list[str]]:
        return [sorted(str(a) for a in m) for m in self.models]


def canonical_models(models) -> tuple[frozenset[GroundAtom], ...]:
    unique = {tuple(sorted(str(a) for a in m)): m for m in models}
    return tuple(unique[key] for key in sorted(unique))


def _implication_violated(body: Truth, head: Truth) -> bool:
    return body is T and head is F


def constraint_models(source: str | Program | Prepared,
                      founded: Interpretation | None = None, *,
                      limit: int | None = None) -> ModelSet:
    """Enumerate all 2-valued models extending the founded model.

    ``limit`` truncates the returned model list; the count stays exact as
    long as the number of undefined atoms is at most ``EXACT_COUNT_LIMIT``,
    beyond that the search stops after ``limit`` (or a default cap) models
    and the count is a lower bound.
    """
    prep = source if isinstance(source, Prepared) else prepare(source)
    if founded is None:
        founded = prep.founded_fast()
    if not founded.consistent:
        raise ValueError("constraint semantics needs a consistent founded model")

    undefined = sorted((a for a, v in founded.values.items() if v is U), key=str)
    index = {atom: i for i, atom in enumerate(undefined)}
    assigned: list[Truth] = [U] * len(undefined)

    def read(atom: GroundAtom) -> Truth:
        if is_negative_atom(atom):
            return kleene_not(read(base_atom(atom)))
        slot = index.get(atom)
        if slot is None:
            return founded.values[atom]
        return assigned[slot]

    # (kind, payload): implications from the given ground rules, equivalences
    # from the completion of complete predicates.
    implications: list[tuple[GExpr, GroundAtom, bool]] = []
    for rule in prep.gp.rules:
        implications.append((rule.body, rule.head, rule.head_positive))
    equivalences: list[tuple[GroundAtom, GExpr]] = []
    for pred in sorted(prep.program.decls):
        if prep.program.decls[pred].completeness is Completeness.COMPLETE:
            for atom, body in prep.cp.combined_body.items():
                if atom.predicate == pred:
                    equivalences.append((atom, body))

    def consistent_so_far() -> bool:
        for body, head, positive in implications:
            head_value = read(head) if positive else kleene_not(read(head))
            if _implication_violated(eval3(body, read), head_value):
                return False
        for atom, body in equivalences:
            left, right = read(atom), eval3(body, read)
            if left is not U and right is not U and left is not right:
                return False
        return True

    exact = len(undefined) <= EXACT_COUNT_LIMIT
    cap = limit if limit is not None else (None if exact else DEFAULT_SEARCH_CAP)
    models: list[frozenset[GroundAtom]] = []
    count = 0
    budget_hit = False

    base_true = founded.true_set()

    def search(position: int) -> None:
        nonlocal count, budget_hit
        if budget_hit:
            return
        if not consistent_so_far():
            return
        if position == len(undefined):
            count += 1
            model = base_true | {a for a, v in zip(undefined, assigned) if v is T}
            if limit is None or len(models) < limit:
                models.append(frozenset(model))
            if not exact and cap is not None and count >= cap:
                budget_hit = True
            return
        for value in (F, T):
            assigned[position] = value
            search(position + 1)
            assigned[position] = U
            if budget_hit:
                return

    search(0)
    ordered = canonical_models(models)
    if limit is not None:
        ordered = ordered[:limit]
    return ModelSet(ordered, count, exact=exact and not budget_hit)


def constraint_models_incomplete(source: str | Program,
                                 founded: Interpretation | None = None, *,
                                 limit: int | None = None) -> ModelSet:
    """Constraint models with every completion constraint dropped.

    Reinterprets the program with all predicates uncertain and all
    conclusion predicates incomplete, recomputing the founded model under
    those declarations unless one is supplied.
    """
    program = source if isinstance(source, Program) else None
    if program is None:
        from .parser import parse_program
        program = parse_program(source)
    prep = prepare(drop_completeness(program))
    return constraint_models(prep, founded, limit=limit)


def drop_completeness(program: Program) -> Program:
    """Variant declarations: everything uncertain, conclusions incomplete."""
    conclusions = {r.conclusion.atom.predicate for r in program.rules}
    preds = set(program.arities) | set(program.decls)
    decls = {}
    for name in preds:
        completeness = (Completeness.INCOMPLETE if name in conclusions
                        else Completeness.NOT_APPLICABLE)
        decls[name] = PredicateDecl(name, Certainty.UNCERTAIN, completeness,
                                    Closedness.OPEN)
    return replace_decls(program, decls)


def replace_decls(program: Program, decls: dict[str, PredicateDecl]) -> Program:
    return Program(decls=decls, rules=program.rules, facts=program.facts,
                   arities=dict(program.arities), warnings=program.warnings)


# ---------------------------------------------------------------------------
# Stable-model filtering
# ---------------------------------------------------------------------------

def sms_filter(models: ModelSet, source: str | Program | Prepared) -> ModelSet:
    """Drop models containing a self-false atom (unfounded w.r.t. the model).

    For each model M the same greatest-set computation as for closed
    predicates runs with M as the interpretation and all atoms of closed
    predicates as candidates; M survives iff no member of the set is true
    in M.
    """
    prep = source if isinstance(source, Prepared) else prepare(source)
    closed = {p for p, d in prep.program.decls.items()
              if d.closedness is Closedness.CLOSED}
    candidates = [a for a in prep.cp.combined_body if a.predicate in closed]

    kept = []
    for model in models.models:
        def value_of(atom: GroundAtom) -> Truth:
            if is_negative_atom(atom):
                return kleene_not(value_of(base_atom(atom)))
            return T if atom in model else F

        unfounded = greatest_self_false(candidates,
                                        prep.cp.combined_body.__getitem__,
                                        value_of)
        if not (unfounded & model):
            kept.append(model)
    dropped = len(models.models) - len(kept)
    return ModelSet(canonical_models(kept), models.count - dropped,
                    exact=models.exact)
