"""Self-false computation for closed predicates.

An undefined atom of a closed predicate is *self-false* when deriving it
true could only go through assuming itself (or a fellow member of the set)
true: formally, the greatest set S of undefined atoms of closed predicates
such that each member's combined body evaluates to false once the members
of S are read as false (negative-side atoms always read from the given
interpretation — they count as evaluated, not assumable).

Iterating founded model plus self-false removal to a fixed point yields the
well-founded-semantics-matching interpretation when every uncertain
conclusion predicate is declared complete and closed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .completion import CompletedProgram, is_negative_atom, negate_atom
from .founded import F, Interpretation, T, U, eval3, linear_lfp
from .grounder import GroundAtom
from .language import Closedness, Program
from .pipeline import Prepared, prepare


def greatest_self_false(candidates, body_of, value_of) -> frozenset[GroundAtom]:
    """Greatest S ⊆ candidates whose members' bodies are false under
    ``value_of`` with positive reads of S members forced to false.

    Standard shrinking iteration: drop every atom whose body is not false,
    repeat until stable.
    """
    current = set(candidates)

    def read(atom: GroundAtom):
        if not is_negative_atom(atom) and atom in current:
            return F
        return value_of(atom)

    while True:
        kept = {a for a in current if eval3(body_of(a), read) is F}
        if kept == current:
            return frozenset(kept)
        current = kept


def self_false(itp: Interpretation, cp: CompletedProgram) -> frozenset[GroundAtom]:
    """Self-false atoms of closed predicates, relative to a founded model."""
    closed = {p for p, d in cp.decls.items()
              if d.closedness is Closedness.CLOSED}
    candidates = [a for a, v in itp.values.items()
                  if v is U and a.predicate in closed]
    return greatest_self_false(candidates, cp.combined_body.__getitem__,
                               itp.value)


@dataclass
class ClosureResult:
    interpretation: Interpretation
    iterations: int  # self-false rounds that added anything


def wfs_by_closure(source: str | Program | Prepared) -> ClosureResult:
    """Iterate founded model and self-false removal to a least fixed point.

    Each round turns the self-false atoms false by adding their n.-facts and
    recomputes the founded model; with no closed predicates this is the
    founded model unchanged.  Rounds are bounded by the number of undefined
    atoms (the quadratic worst case).
    """
    prep = source if isinstance(source, Prepared) else prepare(source)
    extra: set[GroundAtom] = set()
    iterations = 0
    while True:
        cp = prep.cp.with_extra_facts(negate_atom(a) for a in extra) \
            if extra else prep.cp
        itp, _ = linear_lfp(cp, prep.sccs)
        found = self_false(itp, prep.cp)
        if not found:
            return ClosureResult(itp, iterations)
        extra |= found
        iterations += 1
