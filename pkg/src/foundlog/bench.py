"""Benchmark program families and the linearity measurement.

Families are generated in memory:

* ``winchain``  — move(i, i+1) for i < n with the win-not-win rule;
* ``wincycle``  — the chain closed into a cycle (odd cycles leave every
  position undefined);
* ``reachgrid`` — an n x n grid graph under the reachability program.

The measured quantity is the linear evaluator's step count divided by the
ground program size; a family is flagged when the ratio at the largest size
exceeds twice the ratio at the smallest.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .founded import linear_lfp
from .language import And, Atom, Fact, Lit, Literal, Not, Program, Rule, Term
from .pipeline import prepare

FAMILIES = ("winchain", "wincycle", "reachgrid")


def _atom(pred: str, *args: Term) -> Atom:
    return Atom(pred, tuple(args))


def _win_rules() -> tuple[Rule, ...]:
    x, y = Term.variable("x"), Term.variable("y")
    body = And((Lit(Literal(_atom("move", x, y))),
                Not(Lit(Literal(_atom("win", y))))))
    return (Rule(Literal(_atom("win", x)), body),)


def winchain(n: int) -> Program:
    facts = tuple(Fact(Literal(_atom("move", Term.constant(str(i)),
                                     Term.constant(str(i + 1)))))
                  for i in range(1, n))
    return Program(rules=_win_rules(), facts=facts,
                   arities={"move": 2, "win": 1})


def wincycle(n: int) -> Program:
    facts = tuple(Fact(Literal(_atom("move", Term.constant(str(i)),
                                     Term.constant(str(i % n + 1)))))
                  for i in range(1, n + 1))
    return Program(rules=_win_rules(), facts=facts,
                   arities={"move": 2, "win": 1})


def reachgrid(side: int) -> Program:
    x, y = Term.variable("x"), Term.variable("y")
    rules = (
        Rule(Literal(_atom("reach", x)), Lit(Literal(_atom("source", x)))),
        Rule(Literal(_atom("reach", y)),
             And((Lit(Literal(_atom("edge", x, y))),
                  Lit(Literal(_atom("reach", x)))))),
    )
    facts = [Fact(Literal(_atom("source", Term.constant("0"))))]
    for row in range(side):
        for col in range(side):
            here = row * side + col
            if col + 1 < side:
                facts.append(Fact(Literal(_atom(
                    "edge", Term.constant(str(here)),
                    Term.constant(str(here + 1))))))
            if row + 1 < side:
                facts.append(Fact(Literal(_atom(
                    "edge", Term.constant(str(here)),
                    Term.constant(str(here + side))))))
    return Program(rules=rules, facts=tuple(facts),
                   arities={"source": 1, "edge": 2, "reach": 1})


def family_program(family: str, size: int) -> Program:
    if family == "winchain":
        return winchain(size)
    if family == "wincycle":
        return wincycle(size)
    if family == "reachgrid":
        return reachgrid(size)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


@dataclass
class BenchRow:
    size: int
    ground_atoms: int
    ground_size: int
    steps: int
    eval_seconds: float

    @property
    def ratio(self) -> float:
        return self.steps / self.ground_size


@dataclass
class BenchReport:
    family: str
    rows: list[BenchRow]

    @property
    def verdict(self) -> str | None:
        """`None` with fewer than 2 sizes; otherwise pass/fail on the band."""
        if len(self.rows) < 2:
            return None
        first, last = self.rows[0].ratio, self.rows[-1].ratio
        return "pass" if last <= 2.0 * first else "fail"


def run_family(family: str, sizes: list[int]) -> BenchReport:
    rows = []
    for size in sizes:
        prep = prepare(family_program(family, size))
        start = time.perf_counter()
        _, steps = linear_lfp(prep.cp, prep.sccs)
        elapsed = time.perf_counter() - start
        rows.append(BenchRow(size, len(prep.cp.herbrand_base()),
                             prep.gp.size, steps, elapsed))
    return BenchReport(family, rows)
