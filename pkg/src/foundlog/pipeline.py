"""Convenience wiring: parse, resolve, ground, complete, evaluate."""
from __future__ import annotations

from dataclasses import dataclass

from .completion import CompletedProgram, complete_program
from .founded import DerivationTrace, Interpretation, founded_model, linear_lfp
from .grounder import GroundProgram, ground
from .language import Program, resolve_declarations, scc_order
from .parser import parse_program


@dataclass
class Prepared:
    program: Program                 # resolved
    sccs: tuple[frozenset[str], ...]
    gp: GroundProgram
    cp: CompletedProgram             # renamed

    def founded(self) -> tuple[Interpretation, DerivationTrace]:
        return founded_model(self.cp, self.sccs)

    def founded_fast(self) -> Interpretation:
        itp, _ = linear_lfp(self.cp, self.sccs)
        return itp


def prepare(source: str | Program) -> Prepared:
    program = parse_program(source) if isinstance(source, str) else source
    program = resolve_declarations(program)
    sccs = scc_order(program)
    gp = ground(program)
    cp = complete_program(gp, program.decls)
    return Prepared(program, sccs, gp, cp)
