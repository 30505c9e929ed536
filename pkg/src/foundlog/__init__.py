"""foundlog: founded and constraint semantics for Datalog with unrestricted
negation, plus brute-force oracles for the classic semantics it subsumes."""

from .language import (Atom, Certainty, Closedness, Completeness,
                       DeclarationError, Fact, Literal, PredicateDecl,
                       Program, Rule, Term, resolve_declarations, scc_order)
from .parser import ParseError, parse_program, render_program
from .grounder import GroundAtom, GroundProgram, constant_domain, ground, ground_size
from .completion import CompletedProgram, complete_program
from .founded import (DerivationTrace, Interpretation, Truth, eval3,
                      founded_model, linear_lfp)
from .closed import ClosureResult, self_false, wfs_by_closure
from .constraint import (ModelSet, constraint_models,
                         constraint_models_incomplete, sms_filter)
from .oracles import (BudgetExceeded, NotStratified, OracleBudget,
                      fitting_oracle, fo_oracle, sms_oracle,
                      stratified_oracle, supported_oracle, wfs_oracle)
from .pipeline import Prepared, prepare

__version__ = "0.1.0"
