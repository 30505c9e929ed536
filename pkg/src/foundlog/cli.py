"""Command-line surface.

Commands::

    foundlog eval FILE [--semantics=founded|wfs] [--format=text|json]
                       [--trace] [--dump-ground] [--dump-completed]
    foundlog models FILE --semantics=constraint|sms|supported|fitting|fo
                         [--limit=N] [--format=text|json]
    foundlog compare FILE [--golden=EXPECTED]
    foundlog bench --family=winchain|wincycle|reachgrid --sizes=a,b,c
    foundlog fuzz --seed=S --count=N

Exit codes: 0 success (and all verdicts pass), 1 parse error or failed
verdict (golden mismatch, linearity band, fuzz counterexample), 2
declaration error, 3 inconsistent founded model, 4 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import difflib
import json
import sys

from .bench import FAMILIES, run_family
from .closed import wfs_by_closure
from .constraint import (ModelSet, constraint_models, replace_decls,
                         sms_filter)
from .founded import F, Interpretation, T, U, founded_model, linear_lfp
from .fuzz import run_fuzz
from .grounder import render_ground_rule
from .language import (Certainty, Closedness, Completeness, DeclarationError,
                       PredicateDecl, Program, resolve_declarations)
from .oracles import (BudgetExceeded, OracleBudget, fitting_oracle, fo_oracle,
                      supported_oracle)
from .parser import ParseError, parse_program
from .pipeline import Prepared, prepare

EXIT_OK = 0
EXIT_PARSE_OR_VERDICT = 1
EXIT_DECLARATION = 2
EXIT_INCONSISTENT = 3
EXIT_BUDGET = 4

# Oracles behind the CLI get a looser budget than the library default: the
# polynomial ones may visit more atoms, enumeration stays capped at 2^16.
CLI_BUDGET = OracleBudget(max_ground_atoms=64, max_models_examined=1 << 16)

# compare keeps golden tables readable and fast: model sets beyond this many
# models print as a count, and constraint cells with too many undefined
# atoms are not enumerated.
COMPARE_MODEL_LISTING = 4
COMPARE_MAX_UNDEFINED = 14


def _print_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_program(path: str) -> Program:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    program = parse_program(text)
    for warning in program.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return program


# ---------------------------------------------------------------------------
# Declaration regimes
# ---------------------------------------------------------------------------

def all_uncertain_variant(program: Program) -> Program:
    """Every predicate uncertain; explicit completeness kept, nothing closed."""
    decls = {}
    for name in program.arities:
        given = program.decls.get(name)
        decls[name] = PredicateDecl(name, Certainty.UNCERTAIN,
                                    given.completeness if given else None,
                                    None)
    return replace_decls(program, decls)


def defaults_variant(program: Program) -> Program:
    """Certain wherever legal; explicit completeness kept where still legal
    (a predicate that defaults to certain cannot stay declared incomplete)."""
    bare = Program(rules=program.rules, facts=program.facts,
                   arities=dict(program.arities))
    resolved = resolve_declarations(bare)
    decls = {}
    for name, decl in resolved.decls.items():
        given = program.decls.get(name)
        completeness = decl.completeness
        if (given is not None and given.completeness is not None
                and decl.certainty is Certainty.UNCERTAIN):
            completeness = given.completeness
        decls[name] = PredicateDecl(name, decl.certainty, completeness,
                                    Closedness.OPEN)
    return replace_decls(program, decls)


def closure_variant(program: Program) -> Program:
    """Forced declarations for WFS/SMS: defaults plus closed everywhere."""
    bare = Program(rules=program.rules, facts=program.facts,
                   arities=dict(program.arities))
    resolved = resolve_declarations(bare)
    decls = {}
    for name, decl in resolved.decls.items():
        closed = (Closedness.CLOSED
                  if decl.completeness is Completeness.COMPLETE
                  else decl.closedness)
        decls[name] = PredicateDecl(name, decl.certainty, decl.completeness,
                                    closed)
    return replace_decls(program, decls)


def _decls_differ(a: Program, b: Program) -> bool:
    return resolve_declarations(a).decls != resolve_declarations(b).decls


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------

def _interp_cell(itp: Interpretation) -> str:
    if not itp.consistent:
        listed = ", ".join(str(a) for a in itp.conflicts)
        return f"inconsistent ({listed})"
    parts = []
    for atom in sorted(itp.values, key=str):
        value = itp.values[atom]
        if value is T:
            parts.append(str(atom))
        elif value is F:
            parts.append(f"¬{atom}")
        else:
            parts.append(f"U {atom}")
    return ", ".join(parts) if parts else "empty"


def _model_text(model, atoms) -> str:
    parts = [str(a) if a in model else f"¬{a}" for a in atoms]
    return "{" + ", ".join(parts) + "}"


def _models_cell(models: ModelSet, atoms) -> str:
    if models.count == 0:
        return "no model"
    if models.count > COMPARE_MODEL_LISTING:
        suffix = "" if models.exact else " or more"
        return f"{models.count} models{suffix}"
    return ", ".join(_model_text(m, atoms) for m in models.models)


def _interp_payload(itp: Interpretation) -> dict:
    return {
        "atoms": {str(a): itp.values[a].value for a in itp.values},
        "consistent": itp.consistent,
    }


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    program = _load_program(args.file)
    if args.semantics == "wfs":
        forced = closure_variant(program)
        if program.decls and _decls_differ(program, forced):
            print("warning: declarations overridden: wfs forces complete and "
                  "closed predicates", file=sys.stderr)
        program = forced
    prep = prepare(program)

    if args.dump_ground:
        print("% ground rules")
        for rule in prep.gp.rules:
            print(render_ground_rule(rule))
        for fact in prep.gp.facts:
            head = str(fact.atom) if fact.positive else f"not {fact.atom}"
            print(f"{head}.")
    if args.dump_completed:
        print("% completed program")
        for rule in prep.cp.all_rules():
            print(render_ground_rule(rule))
        for fact in prep.cp.facts:
            print(f"{fact.atom}.")

    iterations = None
    if args.semantics == "wfs":
        closure = wfs_by_closure(prep)
        itp = closure.interpretation
        iterations = closure.iterations
    elif args.trace:
        itp, trace = founded_model(prep.cp, prep.sccs)
        for line in trace.lines():
            print(line)
    else:
        itp, _ = linear_lfp(prep.cp, prep.sccs)

    if args.format == "json":
        payload = _interp_payload(itp)
        if iterations is not None:
            payload["iterations"] = iterations
        _print_json(payload)
    else:
        for atom in sorted(itp.values, key=str):
            print(f"{atom}: {itp.values[atom].value}")
        print(f"consistent: {'true' if itp.consistent else 'false'}")
        if iterations is not None:
            print(f"iterations: {iterations}")
    if not itp.consistent:
        print("error: founded model is inconsistent", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

def cmd_models(args) -> int:
    program = _load_program(args.file)
    if args.semantics == "fitting":
        prep = prepare(program)
        itp = fitting_oracle(prep.gp, CLI_BUDGET)
        if args.format == "json":
            _print_json(_interp_payload(itp))
        else:
            for atom in sorted(itp.values, key=str):
                print(f"{atom}: {itp.values[atom].value}")
        return EXIT_OK

    if args.semantics == "constraint":
        prep = prepare(program)
        models = constraint_models(prep, limit=args.limit)
    elif args.semantics == "sms":
        prep = prepare(closure_variant(program))
        closure = wfs_by_closure(prep)
        models = sms_filter(
            constraint_models(prep, closure.interpretation, limit=args.limit),
            prep)
    elif args.semantics == "supported":
        prep = prepare(program)
        models = supported_oracle(prep.gp, CLI_BUDGET)
    else:  # fo
        prep = prepare(program)
        models = fo_oracle(prep.gp, CLI_BUDGET)

    shown = models.models[:args.limit] if args.limit else models.models
    if args.format == "json":
        payload = {
            "count": models.count,
            "models": [sorted(str(a) for a in m) for m in shown],
        }
        if not models.exact:
            payload["exact"] = False
        _print_json(payload)
    else:
        if models.count == 0:
            print("no model")
        else:
            exact = "" if models.exact else " (lower bound)"
            print(f"count: {models.count}{exact}")
            for m in shown:
                atoms = ", ".join(sorted(str(a) for a in m))
                print("model: " + (atoms if atoms else "(all false)"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def compare_table(program: Program, name: str) -> str:
    """One row of cells per declaration regime, mirroring the paper-style
    founded/WFS/Fitting/constraint/SMS/supported comparison."""
    cells: list[tuple[str, str]] = []

    uncertain = prepare(all_uncertain_variant(program))
    atoms = uncertain.cp.herbrand_base()
    cells.append(("founded-uncertain", _interp_cell(uncertain.founded_fast())))

    defaults = prepare(defaults_variant(program))
    has_certain = any(d.certainty is Certainty.CERTAIN
                      for d in defaults.program.decls.values())
    cells.append(("founded-certain",
                  _interp_cell(defaults.founded_fast()) if has_certain
                  else "N/A"))

    closure_prep = prepare(closure_variant(program))
    closure = wfs_by_closure(closure_prep)
    cells.append(("wfs", _interp_cell(closure.interpretation)))

    def oracle_cell(run) -> str:
        try:
            return run()
        except BudgetExceeded:
            return "beyond oracle budget"
        except ValueError:
            return "not defined for this program"

    cells.append(("fitting", oracle_cell(
        lambda: _interp_cell(fitting_oracle(uncertain.gp, CLI_BUDGET)))))

    def constraint_cell(prep: Prepared,
                        founded: Interpretation | None = None) -> str:
        itp = founded if founded is not None else prep.founded_fast()
        if not itp.consistent:
            return "inconsistent founded model"
        undefined = sum(1 for v in itp.values.values() if v is U)
        if undefined > COMPARE_MAX_UNDEFINED:
            return f"not enumerated ({undefined} undefined atoms)"
        return _models_cell(constraint_models(prep, itp), atoms)

    cells.append(("constraint-uncertain", constraint_cell(uncertain)))
    cells.append(("constraint-certain",
                  constraint_cell(defaults) if has_certain else "N/A"))

    def sms_cell() -> str:
        itp = closure.interpretation
        if not itp.consistent:
            return "inconsistent founded model"
        undefined = sum(1 for v in itp.values.values() if v is U)
        if undefined > COMPARE_MAX_UNDEFINED:
            return f"not enumerated ({undefined} undefined atoms)"
        models = sms_filter(constraint_models(closure_prep, itp), closure_prep)
        return _models_cell(models, atoms)

    cells.append(("sms", sms_cell()))
    cells.append(("supported", oracle_cell(
        lambda: _models_cell(supported_oracle(uncertain.gp, CLI_BUDGET),
                             atoms))))

    width = max(len(label) for label, _ in cells)
    lines = [f"program: {name}"]
    lines.extend(f"{label.ljust(width)} : {cell}" for label, cell in cells)
    return "".join(line + "\n" for line in lines)


def cmd_compare(args) -> int:
    program = _load_program(args.file)
    name = args.file.rsplit("/", 1)[-1]
    table = compare_table(program, name)
    print(table, end="")
    if args.golden:
        with open(args.golden, encoding="utf-8") as handle:
            expected = handle.read()
        if table.rstrip("\n") != expected.rstrip("\n"):
            diff = difflib.unified_diff(
                expected.splitlines(keepends=True),
                table.splitlines(keepends=True),
                fromfile=args.golden, tofile="computed")
            sys.stderr.writelines(diff)
            print("golden mismatch", file=sys.stderr)
            return EXIT_PARSE_OR_VERDICT
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench and fuzz
# ---------------------------------------------------------------------------

def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    report = run_family(args.family, sizes)
    for row in report.rows:
        print(f"size={row.size} atoms={row.ground_atoms} "
              f"ground={row.ground_size} steps={row.steps} "
              f"ratio={row.ratio:.3f} eval={row.eval_seconds:.3f}s")
    if report.verdict is None:
        print("verdict: n/a (need at least two sizes)")
        return EXIT_OK
    print(f"verdict: {report.verdict}")
    return EXIT_OK if report.verdict == "pass" else EXIT_PARSE_OR_VERDICT


def cmd_fuzz(args) -> int:
    report = run_fuzz(args.seed, args.count)
    print(f"checked: {report.checked}")
    print(f"counterexamples: {len(report.failures)}")
    for text, what in report.failures:
        print(f"--- {what}")
        print(text, end="")
    return EXIT_OK if report.ok else EXIT_PARSE_OR_VERDICT


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foundlog",
        description="Founded and constraint semantics for rules with "
                    "unrestricted negation")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="print the 3-valued interpretation")
    p_eval.add_argument("file")
    p_eval.add_argument("--semantics", choices=["founded", "wfs"],
                        default="founded")
    p_eval.add_argument("--format", choices=["text", "json"], default="text")
    p_eval.add_argument("--trace", action="store_true")
    p_eval.add_argument("--dump-ground", action="store_true")
    p_eval.add_argument("--dump-completed", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_models = sub.add_parser("models", help="enumerate 2-valued models")
    p_models.add_argument("file")
    p_models.add_argument("--semantics", required=True,
                          choices=["constraint", "sms", "supported",
                                   "fitting", "fo"])
    p_models.add_argument("--limit", type=int, default=None)
    p_models.add_argument("--format", choices=["text", "json"], default="text")
    p_models.set_defaults(func=cmd_models)

    p_compare = sub.add_parser("compare",
                               help="semantics side by side per regime")
    p_compare.add_argument("file")
    p_compare.add_argument("--golden", default=None,
                           help="expected table to diff against")
    p_compare.set_defaults(func=cmd_compare)

    p_bench = sub.add_parser("bench", help="linearity measurement")
    p_bench.add_argument("--family", required=True, choices=list(FAMILIES))
    p_bench.add_argument("--sizes", required=True,
                         help="comma-separated family sizes")
    p_bench.set_defaults(func=cmd_bench)

    p_fuzz = sub.add_parser("fuzz", help="differential testing vs oracles")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--count", type=int, default=100)
    p_fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE_OR_VERDICT
    except DeclarationError as err:
        print(f"declaration error: {err.message}", file=sys.stderr)
        return EXIT_DECLARATION
    except BudgetExceeded as err:
        print(f"oracle budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE_OR_VERDICT


if __name__ == "__main__":
    raise SystemExit(main())
