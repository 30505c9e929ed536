import itertools
import random

from foundlog.closed import self_false, wfs_by_closure
from foundlog.founded import F, T, U, eval3
from foundlog.grounder import GroundAtom
from foundlog.oracles import wfs_oracle
from foundlog.pipeline import prepare
from foundlog.completion import is_negative_atom
from foundlog.founded import kleene_not

from conftest import APPENDIX_PROGRAMS


def closed_text(text):
    # every uncertain conclusion predicate closed (complete is the default)
    from foundlog.parser import parse_program
    from foundlog.cli import closure_variant
    return prepare(closure_variant(parse_program(text)))


def all_uncertain_closed(text):
    # every predicate uncertain; conclusion predicates complete and closed
    from foundlog.parser import parse_program
    from foundlog.language import (Certainty, Closedness, Completeness,
                                   PredicateDecl)
    from foundlog.constraint import replace_decls
    program = parse_program(text)
    conclusions = {r.conclusion.atom.predicate for r in program.rules}
    decls = {}
    for name in program.arities:
        in_conclusion = name in conclusions
        decls[name] = PredicateDecl(
            name, Certainty.UNCERTAIN,
            Completeness.COMPLETE if in_conclusion
            else Completeness.NOT_APPLICABLE,
            Closedness.CLOSED if in_conclusion else Closedness.OPEN)
    return prepare(replace_decls(program, decls))


def test_positive_loop_is_self_false():
    prep = all_uncertain_closed(APPENDIX_PROGRAMS[3])  # q <- q
    itp = prep.founded_fast()
    assert itp.values[GroundAtom("q")] is U
    assert self_false(itp, prep.cp) == frozenset({GroundAtom("q")})


def test_negative_loop_is_not_self_false():
    prep = closed_text(APPENDIX_PROGRAMS[1])  # q <- not q
    itp = prep.founded_fast()
    assert self_false(itp, prep.cp) == frozenset()


def test_two_valued_model_has_no_self_false():
    prep = closed_text("q <- p.\np.")
    itp = prep.founded_fast()
    assert itp.is_two_valued()
    assert self_false(itp, prep.cp) == frozenset()


def test_self_false_set_is_greatest():
    # no single undefined atom outside the set can be added
    for text in APPENDIX_PROGRAMS.values():
        prep = all_uncertain_closed(text)
        itp = prep.founded_fast()
        chosen = self_false(itp, prep.cp)
        candidates = {a for a, v in itp.values.items()
                      if v is U and prep.program.decls[a.predicate].closedness.value == "closed"}

        def qualifies(subset):
            def read(atom):
                if is_negative_atom(atom):
                    return itp.value(atom)
                if atom in subset:
                    return F
                return itp.value(atom)
            return all(eval3(prep.cp.combined_body[a], read) is F
                       for a in subset)

        assert qualifies(chosen)
        for extra in candidates - chosen:
            assert not qualifies(chosen | {extra})


def test_wfs_by_closure_matches_table_rows():
    q = GroundAtom("q")
    assert closed_interp(APPENDIX_PROGRAMS[3]).values[q] is F
    assert closed_interp(APPENDIX_PROGRAMS[8]).values[q] is F
    assert closed_interp(APPENDIX_PROGRAMS[1]).values[q] is U
    assert closed_interp(APPENDIX_PROGRAMS[7]).values[q] is U


def closed_interp(text):
    return wfs_by_closure(closed_text(text)).interpretation


def test_no_closed_predicates_is_identity():
    prep = prepare(APPENDIX_PROGRAMS[3])  # q uncertain complete, open
    result = wfs_by_closure(prep)
    assert result.iterations == 0
    assert result.interpretation == prep.founded_fast()


def test_iteration_bound():
    chain = "a <- a.\nb <- a or b.\nc <- b or c.\n"
    prep = closed_text(chain)
    itp = prep.founded_fast()
    undefined = sum(1 for v in itp.values.values() if v is U)
    result = wfs_by_closure(prep)
    assert result.iterations <= undefined + 1
    assert result.interpretation.is_two_valued()


def _win_program(edges, n):
    facts = "".join(f"move({a},{b}).\n" for a, b in edges)
    consts = "".join(f"pos({i}).\n" for i in range(1, n + 1))
    return ("win(x) <- move(x,y) and not win(y).\n" + facts + consts)


def test_win_graphs_match_wfs_oracle_exhaustively():
    # all move relations over 2 vertices, and a sample over 3
    pairs2 = list(itertools.product((1, 2), repeat=2))
    for bits in range(2 ** len(pairs2)):
        edges = [p for i, p in enumerate(pairs2) if bits >> i & 1]
        prep = closed_text(_win_program(edges, 2))
        assert wfs_by_closure(prep).interpretation == wfs_oracle(prep.gp), edges

    rng = random.Random(5)
    pairs3 = list(itertools.product((1, 2, 3), repeat=2))
    for _ in range(40):
        edges = [p for p in pairs3 if rng.random() < 0.4]
        prep = closed_text(_win_program(edges, 3))
        oracle = wfs_oracle(prep.gp, budget=_loose_budget())
        assert wfs_by_closure(prep).interpretation == oracle, edges


def _loose_budget():
    from foundlog.oracles import OracleBudget
    return OracleBudget(max_ground_atoms=64)


def test_reach_closed_collapses_cycles_to_false():
    from conftest import corpus_text
    text = "closed reach.\n" + corpus_text("reach_uncertain.fl")
    result = wfs_by_closure(prepare(text))
    reach = {str(a): v for a, v in result.interpretation.values.items()
             if a.predicate == "reach"}
    assert reach == {"reach(1)": T, "reach(2)": T, "reach(3)": F,
                     "reach(4)": F, "reach(5)": F, "reach(6)": F}
    assert result.iterations == 1
