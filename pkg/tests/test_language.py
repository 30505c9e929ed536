import pytest
from hypothesis import given, strategies as st

from foundlog.language import (Certainty, Closedness, Completeness,
                               DeclarationError, defined_using,
                               dependency_graph, resolve_declarations,
                               scc_condensation, scc_order)
from foundlog.parser import parse_program

from conftest import APPENDIX_PROGRAMS, EXAMPLE_PROGRAMS, corpus_text


def resolved(text):
    return resolve_declarations(parse_program(text))


def test_win_defaults():
    program = resolved(corpus_text("win.fl"))
    move, win = program.decls["move"], program.decls["win"]
    assert move.certainty is Certainty.CERTAIN
    assert move.completeness is Completeness.NOT_APPLICABLE
    assert win.certainty is Certainty.UNCERTAIN
    assert win.completeness is Completeness.COMPLETE
    assert win.closedness is Closedness.OPEN


def test_reachability_all_certain():
    program = resolved(corpus_text("reach.fl"))
    assert all(d.certainty is Certainty.CERTAIN
               for d in program.decls.values())


def test_certain_on_self_negation_rejected():
    with pytest.raises(DeclarationError):
        resolved("certain q.\nq <- not q.")


def test_certain_on_even_negative_cycle_rejected():
    # Two negations around the cycle still force uncertainty.
    with pytest.raises(DeclarationError):
        resolved("certain q.\n" + APPENDIX_PROGRAMS[2])


def test_complete_needs_uncertain_conclusion():
    with pytest.raises(DeclarationError):
        resolved("complete p.\nq <- p.\np.")  # p is certain
    with pytest.raises(DeclarationError):
        resolved("uncertain p.\nincomplete p.\nq <- p.")  # p concludes nothing


def test_closed_needs_complete():
    with pytest.raises(DeclarationError):
        resolved("uncertain q.\nincomplete q.\nclosed q.\nq <- q.")
    program = resolved("closed q.\nq <- not q.")
    assert program.decls["q"].closedness is Closedness.CLOSED


def test_declaration_for_unused_predicate_rejected():
    with pytest.raises(DeclarationError):
        resolved("certain zig.\nq <- q.")


def test_uncertainty_propagates_to_dependents():
    program = resolved("uncertain p.\nq <- p.\np.")
    assert program.decls["q"].certainty is Certainty.UNCERTAIN
    with pytest.raises(DeclarationError):
        resolved("uncertain p.\ncertain q.\nq <- p.\np.")


def test_defined_using_win():
    relation = defined_using(parse_program(corpus_text("win.fl")))
    assert ("win", "win", True) in relation
    assert ("win", "move", False) in relation


def test_defined_using_even_parity_cycle():
    relation = defined_using(parse_program(APPENDIX_PROGRAMS[2]))
    assert ("q", "q", True) in relation
    assert ("p", "p", True) in relation


def test_defined_using_reach_positive_only():
    relation = defined_using(parse_program(corpus_text("reach.fl")))
    assert ("reach", "reach", False) in relation
    assert ("reach", "reach", True) not in relation


def test_scc_order_reachability():
    order = scc_order(parse_program(corpus_text("reach.fl")))
    assert set(map(frozenset, order)) == {
        frozenset({"source"}), frozenset({"edge"}), frozenset({"reach"})}
    assert order[-1] == frozenset({"reach"})


def test_scc_order_yale():
    order = scc_order(parse_program(corpus_text("yale.fl")))
    assert order.index(frozenset({"loaded"})) < order.index(frozenset({"alive"}))


def test_scc_order_self_recursive():
    order = scc_order(parse_program("q <- q."))
    assert order == (frozenset({"q"}),)


def test_resolve_idempotent():
    for text in list(APPENDIX_PROGRAMS.values()) + \
            [corpus_text(n) for n in EXAMPLE_PROGRAMS]:
        once = resolved(text)
        twice = resolve_declarations(once)
        assert once.decls == twice.decls


def test_certainty_restriction_complete():
    # No certain predicate sits on a negation-crossing cycle or depends on
    # an uncertain predicate, for every corpus program.
    for text in list(APPENDIX_PROGRAMS.values()) + \
            [corpus_text(n) for n in EXAMPLE_PROGRAMS]:
        program = resolved(text)
        relation = defined_using(program)
        for name, decl in program.decls.items():
            if decl.certainty is Certainty.CERTAIN:
                assert (name, name, True) not in relation
                for _, used, _ in {r for r in relation if r[0] == name}:
                    assert program.decls[used].certainty is Certainty.CERTAIN


def test_scc_homogeneity_and_topology():
    for text in list(APPENDIX_PROGRAMS.values()) + \
            [corpus_text(n) for n in EXAMPLE_PROGRAMS]:
        program = resolved(text)
        order = scc_order(program)
        position = {p: i for i, scc in enumerate(order) for p in scc}
        assert set(position) == program.predicates()
        for src, dst, _ in dependency_graph(program).edges:
            assert position[src] <= position[dst]
        for scc in order:
            kinds = {program.decls[p].certainty for p in scc}
            assert len(kinds) == 1


@given(st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n),
                        st.lists(st.tuples(st.integers(0, n - 1),
                                           st.integers(0, n - 1)),
                                 max_size=14))))
def test_scc_condensation_is_topological(case):
    n, pairs = case
    nodes = [f"v{i}" for i in range(n)]
    edges = [(f"v{a}", f"v{b}") for a, b in pairs]
    order = scc_condensation(nodes, edges)
    position = {p: i for i, scc in enumerate(order) for p in scc}
    assert sorted(position) == sorted(nodes)
    for src, dst in edges:
        assert position[src] <= position[dst]
    # members of one component reach each other iff grouped together
    reachable = {v: {v} for v in nodes}
    changed = True
    while changed:
        changed = False
        for src, dst in edges:
            new = reachable[dst] - reachable[src]
            if new:
                reachable[src] |= new
                changed = True
    for a in nodes:
        for b in nodes:
            together = position[a] == position[b]
            mutual = b in reachable[a] and a in reachable[b]
            assert together == mutual
