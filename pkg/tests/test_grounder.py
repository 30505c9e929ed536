import random

from foundlog.grounder import (G_FALSE, G_TRUE, GAnd, GConst, GExpr, GLit,
                               GNot, GOr, GroundAtom, constant_domain,
                               expr_size, ground, ground_size)
from foundlog.language import resolve_declarations
from foundlog.oracles import minimal_model_oracle
from foundlog.parser import parse_program
from foundlog.fuzz import random_program

from conftest import corpus_text


def prepared(text):
    return resolve_declarations(parse_program(text))


def test_domain_even():
    assert constant_domain(prepared(corpus_text("even.fl"))) == \
        ("0", "1", "2", "3")


def test_domain_barber():
    assert constant_domain(prepared(corpus_text("barber.fl"))) == ("'barber'",)


def test_domain_orders_numbers_before_strings():
    program = prepared("p('b').\np(10).\np(2).\np('a').")
    assert constant_domain(program) == ("2", "10", "'a'", "'b'")


def test_domain_empty():
    assert constant_domain(prepared("q <- not q.")) == ()


def test_zero_arity_ground_rule():
    gp = ground(prepared("q <- not q."))
    assert len(gp.rules) == 1
    rule = gp.rules[0]
    assert rule.head == GroundAtom("q")
    assert rule.body == GNot(GLit(GroundAtom("q")))
    assert gp.size == 3  # head + negation node + literal


def test_win_grounds_to_nine_rules():
    gp = ground(prepared(corpus_text("win.fl")))
    assert len(gp.rules) == 9  # 3 x 3 assignments over {1,2,3}


def test_quantifier_expansion():
    program = prepared(
        "lose(x) <- each y | not move(x,y) or win(y).\nmove(1,2).")
    gp = ground(program)
    by_head = {rule.head: rule.body for rule in gp.rules}
    want = GAnd((
        GOr((GNot(GLit(GroundAtom("move", ("1", "1")))),
             GLit(GroundAtom("win", ("1",))))),
        GOr((GNot(GLit(GroundAtom("move", ("1", "2")))),
             GLit(GroundAtom("win", ("2",))))),
    ))
    assert by_head[GroundAtom("lose", ("1",))] == want


def test_empty_domain_quantifiers_fold_to_constants():
    program = prepared("p <- some x | q(x).\nr <- each x | q(x).")
    gp = ground(program)
    bodies = {rule.head.predicate: rule.body for rule in gp.rules}
    assert bodies["p"] == G_FALSE
    assert bodies["r"] == G_TRUE


def test_true_false_folding_only():
    gp = ground(prepared("p <- q and true.\nr <- q or false.\ns <- q and false."))
    bodies = {rule.head.predicate: rule.body for rule in gp.rules}
    assert bodies["p"] == GLit(GroundAtom("q"))
    assert bodies["r"] == GLit(GroundAtom("q"))
    assert bodies["s"] == G_FALSE


def test_empty_program_size_zero():
    assert ground(prepared("")).size == 0


def _walk_count(expr: GExpr) -> int:
    # independent node walk used to pin the size metric
    if isinstance(expr, (GLit, GConst)):
        return 1
    if isinstance(expr, GNot):
        return 1 + _walk_count(expr.item)
    return 1 + sum(_walk_count(i) for i in expr.items)


def test_win_chain_size_quadratic():
    for n in (4, 8):
        facts = "".join(f"move({i},{i + 1}).\n" for i in range(1, n))
        program = prepared(
            "win(x) <- move(x,y) and not win(y).\n" + facts)
        gp = ground(program)
        expected = sum(1 + _walk_count(r.body) for r in gp.rules) + len(gp.facts)
        assert gp.size == expected
        assert len(gp.rules) == n * n
        assert gp.size == 5 * n * n + (n - 1)


def test_ground_bound_on_random_programs():
    # each source rule instantiates exactly n^(free vars) times, so the
    # total respects the n^k * r bound (k = max free variables per rule)
    from foundlog.language import free_variables
    rng = random.Random(7)
    for _ in range(60):
        program = resolve_declarations(random_program(rng))
        gp = ground(program)
        n = len(gp.domain)
        total = 0
        k = 0
        for rule in program.rules:
            k_i = len(free_variables(rule.body))
            k = max(k, k_i)
            total += n ** k_i
        assert len(gp.rules) == total
        assert n >= 1 or k == 0  # the generator keeps the bound meaningful
        assert len(gp.rules) <= (n ** k) * len(program.rules)


def test_grounding_matches_substitution_evaluation():
    # negation-free: grounding + least fixpoint == on-the-fly substitution
    from foundlog.pipeline import prepare
    texts = [corpus_text("reach.fl"),
             "path(x,y) <- edge(x,y).\npath(x,z) <- path(x,y) and edge(y,z).\n"
             "edge(1,2).\nedge(2,3).\nedge(3,1).\nedge(4,4)."]
    for text in texts:
        prep = prepare(text)
        itp = prep.founded_fast()
        assert itp.true_set() == minimal_model_oracle(prep.program)
