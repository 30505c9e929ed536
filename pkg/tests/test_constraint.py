import random

from foundlog.cli import all_uncertain_variant, closure_variant
from foundlog.constraint import (constraint_models,
                                 constraint_models_incomplete, sms_filter)
from foundlog.founded import F, T, U, eval3, kleene_not
from foundlog.grounder import GroundAtom
from foundlog.parser import parse_program
from foundlog.pipeline import prepare
from foundlog.fuzz import fitting_variant, random_program
from foundlog.completion import is_negative_atom, base_atom

from conftest import APPENDIX_PROGRAMS, corpus_text


def uncertain_prep(text):
    return prepare(all_uncertain_variant(parse_program(text)))


def model_lists(ms):
    return ms.true_lists()


def test_negative_self_loop_has_no_model():
    assert constraint_models(uncertain_prep(APPENDIX_PROGRAMS[1])).count == 0


def test_alternating_pair_has_two_models_in_canonical_order():
    ms = constraint_models(uncertain_prep(APPENDIX_PROGRAMS[2]))
    assert model_lists(ms) == [["p"], ["q"]]


def test_disjunctive_loop_keeps_q():
    ms = constraint_models(uncertain_prep(APPENDIX_PROGRAMS[7]))
    assert model_lists(ms) == [["q"]]


def test_incomplete_variants_match_first_order_readings():
    gained = {
        1: [["q"]],
        2: [["p"], ["p", "q"], ["q"]],
        5: [["p"], ["p", "q"], ["q"]],
        6: [[], ["p", "q"], ["q"]],
        8: [[], ["q"]],
    }
    unchanged = {3: [[], ["q"]], 4: [[], ["p", "q"]], 7: [["q"]]}
    for number, expected in {**gained, **unchanged}.items():
        ms = constraint_models_incomplete(APPENDIX_PROGRAMS[number])
        assert model_lists(ms) == expected, number


def test_sms_filter_drops_unstable_supported_model():
    prep = prepare(closure_variant(parse_program(APPENDIX_PROGRAMS[7])))
    closure_itp = prepare(
        closure_variant(parse_program(APPENDIX_PROGRAMS[7]))).founded_fast()
    models = constraint_models(prep, closure_itp)
    assert model_lists(models) == [["q"]]
    assert sms_filter(models, prep).count == 0


def test_sms_filter_keeps_stable_model():
    text = "uncertain q.\nclosed q.\nq <- q."
    prep = prepare(text)
    models = constraint_models(prep)
    assert model_lists(models) == [[], ["q"]]
    assert model_lists(sms_filter(models, prep)) == [[]]


def test_sms_filter_no_closed_atoms_is_identity():
    prep = prepare("q <- p.\np.")
    models = constraint_models(prep)
    assert model_lists(sms_filter(models, prep)) == model_lists(models)


def test_two_valued_founded_gives_exactly_itself():
    prep = prepare(corpus_text("even.fl"))
    founded = prep.founded_fast()
    ms = constraint_models(prep, founded)
    assert ms.count == 1
    assert ms.models[0] == founded.true_set()


def test_yale_constraint_patterns():
    prep = prepare(corpus_text("yale.fl"))
    ms = constraint_models(prep)
    lists = model_lists(ms)
    assert ms.count == 24
    assert any("loaded(2)" in m and "alive(3)" not in m for m in lists)
    assert any("loaded(2)" not in m and "alive(3)" in m for m in lists)
    assert not any("loaded(2)" in m and "alive(3)" in m for m in lists)


def test_limit_truncates_but_count_stays_exact():
    prep = prepare(corpus_text("yale.fl"))
    ms = constraint_models(prep, limit=5)
    assert ms.count == 24
    assert len(ms.models) == 5
    assert ms.exact


def test_every_model_extends_founded_and_satisfies_rules():
    # independent of the search: check the defining conditions directly
    rng = random.Random(404)
    programs = [fitting_variant(random_program(rng)) for _ in range(40)]
    texts = [APPENDIX_PROGRAMS[n] for n in (2, 3, 5, 7)]
    preps = [prepare(p) for p in programs] + [uncertain_prep(t) for t in texts]
    for prep in preps:
        founded = prep.founded_fast()
        if not founded.consistent:
            continue
        for model in constraint_models(prep, founded).models:
            for atom, value in founded.values.items():
                if value is T:
                    assert atom in model
                elif value is F:
                    assert atom not in model

            def read(atom):
                if is_negative_atom(atom):
                    return kleene_not(read(base_atom(atom)))
                return T if atom in model else F

            for rule in prep.gp.rules:
                body = eval3(rule.body, read)
                head = read(rule.head)
                if not rule.head_positive:
                    head = kleene_not(head)
                assert not (body is T and head is F)
