import json

import pytest

from foundlog.cli import main

from conftest import all_corpus_names


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def path(corpus_dir, name):
    return str(corpus_dir / name)


def test_eval_even_json(corpus_dir, capsys):
    code, out, _ = run(capsys, "eval", path(corpus_dir, "even.fl"),
                       "--format=json")
    assert code == 0
    payload = json.loads(out)
    assert payload["consistent"] is True
    assert payload["atoms"]["even(0)"] == "true"
    assert payload["atoms"]["even(1)"] == "false"
    assert payload["atoms"]["even(2)"] == "true"
    assert payload["atoms"]["even(3)"] == "false"
    assert list(payload["atoms"]) == sorted(payload["atoms"])


def test_eval_certain_program3(corpus_dir, tmp_path, capsys):
    source = tmp_path / "prog3_certain.fl"
    source.write_text("certain q.\nq <- q.\n", encoding="utf-8")
    code, out, _ = run(capsys, "eval", str(source))
    assert code == 0
    assert "q: false" in out


def test_eval_yale_text(corpus_dir, capsys):
    code, out, _ = run(capsys, "eval", path(corpus_dir, "yale.fl"))
    assert code == 0
    assert "alive(3): undefined" in out
    assert "consistent: true" in out


def test_eval_wfs_reports_iterations(corpus_dir, capsys):
    code, out, err = run(capsys, "eval", path(corpus_dir, "reach_uncertain.fl"),
                         "--semantics=wfs", "--format=json")
    assert code == 0
    payload = json.loads(out)
    assert payload["iterations"] == 1
    assert payload["atoms"]["reach(5)"] == "false"
    assert "overridden" in err  # explicit decls replaced by forced closure


def test_eval_parse_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.fl"
    bad.write_text("q <-\n", encoding="utf-8")
    code, _, err = run(capsys, "eval", str(bad))
    assert code == 1
    assert "parse error" in err


def test_eval_declaration_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.fl"
    bad.write_text("certain q.\nq <- not q.\n", encoding="utf-8")
    code, _, err = run(capsys, "eval", str(bad))
    assert code == 2
    assert "declaration error" in err


def test_eval_inconsistent_exit_3(tmp_path, capsys):
    bad = tmp_path / "clash.fl"
    bad.write_text("p.\nnot p.\n", encoding="utf-8")
    code, out, err = run(capsys, "eval", str(bad))
    assert code == 3
    assert "inconsistent" in err


def test_models_budget_exit_4(tmp_path, capsys):
    big = tmp_path / "big.fl"
    facts = "".join(f"e({i},{i + 1}).\n" for i in range(20))
    big.write_text(facts, encoding="utf-8")
    code, _, err = run(capsys, "models", str(big), "--semantics=supported")
    assert code == 4
    assert "budget" in err


def test_models_constraint_prog2(corpus_dir, capsys):
    code, out, _ = run(capsys, "models", path(corpus_dir, "prog2.fl"),
                       "--semantics=constraint", "--format=json")
    assert code == 0
    assert json.loads(out) == {"count": 2, "models": [["p"], ["q"]]}


def test_models_sms_prog7_empty(corpus_dir, capsys):
    code, out, _ = run(capsys, "models", path(corpus_dir, "prog7.fl"),
                       "--semantics=sms", "--format=json")
    assert code == 0
    assert json.loads(out) == {"count": 0, "models": []}


def test_models_constraint_prog8_single_empty(corpus_dir, capsys):
    code, out, _ = run(capsys, "models", path(corpus_dir, "prog8.fl"),
                       "--semantics=constraint", "--format=json")
    assert code == 0
    assert json.loads(out) == {"count": 1, "models": [[]]}


def test_models_fitting_prints_interpretation(corpus_dir, capsys):
    code, out, _ = run(capsys, "models", path(corpus_dir, "prog5.fl"),
                       "--semantics=fitting", "--format=json")
    assert code == 0
    assert json.loads(out)["atoms"] == {"p": "false", "q": "true"}


def test_models_fo(corpus_dir, capsys):
    code, out, _ = run(capsys, "models", path(corpus_dir, "prog1.fl"),
                       "--semantics=fo", "--format=json")
    assert code == 0
    assert json.loads(out) == {"count": 1, "models": [["q"]]}


def test_models_limit(corpus_dir, capsys):
    code, out, _ = run(capsys, "models", path(corpus_dir, "yale.fl"),
                       "--semantics=constraint", "--limit=3", "--format=json")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 24
    assert len(payload["models"]) == 3


def test_dump_flags(corpus_dir, capsys):
    code, out, _ = run(capsys, "eval", path(corpus_dir, "prog1.fl"),
                       "--dump-ground", "--dump-completed")
    assert code == 0
    assert "% ground rules" in out
    assert "q <- not q." in out
    assert "% completed program" in out
    assert "n.q <- q." in out


def test_trace_output(corpus_dir, capsys):
    code, out, _ = run(capsys, "eval", path(corpus_dir, "even.fl"), "--trace")
    assert code == 0
    assert any("<=" in line and "[" in line for line in out.splitlines())


def test_compare_golden_corpus(corpus_dir, capsys):
    for name in all_corpus_names():
        golden = corpus_dir / "golden" / (name[:-3] + ".txt")
        code, _, err = run(capsys, "compare", path(corpus_dir, name),
                           f"--golden={golden}")
        assert code == 0, (name, err)


def test_compare_golden_mismatch_exit_1(corpus_dir, tmp_path, capsys):
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("program: prog1.fl\nnothing\n", encoding="utf-8")
    code, _, err = run(capsys, "compare", path(corpus_dir, "prog1.fl"),
                       f"--golden={wrong}")
    assert code == 1
    assert "golden mismatch" in err


def test_compare_negation_free_single_model(tmp_path, capsys):
    source = tmp_path / "tiny.fl"
    source.write_text("p.\nq <- p.\n", encoding="utf-8")
    code, out, _ = run(capsys, "compare", str(source))
    assert code == 0
    lines = [l.split(":", 1)[1].strip() for l in out.splitlines()[1:]]
    assert lines[0] == "p, q"          # founded-uncertain
    assert len(set(lines[:4])) == 1    # all 3-valued cells identical
    assert len(set(lines[4:])) == 1    # all model cells identical
    assert lines[4] == "{p, q}"


def test_bench_report_and_verdict(capsys):
    code, out, _ = run(capsys, "bench", "--family=winchain", "--sizes=8,16")
    assert code == 0
    assert "verdict: pass" in out
    assert out.count("ratio=") == 2


def test_bench_single_size_no_verdict(capsys):
    code, out, _ = run(capsys, "bench", "--family=wincycle", "--sizes=9")
    assert code == 0
    assert "n/a" in out


def test_fuzz_clean(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed=2", "--count=25")
    assert code == 0
    assert "counterexamples: 0" in out


def test_fuzz_count_zero(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed=2", "--count=0")
    assert code == 0
    assert "checked: 0" in out


def test_json_outputs_byte_stable(corpus_dir, capsys):
    first = run(capsys, "models", path(corpus_dir, "yale.fl"),
                "--semantics=constraint", "--format=json")
    second = run(capsys, "models", path(corpus_dir, "yale.fl"),
                 "--semantics=constraint", "--format=json")
    assert first == second
    third = run(capsys, "eval", path(corpus_dir, "win.fl"), "--format=json")
    fourth = run(capsys, "eval", path(corpus_dir, "win.fl"), "--format=json")
    assert third == fourth
