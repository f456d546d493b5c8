"""Command-line interface: output shapes and exit codes."""
import io

import pytest

from pasynch import b_half, b_one, lift, parse_pa, read_trace_csv, save_pa, twin
from pasynch.cli import main


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, instance in (("b_one", b_one()), ("b_half", b_half())):
        a = lift(instance)
        c = twin(a)
        paths[name] = str(tmp_path / f"{name}.pa")
        paths[name + "_lift"] = str(tmp_path / f"{name}_lift.pa")
        paths[name + "_twin"] = str(tmp_path / f"{name}_twin.pa")
        save_pa(instance.pa, paths[name])
        save_pa(a, paths[name + "_lift"])
        save_pa(c, paths[name + "_twin"])
    paths["dir"] = str(tmp_path)
    return paths


def test_accept(files, capsys):
    assert main(["accept", files["b_one"], "--word", "a"]) == 0
    assert capsys.readouterr().out == "1\n"
    assert main(["accept", files["b_half"], "--word", "a.a"]) == 0
    assert capsys.readouterr().out == "1/2\n"


def test_accept_empty_word(files, capsys):
    assert main(["accept", files["b_one"], "--word", ""]) == 0
    assert capsys.readouterr().out == "0\n"


def test_run_prints_final_distribution(files, capsys):
    assert main(["run", files["b_half"], "--word", "a"]) == 0
    assert capsys.readouterr().out == "sA 1/2\nsR 1/2\n"


def test_validate_ok(files, capsys):
    assert main(["validate", files["b_one_twin"]]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_validate_reports_violations(files, tmp_path, capsys):
    bad = tmp_path / "bad.pa"
    bad.write_text(
        "format: pa/1\nstates: s0\nletters: a\ninitial: s0 1\n"
        "accepting:\nrow: s0 a s0 1/2\n")
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "violation: row (s0,a) sums to 1/2" in out


def test_trace_stdout(files, capsys):
    assert main(["trace", files["b_one"], "--word", "a"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "step,letter,norm,s0,sA"
    assert lines[2] == "1,a,1,0,1"


def test_trace_csv_file(files, tmp_path, capsys):
    out = tmp_path / "trace.csv"
    assert main(["trace", files["b_half_twin"], "--word", "a.@sym:$",
                 "--csv", str(out)]) == 0
    assert capsys.readouterr().out == ""
    states, rows = read_trace_csv(io.StringIO(out.read_text()))
    assert len(rows) == 3
    assert all(sum(r.values()) == 1 for r in rows)


def test_lasso(files, capsys):
    assert main(["lasso", files["b_one_twin"], "--stem", "a.@sym:$",
                 "--loop", "@sym:#.a.@sym:$", "--reps", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10  # header + 9 steps
    assert lines[4].startswith("3,@sym:#,1/2")


def test_lift_twin_pipeline(files, tmp_path, capsys):
    lifted_path = str(tmp_path / "out_lift.pa")
    twin_path = str(tmp_path / "out_twin.pa")
    assert main(["lift", files["b_one"], "-o", lifted_path]) == 0
    assert main(["twin", lifted_path, "-o", twin_path]) == 0
    with open(twin_path) as fh:
        restored = parse_pa(fh.read())
    assert restored.pa == twin(lift(b_one())).pa


def test_twin_requires_lift_metadata(files, capsys):
    assert main(["twin", files["b_one"], "-o", "/dev/null"]) == 2
    assert "no lift metadata" in capsys.readouterr().err


def test_check_p1(files, capsys):
    assert main(["check-p1", files["b_one_twin"], "--v1", "a.@sym:$",
                 "--v2", "a"]) == 0
    assert capsys.readouterr().out == "PASS\n"


def test_check_p2(files, capsys):
    assert main(["check-p2", files["b_half_lift"], files["b_half_twin"],
                 "--word", "a.a.a"]) == 0
    assert capsys.readouterr().out == "PASS\n"


def test_check_p1_fail_exit_code(files, tmp_path, capsys):
    # corrupt the reset row of the success sink in the serialized twin
    with open(files["b_one_twin"]) as fh:
        text = fh.read()
    broken = text.replace(
        "row: @lift:qf @sym:# s0 1/2 @twin:s0 1/2",
        "row: @lift:qf @sym:# @lift:qn 1")
    bad = tmp_path / "broken_twin.pa"
    bad.write_text(broken)
    assert main(["check-p1", str(bad), "--v1", "a.@sym:$", "--v2", "a"]) == 1
    assert capsys.readouterr().out.startswith("FAIL: step 0")


def test_search(files, capsys):
    assert main(["search", files["b_half"], "--max-len", "8"]) == 0
    out = capsys.readouterr().out
    assert "word: a\n" in out
    assert "prob: 1/2\n" in out
    assert "explored: 9\n" in out
    assert "exhausted: true\n" in out


def test_search_budget_exceeded(files, capsys):
    assert main(["search", files["b_one"], "--max-len", "64",
                 "--budget", "10"]) == 3
    assert "budget" in capsys.readouterr().err


def test_schedule_success(files, capsys):
    assert main(["schedule", files["b_one"], "--k", "3", "--max-len", "4"]) == 0
    assert capsys.readouterr().out == "u1: a\nu2: a\nu3: a\n"


def test_schedule_failure(files, capsys):
    assert main(["schedule", files["b_half"], "--k", "1", "--max-len", "6"]) == 1
    assert "threshold 1-2^-1" in capsys.readouterr().err


def test_certify_pass(files, capsys):
    assert main(["certify", files["b_one_twin"],
                 "--schedule", "a.@sym:$,a.@sym:$"]) == 0
    out = capsys.readouterr().out
    assert "checkpoint 1: position=2 norm=1 threshold=1/2 ok" in out
    assert out.endswith("PASS\n")


def test_certify_fail(files, capsys):
    assert main(["certify", files["b_half_twin"], "--schedule", "a.@sym:$"]) == 1
    out = capsys.readouterr().out
    assert "norm=1/2 threshold=1/2 FAIL" in out
    assert out.endswith("FAIL\n")


def test_absorb(files, capsys):
    assert main(["absorb", files["b_one_twin"], "--prefix", "a.@sym:$",
                 "--horizon", "5"]) == 0
    assert capsys.readouterr().out == "PASS\n"


def test_absorb_precondition(files, capsys):
    assert main(["absorb", files["b_one_twin"], "--prefix", "a.@sym:$.@sym:#",
                 "--horizon", "5"]) == 2


def test_halfbound(files, capsys):
    assert main(["halfbound", files["b_one_twin"],
                 "--word", "a.@sym:#.a"]) == 0
    assert capsys.readouterr().out == "PASS\n"


def test_halfbound_rejects_commit(files, capsys):
    assert main(["halfbound", files["b_one_twin"], "--word", "a.@sym:$"]) == 2


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_unknown_flag(files, capsys):
    assert main(["accept", files["b_one"], "--word", "a", "--wat"]) == 2


def test_missing_file(capsys):
    assert main(["accept", "/nonexistent/x.pa", "--word", "a"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_bad_word_token(files, capsys):
    assert main(["accept", files["b_one"], "--word", "a..a"]) == 2
    assert "empty letter token" in capsys.readouterr().err


def test_unknown_letter_exit(files, capsys):
    assert main(["accept", files["b_one"], "--word", "z"]) == 2
