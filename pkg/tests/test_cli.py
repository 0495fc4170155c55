import io
import json
import pathlib
import subprocess
import sys

import pytest

from subposetlab.cli import main

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_gen_and_verify_rep(capsys, tmp_path):
    code, out, err = run(capsys, "gen-rep", "--kind", "crown14")
    assert code == 0
    rep = json.loads(out)
    assert rep["k"] == 3 and rep["l"] == 7 and rep["target"] == "crown:14"
    path = write_json(tmp_path, "rep.json", rep)
    code, out, err = run(capsys, "verify-rep", "--file", path)
    assert code == 0
    res = json.loads(out)
    assert res["verified"] is True
    assert res["partition"] == [[1, 4], [2, 6], [3, 5, 7]]
    assert sorted(res["embedding"]) == list(range(14))
    assert "elapsed" in err


def test_verify_rep_embedding_failure(capsys, tmp_path):
    code, out, _ = run(capsys, "gen-rep", "--kind", "even_cycle:2")
    rep = json.loads(out)
    rep["family"] = rep["family"][:-1]
    path = write_json(tmp_path, "broken.json", rep)
    code, out, _ = run(capsys, "verify-rep", "--file", path)
    assert code == 1
    res = json.loads(out)
    assert res["verified"] is False and res["reason"] == "embedding"


def test_verify_rep_sizes_failure(capsys, tmp_path):
    rep = {"k": 3, "l": 7, "family": [[1], [1, 2, 3]], "target": "crown:4"}
    path = write_json(tmp_path, "sizes.json", rep)
    code, out, _ = run(capsys, "verify-rep", "--file", path)
    assert code == 1
    assert json.loads(out)["reason"] == "sizes"


def test_verify_rep_input_errors(capsys, tmp_path):
    code, out, err = run(capsys, "verify-rep", "--file", str(tmp_path / "nope.json"))
    assert code == 2 and out == "" and "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, "verify-rep", "--file", str(bad))
    assert code == 2
    missing = write_json(tmp_path, "missing.json", {"k": 2})
    code, _, err = run(capsys, "verify-rep", "--file", str(missing))
    assert code == 2


def test_gen_rep_kinds_and_errors(capsys):
    code, out, _ = run(capsys, "gen-rep", "--kind", "even_cycle:3")
    assert code == 0
    rep = json.loads(out)
    assert rep["k"] == 2 and rep["l"] == 6 and rep["target"] == "crown:12"
    code, out, _ = run(capsys, "gen-rep", "--kind", "tight_cycle:3,2")
    assert code == 0
    rep = json.loads(out)
    assert rep["k"] == 3 and rep["l"] == 6 and rep["target"] == "crown:12"
    assert run(capsys, "gen-rep", "--kind", "widget")[0] == 2
    assert run(capsys, "gen-rep", "--kind", "even_cycle:1,2")[0] == 2
    assert run(capsys, "gen-rep", "--kind", "even_cycle:x")[0] == 2
    assert run(capsys, "gen-rep", "--kind", "crown14:3")[0] == 2
    assert run(capsys, "gen-rep", "--kind", "even_cycle:1")[0] == 2


def test_search_rep(capsys):
    code, out, _ = run(
        capsys, "search-rep", "--target", "crown:8", "--k", "2", "--l-max", "4"
    )
    assert code == 0
    res = json.loads(out)
    assert res["found"] is True
    assert len(res["family"]) == 8
    code, out, _ = run(
        capsys, "search-rep", "--target", "crown:4", "--k", "2", "--l-max", "2"
    )
    assert code == 1
    assert json.loads(out) == {"found": False}
    code, _, _ = run(
        capsys, "search-rep", "--target", "chain:3", "--k", "2", "--l-max", "4"
    )
    assert code == 2


def test_search_rep_budget_exhaustion(capsys):
    code, out, err = run(
        capsys,
        "search-rep",
        "--target",
        "crown:8",
        "--k",
        "2",
        "--l-max",
        "4",
        "--budget",
        "2",
    )
    assert code == 3 and out == ""
    assert "budget" in err and "elapsed" in err


def test_la_command(capsys):
    code, out, _ = run(capsys, "la", "--n", "3", "--pattern", "chain:2")
    assert code == 0
    res = json.loads(out)
    assert res["value"] == 3 and res["optimality"] == "proven"
    assert res["witness"] == {"n": 3, "sets": [[1], [2], [3]]}


def test_lambda_command(capsys):
    code, out, _ = run(capsys, "lambda", "--n", "2", "--pattern", "crown:4")
    assert code == 0
    res = json.loads(out)
    assert res["value"] == {"num": "3", "den": "1"}
    assert res["optimality"] == "proven"


def test_lubell_command_and_stdin(capsys, tmp_path, monkeypatch):
    fam = {"n": 3, "sets": [[1], [2, 3]]}
    path = write_json(tmp_path, "fam.json", fam)
    code, out, _ = run(capsys, "lubell", "--file", path)
    assert code == 0
    res = json.loads(out)
    assert res == {
        "n": 3,
        "size": 2,
        "lubell": {"num": "2", "den": "3"},
    }
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(fam)))
    code, out2, _ = run(capsys, "lubell", "--file", "-")
    assert code == 0 and out2 == out


def test_chain_stats_command(capsys, tmp_path):
    path = write_json(tmp_path, "fam.json", {"n": 2, "sets": [[], [1], [1, 2]]})
    code, out, _ = run(capsys, "chain-stats", "--file", path)
    assert code == 0
    res = json.loads(out)
    assert res["pair_expectation"] == {"num": "2", "den": "1"}
    assert res["triple_expectation"] == {"num": "1", "den": "1"}
    assert res["gap_histogram"] == {
        "1": {"num": "1", "den": "1"},
        "2": {"num": "1", "den": "1"},
    }


def test_turan_command(capsys):
    code, out, _ = run(capsys, "turan", "--n", "5", "--k", "2", "--sizes", "2,2")
    assert code == 0
    res = json.loads(out)
    assert res["value"] == 6
    assert res["delta"] == {"num": "1", "den": "2"}
    assert len(res["witness"]["edges"]) == 6
    assert run(capsys, "turan", "--n", "4", "--k", "2", "--sizes", "2,x")[0] == 2
    assert run(capsys, "turan", "--n", "4", "--k", "2", "--sizes", "2,2,2")[0] == 2


def test_partite_command(capsys, tmp_path):
    square = write_json(
        tmp_path,
        "sq.json",
        {"k": 2, "l": 4, "edges": [[1, 2], [2, 3], [3, 4], [1, 4]]},
    )
    code, out, _ = run(capsys, "partite", "--file", square)
    assert code == 0
    res = json.loads(out)
    assert res["partite"] is True and res["partition"] == [[1, 3], [2, 4]]
    triangle = write_json(
        tmp_path, "tri.json", {"k": 2, "l": 3, "edges": [[1, 2], [2, 3], [1, 3]]}
    )
    code, out, _ = run(capsys, "partite", "--file", triangle)
    assert code == 1
    assert json.loads(out) == {"partite": False}


def test_scd_command(capsys):
    code, out, _ = run(capsys, "scd", "--n", "4", "--lo", "1", "--hi", "3")
    assert code == 0
    res = json.loads(out)
    assert list(res) == ["n", "level_lo", "level_hi", "peak_level", "count", "chains"]
    assert res["count"] == 6 and res["peak_level"] == 2
    code, out, _ = run(capsys, "scd", "--n", "3")
    res = json.loads(out)
    assert res["level_lo"] == 0 and res["level_hi"] == 3 and res["count"] == 3
    assert run(capsys, "scd", "--n", "4", "--lo", "3", "--hi", "1")[0] == 2


def test_tail_check_command(capsys):
    code, out, _ = run(capsys, "tail-check", "--n", "10")
    assert code == 0
    res = json.loads(out)
    assert res["ok"] is True and res["mass"] == {"num": "0", "den": "1"}
    code, out, _ = run(capsys, "tail-check", "--n", "1")
    assert code == 0
    res = json.loads(out)
    assert res["mass"] == {"num": "1", "den": "1"}
    assert run(capsys, "tail-check", "--n", "0")[0] == 2


def test_report_command(capsys, tmp_path):
    path = write_json(
        tmp_path, "fam.json", {"n": 3, "sets": [[1], [2], [1, 2], [1, 2, 3]]}
    )
    code, out, _ = run(capsys, "report", "--file", path)
    assert code == 0
    res = json.loads(out)
    assert res["n"] == 3 and res["size"] == 4
    assert res["down_degree_identity"]["equal"] is True
    assert sorted(res["configurations"]) == ["1", "2", "3"]
    for entry in res["configurations"].values():
        assert entry["equal"] is True
        assert entry["core_side"] == entry["member_side"]
    code, out, _ = run(capsys, "report", "--file", path, "--max-gap", "1")
    assert sorted(json.loads(out)["configurations"]) == ["1"]


def test_stdout_is_byte_identical_across_runs(capsys):
    _, first, _ = run(capsys, "la", "--n", "3", "--pattern", "crown:4")
    _, second, _ = run(capsys, "la", "--n", "3", "--pattern", "crown:4")
    assert first == second
    _, first, _ = run(capsys, "scd", "--n", "5")
    _, second, _ = run(capsys, "scd", "--n", "5")
    assert first == second


def test_budget_zero_means_unlimited(capsys):
    code, out, _ = run(
        capsys, "la", "--n", "2", "--pattern", "chain:2", "--budget", "0"
    )
    assert code == 0
    assert json.loads(out)["value"] == 2


def test_threads_flag_and_env(capsys, monkeypatch):
    code, _, _ = run(capsys, "--threads", "4", "tail-check", "--n", "5")
    assert code == 0
    code, _, err = run(capsys, "--threads", "0", "tail-check", "--n", "5")
    assert code == 2 and "thread" in err
    monkeypatch.setenv("SUBPOSETLAB_THREADS", "junk")
    code, _, err = run(capsys, "tail-check", "--n", "5")
    assert code == 2 and "SUBPOSETLAB_THREADS" in err
    monkeypatch.setenv("SUBPOSETLAB_THREADS", "2")
    code, _, _ = run(capsys, "tail-check", "--n", "5")
    assert code == 0


def test_shipped_fixture_files(capsys):
    code, out, _ = run(capsys, "verify-rep", "--file", str(FIXTURES / "o14.json"))
    assert code == 0
    assert json.loads(out)["verified"] is True
    code, out, _ = run(capsys, "partite", "--file", str(FIXTURES / "oddcycle.json"))
    assert code == 1
    assert json.loads(out) == {"partite": False}


def test_la_two_middle_levels(capsys):
    code, out, _ = run(capsys, "la", "--n", "4", "--pattern", "chain:3")
    assert code == 0
    res = json.loads(out)
    assert res["value"] == 10 and res["optimality"] == "proven"


@pytest.mark.parametrize(
    "kind", ["even_cycle:2", "even_cycle:4", "tight_cycle:2,3", "tight_cycle:4,2", "crown14"]
)
def test_gen_rep_round_trips_through_verify(capsys, tmp_path, kind):
    code, out, _ = run(capsys, "gen-rep", "--kind", kind)
    assert code == 0
    path = tmp_path / "rep.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify-rep", "--file", str(path))
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_console_script_entry_point():
    proc = subprocess.run(
        ["subposetlab", "tail-check", "--n", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
    assert "elapsed" in proc.stderr
