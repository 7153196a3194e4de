import csv

import pytest

from hodatalog.cli import main
from hodatalog.tm import ACCEPT_ALL, PARITY


@pytest.fixture
def parity_tm(tmp_path):
    p = tmp_path / "parity.tm"
    p.write_text(PARITY)
    return str(p)


@pytest.fixture
def union_hodl(tmp_path):
    p = tmp_path / "union.hodl"
    p.write_text("union R S X :- (R X). union R S X :- (S X).\n")
    return str(p)


def test_check_clean_prints_order(union_hodl, capsys):
    assert main(["check", union_hodl]) == 0
    assert capsys.readouterr().out.strip() == "order: 2"


def test_check_reports_e202(tmp_path, capsys):
    p = tmp_path / "bad.hodl"
    p.write_text("q a. r q.\n")
    assert main(["check", str(p)]) == 3
    assert "E202" in capsys.readouterr().out


def test_check_empty_file(tmp_path, capsys):
    p = tmp_path / "empty.hodl"
    p.write_text("")
    assert main(["check", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "order: 1"


def test_run_exit_codes(tmp_path, capsys):
    p = tmp_path / "accept_a.hodl"
    p.write_text("accept :- (input 0 a end).\n")
    assert main(["run", str(p), "--input", "a"]) == 0
    assert main(["run", str(p), "--input", "b"]) == 1
    out = capsys.readouterr().out
    assert "accept" in out and "reject" in out


def test_run_budget_exit_code(tmp_path):
    p = tmp_path / "loop.hodl"
    p.write_text("step X Y :- (input X S Y). reach X Y :- (step X Y). "
                 "reach X Y :- (step X Z), (reach Z Y). "
                 "accept :- (reach 0 end).\n")
    assert main(["run", str(p), "--input", "abab", "--budget", "3"]) == 2


def test_model_dump(tmp_path, capsys):
    p = tmp_path / "ex.hodl"
    p.write_text("p a. q R :- (R b).\n")
    assert main(["model", str(p)]) == 0
    out = capsys.readouterr().out
    assert "q = { {b} ; {a,b} }" in out


def test_compile_run_pipeline(parity_tm, tmp_path, capsys):
    out = str(tmp_path / "parity.hodl")
    assert main(["compile-tm", parity_tm, "--order", "1", "--d", "2",
                 "--out", out]) == 0
    assert main(["run", out, "--input", "aa", "--engine", "seminaive"]) == 0
    assert main(["run", out, "--input", "ab", "--engine", "seminaive"]) == 1


def test_naive_engine_hits_domain_cap_on_k2(parity_tm, tmp_path, capsys):
    out = str(tmp_path / "parity2.hodl")
    main(["compile-tm", parity_tm, "--order", "2", "--d", "1", "--out", out])
    assert main(["run", out, "--input", "ab", "--engine", "naive"]) == 3
    assert "E301" in capsys.readouterr().err


def test_tm_run_verdicts(parity_tm, capsys):
    assert main(["tm-run", parity_tm, "--input", "aa"]) == 0
    assert main(["tm-run", parity_tm, "--input", "a"]) == 1
    out = capsys.readouterr().out
    assert "accepted" in out and "rejected" in out


def test_crosscheck_first_order(parity_tm, tmp_path, capsys):
    csv_path = str(tmp_path / "rows.csv")
    code = main(["crosscheck", parity_tm, "--order", "1", "--d", "2",
                 "--max-len", "2", "--csv", csv_path])
    assert code == 0
    out = capsys.readouterr().out
    assert "7/7 agree" in out
    with open(csv_path) as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 7
    assert all(r["agree"] == "true" for r in rows)


def test_crosscheck_higher_order(tmp_path, capsys):
    p = tmp_path / "acc.tm"
    p.write_text(ACCEPT_ALL)
    code = main(["crosscheck", str(p), "--order", "2", "--d", "1",
                 "--max-len", "2"])
    assert code == 0
    assert "7/7 agree" in capsys.readouterr().out


def test_crosscheck_parallel_rows(parity_tm, capsys):
    code = main(["crosscheck", parity_tm, "--order", "1", "--d", "2",
                 "--max-len", "1", "--jobs", "2"])
    assert code == 0
    assert "3/3 agree" in capsys.readouterr().out


def test_crosscheck_left_edge_abort(tmp_path, capsys):
    p = tmp_path / "edge.tm"
    p.write_text("states: s0 yes\nstart: s0\ntrans: s0 a -> s0 left\n")
    code = main(["crosscheck", str(p), "--order", "1", "--d", "2",
                 "--max-len", "1"])
    assert code == 3
    assert "left" in capsys.readouterr().err


def test_error_exit_on_missing_file(capsys):
    assert main(["check", "/nonexistent/prog.hodl"]) == 3
