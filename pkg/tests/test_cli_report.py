import json
import subprocess
import sys

import pytest

from hopfgal.catalog import enumerate_transitive, format_catalog
from hopfgal.cli import main
from hopfgal.report import (
    DegreeResult,
    DegreeSummary,
    ResourceCapError,
    RunOptions,
    TABLE_COLUMNS,
    format_summaries,
    run_degree,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_lemma_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma")
    assert code == 0
    assert "suite lemma: passed" in out


def test_oracle_degree5(capsys):
    code, out, _ = run(capsys, "oracle", "--degree", "5")
    assert code == 0
    assert out.strip().endswith("0 differences")


def test_table_degree13_csv(capsys):
    code, out, _ = run(capsys, "table", "--degree", "13", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.split(",") == list(TABLE_COLUMNS)
    assert row == "13,9,6,1,6,6,6,0,6,1"


def test_table_json_and_text(capsys):
    code, out, _ = run(capsys, "--format", "json", "table", "--degree", "13")
    assert code == 0
    assert json.loads(out)[0]["hgs_total"] == 6
    code, out, _ = run(capsys, "table", "--degree", "13", "--timing")
    assert code == 0 and "wall_time_seconds" in out


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--format", "csv", "--jobs", "2", "table", "--degree", "13")
    assert code == 0 and out.startswith("degree,")


def test_table_byte_identical_across_jobs(capsys):
    outs = set()
    for jobs in ("1", "2"):
        code, out, _ = run(capsys, "table", "--degree", "15", "--format", "csv", "--jobs", jobs)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "table")[0] == 2
    assert run(capsys, "table", "--degree", "13", "--jobs", "0")[0] == 2
    assert run(capsys, "table", "--degree", "16")[0] == 2


def test_resource_cap(capsys):
    code, _, err = run(capsys, "table", "--degree", "12", "--time-budget", "0.01")
    assert code == 3 and "resource cap" in err
    assert run(capsys, "table", "--degree", "40")[0] == 3


def test_catalog_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "enumerate", "--degree", "4")
    assert code == 0 and out.count("\ngroup ") == 5
    path = tmp_path / "cat.txt"
    assert run(capsys, "catalog", "enumerate", "--degree", "5", "--output", str(path))[0] == 0
    code, out, _ = run(capsys, "catalog", "validate", "--file", str(path))
    assert code == 0 and "ok" in out
    code, out, _ = run(capsys, "--format", "json", "catalog", "load", "--degree", "13")
    assert code == 0 and len(json.loads(out)) == 9
    bad = tmp_path / "bad.txt"
    bad.write_text("degree 4\ngroup 1 order 3\n(1,2,3)\nend\n")
    code, out, _ = run(capsys, "catalog", "validate", "--file", str(bad))
    assert code == 1 and "non-transitive" in out
    assert run(capsys, "catalog", "load", "--file", str(tmp_path / "missing.txt"))[0] == 2


def test_catalog_flag(capsys, tmp_path):
    (tmp_path / "degree5.txt").write_text(format_catalog(enumerate_transitive(5)))
    code, out, _ = run(capsys, "--catalog", str(tmp_path), "table", "--degree", "5", "--format", "csv")
    assert code == 0 and out.splitlines()[1].startswith("5,5,")


def test_hgs_command(capsys):
    code, out, _ = run(capsys, "hgs", "--degree", "6", "--format", "csv")
    assert code == 0 and out.startswith("group,")
    code, out, _ = run(capsys, "--format", "json", "hgs", "--degree", "6", "--group", "2", "--records")
    assert code == 0
    data = json.loads(out)
    assert data["group"] == "6T2" and data["records"]
    assert run(capsys, "hgs", "--degree", "6", "--type", "Q8")[0] == 2


def test_run_degree_matches_summary_invariants():
    res = run_degree(6, RunOptions(), entries=enumerate_transitive(6))
    s = res.summary
    assert s.row() == (16, 10, 2, 15, 7, 9, 2, 13, 6)
    assert s.hgs_total == sum(d.hgs for d in res.details)


def test_json_roundtrip():
    res = run_degree(5, RunOptions(), entries=enumerate_transitive(5))
    again = DegreeResult.from_dict(json.loads(json.dumps(res.to_dict())))
    assert again == res
    s = DegreeSummary.from_dict(json.loads(json.dumps(res.summary.to_dict())))
    assert s == res.summary


def test_summary_invariant_check():
    with pytest.raises(AssertionError):
        DegreeSummary(4, 5, 5, 2, hgs_total=1, hgs_ac=2).check_invariants()


def test_time_budget_in_api():
    with pytest.raises(ResourceCapError):
        run_degree(12, RunOptions(time_budget=0.0))


def test_format_unknown():
    with pytest.raises(Exception):
        format_summaries([], "xml")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hopfgal", "verify", "--suite", "lemma", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)[0]["passed"] is True
