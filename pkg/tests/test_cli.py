import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from filiform import cli, report, verify
from filiform.catalog import default_catalog_path
from filiform.exact import parse_expr

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sample_points_avoid_exclusions():
    a = parse_expr("a")
    pts = verify.sample_points(["a", "b"], [a - 3, a - 5], 3, seed=1, key="x")
    assert len(pts) == 3
    assert all(p["a"] not in (3, 5) for p in pts)
    assert pts == verify.sample_points(["a", "b"], [a - 3, a - 5], 3, seed=1, key="x")
    assert pts != verify.sample_points(["a", "b"], [a - 3, a - 5], 3, seed=2, key="x")


def test_check_result_invariants():
    with pytest.raises(ValueError):
        verify.CheckResult("6.1", "derivation", "FINDING", "mu9_26", [])
    with pytest.raises(ValueError):
        verify.CheckResult("6.1", "derivation", "PASS", "mu9_26", [((1, 2, 3), "1")])


def test_plan_selectors(cat):
    tasks = verify.plan(cat, ["degeneration"], ["6.6"], None)
    assert [(t.case_id, t.algebra) for t in tasks] == [("6.6a", "mu9_6"), ("6.6b", "mu9_7")]
    assert len(verify.plan(cat, ["jacobi"], None, None)) == 28


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith("mu9_")]
    assert len([l for l in rows if "char. nilpotent" in l]) == 28
    assert any(l.split()[0] == "mu9_8" and "7.3" in l for l in rows)
    assert any(l.split()[0] == "mu9_26" and "6.1" in l for l in rows)


def test_verify_jacobi_all(capsys):
    code, out, _ = run(capsys, "verify", "--check", "jacobi", "--all")
    assert code == 0
    assert out.count("PASS ") == 28
    assert "PASS=28  FAIL=0" in out


def test_verify_6_6_degeneration(capsys):
    code, out, _ = run(capsys, "verify", "--case", "6.6", "--check", "degeneration")
    assert code == 0
    assert any(l.startswith("PASS") and "mu9_6 " in l for l in out.splitlines())


def test_verify_cn_mu13(capsys):
    code, out, _ = run(capsys, "verify", "--check", "cn", "--algebra", "mu9_13", "--samples", "3", "--seed", "7")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS")


def test_strict_escalates_findings(capsys):
    assert run(capsys, "verify", "--case", "6.3", "--check", "degeneration")[0] == 0
    assert run(capsys, "verify", "--case", "6.3", "--check", "degeneration", "--strict")[0] == 1


def test_catalog_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    data = json.loads(default_catalog_path().read_text())
    data["algebras"][0]["c9"]["19"] = "1"
    bad.write_text(json.dumps(data))
    code, _, err = run(capsys, "--catalog", str(bad), "list")
    assert code == 2 and "/algebras/0/c9/19" in err
    assert run(capsys, "verify", "--catalog", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "verify", "--check", "nonsense")[0] == 2


def test_env_catalog(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    monkeypatch.setenv("FILIFORM_CATALOG", str(bad))
    assert run(capsys, "list")[0] == 2


def test_unwritable_report(capsys, tmp_path):
    code, _, err = run(capsys, "report", "--format", "json", "--check", "eq5",
                       "--out", str(tmp_path / "no" / "such" / "dir.json"))
    assert code == 2 and "dir.json" in err


def test_json_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "report", "--format", "json", "--case", "6.3,6.4,6.6", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["summary"]["FINDING"] >= 3
    skipped = [r for r in doc["results"] if r["status"] == "SKIPPED"]
    assert skipped and all(r["note"].startswith("excluded by Theorem 1") for r in skipped)
    assert "elapsed_ms" not in doc["results"][0]
    again = report.to_json(report.from_json(out.read_text()), catalog_sha256=doc["catalog_sha256"],
                           seed=0, samples=3)
    assert again == out.read_text()


def test_markdown_report(capsys, cat):
    code, out, _ = run(capsys, "report", "--format", "md", "--case", "6.3")
    assert code == 0
    results = verify.run(cat, verify.plan(cat, None, ["6.3"], None))
    table = [l for l in out.splitlines() if l.startswith("| 6.3 |")]
    assert len(table) == len(results)
    assert "## Findings" in out and "### FINDING: 6.3 / mu9_2 / degeneration" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "filiform", "verify", "--check", "eq5", "--algebra", "mu9_6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("PASS")
