"""Command-line interface: phrases, formats, exit codes."""
import json
import pathlib
import subprocess
import sys

import pytest

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def run(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "corrkit", *map(str, args)],
        capture_output=True, text=True)
    assert proc.returncode == expect, (proc.returncode, proc.stdout, proc.stderr)
    return proc


def test_ktheory_text():
    out = run("ktheory", DATA / "m1_graph.json").stdout
    assert "K0 = Z, K1 = 0" in out
    assert "SNF diagonal" in out


def test_ktheory_json_records():
    out = run("ktheory", DATA / "loop_graph.json", "--format", "json").stdout
    lines = [json.loads(l) for l in out.splitlines() if l.strip()]
    recs = [r for r in lines if r.get("record") == "ktheory"]
    assert recs and recs[0]["K0"] == "Z" and recs[0]["K1"] == "Z"
    assert any(r.get("summary") for r in lines)


def test_labelled_check():
    out = run("labelled-check", DATA / "en_labelled_n2.json").stdout
    assert "not left-resolving; weakly left-resolving: true" in out
    assert "closure:" in out


def test_verify_sphere_smallest():
    out = run("verify-sphere", "--n", 1).stdout
    assert "all passed" in out or "PASS" in out or "ok" in out.lower()


def test_obstruction_headline():
    out = run("obstruction", "--max-vertices", 4).stdout
    assert "0 counterexamples among 39 candidates" in out


def test_corr_check_failure_exit():
    proc = run("corr-check", DATA / "hilbert_morphism.json", expect=1)
    assert "(C4): FAIL" in proc.stdout
    assert "(C1): PASS" in proc.stdout


def test_corr_check_single_ok():
    proc = run("corr-check", DATA / "hilbert_1dim.json")
    assert "FAIL" not in proc.stdout


def test_exit_parse_error():
    proc = run("ktheory", DATA / "no_such_file.json", expect=2)
    assert "error:" in proc.stderr


def test_exit_validation_error(tmp_path):
    doc = tmp_path / "dup.json"
    doc.write_text('{"vertices": ["a", "a"], "edges": []}')
    run("ktheory", doc, expect=3)


def test_exit_budget_error():
    run("labelled-check", DATA / "en_labelled_n2.json", "--budget", 2, expect=4)


def test_json_deterministic_across_jobs():
    a = run("obstruction", "--max-vertices", 4, "--jobs", 1, "--format", "json").stdout
    b = run("obstruction", "--max-vertices", 4, "--jobs", 3, "--format", "json").stdout
    assert a == b
    for line in a.splitlines():
        json.loads(line)


def test_properties_subcommand_seeded():
    a = run("properties", "--cases", 40, "--seed", 5, "--format", "json").stdout
    b = run("properties", "--cases", 40, "--seed", 5, "--format", "json").stdout
    assert a == b
