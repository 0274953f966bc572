import json

import pytest

from opuntia.catalog import (amalgam_z2_z3, amalgam_two_chains,
                             amalgam_z2_z2_full)
from opuntia.documents import dump_amalgam, amalgam_document
from opuntia.cli import main, OK, MISMATCH, INPUT_ERROR, BUDGET, _worst


@pytest.fixture(scope="module")
def z2z3_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "z2z3.json"
    dump_amalgam(amalgam_z2_z3(), path)
    return str(path)


@pytest.fixture(scope="module")
def chains_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "chains.json"
    dump_amalgam(amalgam_two_chains(), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_worst_wins_severity_order():
    assert _worst([OK, MISMATCH, BUDGET]) == BUDGET
    # an input error outranks a budget stop even though its code is smaller
    assert _worst([MISMATCH, INPUT_ERROR, BUDGET]) == INPUT_ERROR
    assert _worst([]) == OK


def test_validate_ok(capsys, z2z3_path):
    code, doc = run_json(capsys, "validate", "--input", z2z3_path)
    assert code == OK
    assert doc["status"] == "ok"
    payload = doc["payload"]
    assert payload["status"] == "valid"
    assert payload["name"] == "z2*z3/1"
    assert payload["s1"] == {"elements": 2, "idempotents": 1,
                             "generators": ["a"], "dClasses": 1,
                             "combinatorial": False}
    assert payload["u"]["elements"] == 1
    assert payload["alphabet"] == ["a", "b"]


def test_validate_rejects_bad_table(capsys, tmp_path):
    doc = amalgam_document(amalgam_z2_z3())
    doc["s1"]["mul"][0][0] = "nope"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out = run_json(capsys, "validate", "--input", str(bad))
    assert code == INPUT_ERROR
    assert out["status"] == "error"
    assert out["diagnostics"]["type"] == "InvalidDocument"
    assert "nope" in out["diagnostics"]["message"]


def test_missing_input_file(capsys):
    code, out = run_json(capsys, "validate", "--input", "/no/such/file.json")
    assert code == INPUT_ERROR
    assert out["status"] == "error"


def test_query_wordeq(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "wordeq", "a a", "b b b",
                         "--input", z2z3_path)
    assert code == OK
    assert out["payload"] == {"words": ["a a", "b b b"], "equal": True}
    code, out = run_json(capsys, "query", "wordeq", "a", "b",
                         "--input", z2z3_path)
    assert out["payload"]["equal"] is False


def test_query_sgraph_and_core(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "sgraph", "s2", "b",
                         "--input", z2z3_path)
    assert code == OK
    payload = out["payload"]
    assert payload["factor"] == "s2" and payload["word"] == "b"
    assert payload["graph"]["vertices"] == 3
    code, out = run_json(capsys, "query", "core", "a",
                         "--input", z2z3_path)
    assert out["payload"]["decomposition"]["lobes"][0]["color"] == 1


def test_query_expand_depth_flag(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "expand", "a",
                         "--input", z2z3_path, "--depth", "2")
    assert code == OK
    assert out["payload"]["depth"] == 2
    assert len(out["payload"]["decomposition"]["lobes"]) == 7
    # positional depth wins over the flag
    code, out = run_json(capsys, "query", "expand", "a", "1",
                         "--input", z2z3_path, "--depth", "2")
    assert len(out["payload"]["decomposition"]["lobes"]) == 3


def test_query_hosts_and_classify(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "hosts", "a",
                         "--input", z2z3_path)
    assert code == OK
    assert out["payload"]["multiHost"] is True
    assert out["payload"]["parasites"] == []
    code, out = run_json(capsys, "query", "classify", "a",
                         "--input", z2z3_path)
    assert out["payload"]["finiteness"] == "Infinite"
    assert out["payload"]["discrepancy"] is True


def test_query_maxgroup_inline_dot(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "maxgroup", "a",
                         "--input", z2z3_path)
    assert code == OK
    payload = out["payload"]
    assert payload["case"] == "1b"
    assert payload["presentation"]["generators"] == ["v0_a", "v1_b2"]
    assert payload["graphOfGroups"]["vertices"][0]["group"]["order"] == 2
    assert payload["dot"]["gog"].startswith("graph Y {")


def test_query_maxgroup_dot_dir(capsys, z2z3_path, tmp_path):
    dot_dir = tmp_path / "dots"
    code, out = run_json(capsys, "query", "maxgroup", "a",
                         "--input", z2z3_path, "--dot", str(dot_dir))
    assert code == OK
    files = out["payload"]["dotFiles"]
    assert files == [str(dot_dir / "gog.dot")]
    assert (dot_dir / "gog.dot").read_text().startswith("graph Y {")
    assert "dot" not in out["payload"]


def test_export_dot(capsys, z2z3_path, tmp_path):
    dot_dir = tmp_path / "out"
    code, out = run_json(capsys, "query", "export-dot", "core", "a",
                         "--input", z2z3_path, "--dot", str(dot_dir))
    assert code == OK
    assert (dot_dir / "core.dot").exists()
    code, out = run_json(capsys, "query", "export-dot", "nonsense",
                         "--input", z2z3_path)
    assert code == INPUT_ERROR


def test_unknown_subcommand(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "frobnicate",
                         "--input", z2z3_path)
    assert code == INPUT_ERROR
    assert "unknown query subcommand" in out["diagnostics"]["message"]


def test_budget_exit_code(capsys, z2z3_path):
    code, out = run_json(capsys, "query", "wordeq", "a b a b", "a",
                         "--input", z2z3_path, "--max-edges", "2")
    assert code == BUDGET
    assert out["status"] == "budget-exceeded"
    assert out["diagnostics"]["type"] == "BudgetExceeded"


def test_output_is_byte_identical(capsys, z2z3_path):
    _, first = run(capsys, "query", "maxgroup", "a", "--input", z2z3_path)
    _, second = run(capsys, "query", "maxgroup", "a", "--input", z2z3_path)
    assert first == second


def test_timing_is_opt_in(capsys, z2z3_path):
    _, out = run_json(capsys, "query", "wordeq", "a", "a",
                      "--input", z2z3_path)
    assert "timing" not in out
    _, out = run_json(capsys, "query", "wordeq", "a", "a",
                      "--input", z2z3_path, "--timing")
    assert isinstance(out["timing"], float)


def test_text_mode(capsys, z2z3_path):
    code, out = run(capsys, "query", "wordeq", "a a", "b b b",
                    "--input", z2z3_path, "--text")
    assert code == OK
    lines = out.splitlines()
    assert "status: ok" in lines
    assert "equal: True" in lines


def test_batch_match_and_mismatch(capsys, tmp_path, z2z3_path):
    manifest = {
        "documents": {
            "z": "z2z3.json",
            "inline": amalgam_document(amalgam_z2_z2_full()),
        },
        "queries": [
            {"doc": "z", "command": "wordeq", "args": ["a a", "b b b"],
             "expect": {"equal": True}},
            {"doc": "inline", "command": "classify", "args": ["a"],
             "expect": {"finiteness": "Infinite"}},
            {"doc": "z", "command": "hosts", "args": ["a"]},
        ],
    }
    import shutil
    shutil.copy(z2z3_path, tmp_path / "z2z3.json")
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    code, out = run_json(capsys, "batch", "--input", str(mpath))
    assert code == MISMATCH
    report = out["payload"]
    assert report["summary"] == {"total": 3, "ok": 2,
                                 "mismatches": 1, "errors": 0}
    assert report["items"][0]["match"] is True
    assert report["items"][1]["match"] is False
    assert "match" not in report["items"][2]


def test_batch_error_outranks_mismatch(capsys, tmp_path, z2z3_path):
    manifest = {
        "documents": {"z": z2z3_path},
        "queries": [
            {"doc": "z", "command": "wordeq", "args": ["a", "a"],
             "expect": {"equal": False}},
            {"doc": "missing", "command": "core", "args": ["a"]},
        ],
    }
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    code, out = run_json(capsys, "batch", "--input", str(mpath))
    assert code == INPUT_ERROR
    assert out["payload"]["summary"]["errors"] == 1
    assert out["payload"]["summary"]["mismatches"] == 1


def test_batch_report_file(capsys, tmp_path, z2z3_path):
    manifest = {
        "documents": {"z": z2z3_path},
        "queries": [{"doc": "z", "command": "wordeq",
                     "args": ["a a", "b b b"], "expect": {"equal": True}}],
    }
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps(manifest))
    rpath = tmp_path / "report.json"
    code, out = run_json(capsys, "batch", "--input", str(mpath),
                         "--report", str(rpath))
    assert code == OK
    assert out["payload"]["report"] == str(rpath)
    assert out["payload"]["summary"]["ok"] == 1
    saved = json.loads(rpath.read_text())
    assert saved["items"][0]["match"] is True


def test_batch_rejects_malformed_manifest(capsys, tmp_path):
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps({"documents": [], "queries": {}}))
    code, out = run_json(capsys, "batch", "--input", str(mpath))
    assert code == INPUT_ERROR


def test_batch_rejects_manifest_without_queries(capsys, tmp_path):
    # A typo'd schema must not silently run zero jobs and report ok.
    mpath = tmp_path / "manifest.json"
    mpath.write_text(json.dumps({"jobs": [{"command": "wordeq"}]}))
    code, out = run_json(capsys, "batch", "--input", str(mpath))
    assert code == INPUT_ERROR
    assert "queries" in out["diagnostics"]["message"]
