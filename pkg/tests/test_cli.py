import io
import json

import pytest

from almostalg.cli import main


def run_cli(argv, stdin_text=None, monkeypatch=None, capsys=None):
    if stdin_text is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_suite_pass(capsys, monkeypatch):
    code, out, _ = run_cli(["run-suite", "complexes", "--seed", "1"],
                           capsys=capsys, monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "complexes"
    assert doc["overall"] == "pass"
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)


def test_unknown_suite_is_usage_error(capsys, monkeypatch):
    code, _, err = run_cli(["run-suite", "nope"], capsys=capsys,
                           monkeypatch=monkeypatch)
    assert code == 2
    assert "unknown suite" in err


def test_invalid_working_level_is_usage_error(capsys, monkeypatch):
    code, _, _ = run_cli(["run-suite", "complexes", "--working-level", "99"],
                         capsys=capsys, monkeypatch=monkeypatch)
    assert code == 2


def test_check_failure_exit_code(capsys, monkeypatch):
    import almostalg.suites as suites

    def broken(opts):
        rep = suites.SuiteReport("complexes", opts)
        rep.add("always-fails", lambda: False)
        return rep

    monkeypatch.setitem(suites.SUITES, "complexes", broken)
    code, out, _ = run_cli(["run-suite", "complexes"], capsys=capsys,
                           monkeypatch=monkeypatch)
    assert code == 1
    assert json.loads(out)["overall"] == "fail"


def test_compute_snf(capsys, monkeypatch):
    payload = json.dumps({"p": 2, "matrix": [[[0, 1], [1]], [[], [0, 0, 1]]]})
    code, out, _ = run_cli(["compute", "snf"], stdin_text=payload,
                           capsys=capsys, monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["op"] == "snf"
    assert doc["result"]["invariant_factors"] == [[1], [0, 0, 0, 1]]


def test_compute_firmify_constant(capsys, monkeypatch):
    code, out, _ = run_cli(["compute", "firmify"], stdin_text='"V"',
                           capsys=capsys, monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out)["result"]["tag"] == "IDEAL_M"


def test_compute_malformed_json(capsys, monkeypatch):
    code, _, err = run_cli(["compute", "snf"], stdin_text="{oops",
                           capsys=capsys, monkeypatch=monkeypatch)
    assert code == 2
    assert "malformed JSON" in err


def test_compute_unknown_op(capsys, monkeypatch):
    code, _, _ = run_cli(["compute", "frobnicate"], stdin_text="{}",
                         capsys=capsys, monkeypatch=monkeypatch)
    assert code == 2


def test_compute_bad_payload(capsys, monkeypatch):
    code, _, err = run_cli(["compute", "snf"], stdin_text='{"p": 2}',
                           capsys=capsys, monkeypatch=monkeypatch)
    assert code == 2
    assert "bad payload" in err


def test_report_file_deterministic(tmp_path, capsys, monkeypatch):
    p1 = tmp_path / "r1.json"
    p2 = tmp_path / "r2.json"
    for path in (p1, p2):
        code, _, _ = run_cli(["run-suite", "tilting", "--seed", "5",
                              "--report", str(path)],
                             capsys=capsys, monkeypatch=monkeypatch)
        assert code == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_elapsed_null_without_timing_flag(capsys, monkeypatch):
    code, out, _ = run_cli(["run-suite", "tilting"], capsys=capsys,
                           monkeypatch=monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert all(c["elapsed"] is None for c in doc["checks"])
    code, out, _ = run_cli(["run-suite", "tilting", "--time"], capsys=capsys,
                           monkeypatch=monkeypatch)
    doc = json.loads(out)
    assert all(isinstance(c["elapsed"], float) or c["elapsed"] == 0
               for c in doc["checks"])


def test_compute_a_n_plus(capsys, monkeypatch):
    payload = json.dumps({"n": 2, "rank": 1})
    code, out, _ = run_cli(["compute", "a_n_plus", "--p", "2"],
                           stdin_text=payload, capsys=capsys,
                           monkeypatch=monkeypatch)
    assert code == 0
    assert json.loads(out)["result"]["torsion_exponents"] == ["2"]
