import json

import pytest

from sorelations.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_verify_compact_so5(capsys):
    code, doc = run(capsys, "verify-compact", "--algebra", "so5", "--hw", "1/2,1/2")
    assert code == 0
    assert doc["schema"] == 1 and doc["command"] == "verify-compact"
    assert doc["values"]["a"] == "-2"
    assert set(doc) == {"schema", "command", "inputs", "checks", "values", "timing"}


def test_failing_check_exits_one(capsys):
    code, doc = run(capsys, "verify-compact", "--algebra", "so5", "--hw", "1,0")
    assert code == 1
    bad = [c for c in doc["checks"] if c["status"] == "fail"]
    assert bad and all(c["details"] for c in bad)


def test_negative_control_flag(capsys):
    code, _ = run(capsys, "verify-compact", "--algebra", "so5", "--hw", "1,0", "--expect-fail")
    assert code == 0


def test_classify_so24(capsys):
    code, doc = run(capsys, "classify", "--algebra", "so(2,4)", "--brute-bound", "3")
    assert code == 0
    assert doc["values"]["solutions"]["families"] == ["(-|mu| - 1, |mu|, mu), mu any half integer"]


def test_noncompact_negative_weight_parsing(capsys):
    code, doc = run(capsys, "verify-noncompact", "--algebra", "so(2,3)", "--hw", "-1,1/2", "--cutoff", "4")
    assert code == 0
    assert doc["values"]["a"] == "1" and doc["values"]["n_neg"] == 0


def test_decimal_half_integers(capsys):
    code, doc = run(capsys, "verify-noncompact", "--algebra", "so(2,3)", "--hw", "-.5,0", "--cutoff", "4")
    assert code == 0


def test_spectrum(capsys):
    code, doc = run(capsys, "spectrum", "--dim", "2", "--mu", "0", "--levels", "3")
    assert code == 0
    assert doc["values"]["degeneracies"] == [1, 3, 5]
    assert doc["values"]["energies"] == pytest.approx([-2, -2 / 9, -0.08], rel=5e-3)


def test_dynsym(capsys):
    code, doc = run(capsys, "verify-dynsym", "--dim", "1", "--mu", "-1/2")
    assert code == 0 and doc["values"]["constant"] == "-1/2"


def test_usage_error_exit_two(capsys):
    assert main(["verify-compact", "--bogus"]) == 2
    assert main([]) == 2


def test_contract_violation_exit_three(capsys):
    code, doc = run(capsys, "verify-noncompact", "--algebra", "so(2,3)", "--hw", "1,1")
    assert code == 3
    assert doc["checks"][0]["status"] == "fail"


def test_report_is_deterministic(capsys):
    _, a = run(capsys, "verify-cartan", "--algebra", "so(2,3)")
    _, b = run(capsys, "verify-cartan", "--algebra", "so(2,3)")
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_markdown_goes_to_stderr(capsys):
    main(["--markdown", "verify-clifford", "--p", "2", "--q", "1"])
    cap = capsys.readouterr()
    assert "| check | status | details |" in cap.err
    assert json.loads(cap.out)["values"]["signatures"] == 1
