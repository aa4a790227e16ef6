from __future__ import annotations

import json

import pytest

from lcforge.cli import run

from conftest import FIXTURES


def fx(name):
    return str(FIXTURES / f"{name}.lcp")


def test_build_then_verify(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert run(["build", "--mode", "potential-lc", "--in", fx("point"), "--seed", "42", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "discrepancy   center: -1" in text and "r             2" in text
    assert json.loads(out.read_bytes())["seed"] == 42
    assert run(["verify", "--cert", str(out), "--in", fx("point")]) == 0
    assert "reverify      pass" in capsys.readouterr().out


def test_missing_in_is_a_usage_error(capsys):
    assert run(["build", "--out", "x.json"]) == 2
    assert "usage" in capsys.readouterr().err


def test_missing_out_is_a_usage_error(capsys):
    assert run(["build", "--in", fx("point")]) == 2


def test_verify_only_writes_nothing(tmp_path, capsys):
    assert run(["build", "--in", fx("cone"), "--verify-only"]) == 0
    assert "reverify      pass" in capsys.readouterr().out
    assert list(tmp_path.iterdir()) == []


def test_special_mode_from_file(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run(["build", "--in", fx("elliptic_quartic"), "--out", str(out), "--seed", "7"]) == 0
    assert json.loads(out.read_bytes())["kind"] == "special-lc"


def test_mode_override_needs_its_hypotheses(capsys):
    assert run(["build", "--in", fx("point"), "--mode", "special-lc", "--verify-only"]) == 2
    assert "requires declared hypotheses" in capsys.readouterr().err


def test_singular_quartic_is_a_verification_failure(capsys):
    assert run(["build", "--in", fx("quartic_singular"), "--verify-only", "--max-retries", "1"]) == 1
    assert "special_verification_failure" in capsys.readouterr().err


def test_resource_exhaustion_exit_code(tmp_path, capsys):
    assert run(["build", "--in", fx("twisted_cubic"), "--out", str(tmp_path / "c.json"), "--step-limit", "20"]) == 3
    assert "resource_exhausted" in capsys.readouterr().err


def test_field_override(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run(["build", "--in", fx("twisted_cubic"), "--field", "GF(101)", "--out", str(out)]) == 0
    assert json.loads(out.read_bytes())["ring"]["field"] == "GF(101)"
    assert run(["build", "--in", fx("twisted_cubic"), "--field", "GF(9)", "--out", str(out)]) == 2


def test_parse_error_is_located(tmp_path, capsys):
    bad = tmp_path / "bad.lcp"
    bad.write_text("field Q\nring x y z\ncenter: x + 1\n")
    assert run(["build", "--in", str(bad), "--verify-only"]) == 2
    assert "line 3, column 9" in capsys.readouterr().err


def test_tampered_certificate_fails(tmp_path, capsys):
    out = tmp_path / "cert.json"
    run(["build", "--in", fx("point"), "--out", str(out)])
    data = out.read_bytes().replace(b'"seed":0', b'"seed":1')
    out.write_bytes(data)
    assert run(["verify", "--cert", str(out)]) == 1
    assert "digest" in capsys.readouterr().out


def test_verify_against_wrong_problem(tmp_path, capsys):
    out = tmp_path / "cert.json"
    run(["build", "--in", fx("point"), "--out", str(out)])
    assert run(["verify", "--cert", str(out), "--in", fx("line")]) == 1


def test_garbage_certificate(tmp_path, capsys):
    bad = tmp_path / "cert.json"
    bad.write_text("{not json")
    assert run(["verify", "--cert", str(bad)]) == 1
    assert run(["verify", "--cert", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("seed", ["-1", str(2**64), "abc"])
def test_seed_must_be_64_bit(seed, capsys):
    assert run(["build", "--in", fx("point"), "--verify-only", "--seed", seed]) == 2


def test_help_and_version(capsys):
    assert run(["--help"]) == 0
    assert run(["--version"]) == 0
    assert "lcforge" in capsys.readouterr().out
