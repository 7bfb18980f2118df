#!/usr/bin/env python3
"""
Tests for the command-line front end: records on stdout and exit codes
"""

import json

import pytest

from services.cli_service import cli
from services.cli_service.cli import main
from services.mr_service.factorizer import Unfactored


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_classify_surface(capsys):
    code, out = run(capsys, "classify", "[a,b]")
    assert code == 0
    record = json.loads(out)
    assert record["input"] == "[a,b]"
    assert record["verdict"] == "SurfaceOrientableGenus2"
    assert record["bounded"] is False


def test_classify_with_bound_and_dot(capsys):
    code, out = run(capsys, "classify", "a^3 b^3", "--bound", "1", "--emit", "dot")
    assert code == 0
    assert out.startswith("digraph G {")
    assert "Case1_QH3" in out


def test_classify_to_file(capsys, tmp_path):
    target = tmp_path / "graph.json"
    code, out = run(capsys, "classify", "abab", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["verdict"] == "ProperPower"


def test_classify_indeterminate(capsys, monkeypatch):
    bound = cli.SearchBound
    monkeypatch.setattr(cli, "SearchBound", lambda **kwargs: bound(node_cap=1, **kwargs))
    code, out = run(capsys, "classify", "aaabbb", "--bound", "1", "--emit", "dot")
    assert code == 3
    assert json.loads(out)["verdict"] == "Indeterminate"


@pytest.mark.parametrize("argv", [
    ("classify", ""),
    ("classify", "a^0"),
    ("classify", "aA"),
    ("classify", "ab", "--bound", "0"),
    ("orbit-min", "x"),
    ("no-such-command",),
    ("--log-level", "loud", "version"),
])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_version(capsys):
    code, out = run(capsys, "version")
    assert code == 0
    assert json.loads(out) == {"version": "1.0.0"}


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0


def test_orbit_min(capsys):
    code, out = run(capsys, "orbit-min", "Bab")
    record = json.loads(out)
    assert code == 0
    assert (record["minimal"], record["length"], record["orbit_size"]) == ("a", 1, 2)


def test_is_primitive(capsys):
    _, out = run(capsys, "is-primitive", "abA")
    assert json.loads(out)["primitive"] is True
    _, out = run(capsys, "is-primitive", "aa")
    record = json.loads(out)
    assert record["primitive"] is False
    assert record["in_proper_free_factor"] is True


def test_aut_equiv(capsys):
    _, out = run(capsys, "aut-equiv", "abAB", "baBA")
    assert json.loads(out)["equivalent"] is True
    _, out = run(capsys, "aut-equiv", "a", "abAB")
    record = json.loads(out)
    assert record["equivalent"] is False
    assert record["chain"] is None


def test_membership(capsys):
    code, out = run(capsys, "membership", "aabAA", "--subgroup", "aa,b", "--rewrite")
    record = json.loads(out)
    assert code == 0
    assert record["member"] is True
    assert (record["rank"], record["index"]) == (2, None)
    assert record["subgroup"] == ["aa", "b"]
    assert sorted(record["basis"].values()) == ["aa", "b"]
    assert len(record["rewritten"]) == 3


def test_membership_non_member(capsys):
    _, out = run(capsys, "membership", "abA", "--subgroup", "aa,b", "--rewrite")
    record = json.loads(out)
    assert record["member"] is False
    assert record["rewritten"] is None


def test_ivanov_emit(capsys):
    code, out = run(capsys, "ivanov", "emit", "--compact")
    record = json.loads(out)
    assert code == 0
    assert record["length"] == 115200
    assert record["exponent_sums"] == [0, 0]
    assert record["word"].startswith("a^8b^8A^8B^8")


def test_ivanov_verify(capsys):
    code, out = run(capsys, "ivanov", "verify", "--suite", "cyclic", "--samples", "3", "--seed", "2")
    record = json.loads(out)
    assert code == 0
    assert record["failures"] == 0
    assert record["suites"][0]["suite"] == "cyclic"


def test_mr_factor_diagonal(capsys):
    hom = json.dumps({"a1": "a", "a2": "b", "b1": "a", "b2": "b"})
    code, out = run(capsys, "mr", "factor", "--hom", hom)
    record = json.loads(out)
    assert code == 0
    assert (record["variant"], record["k"], record["recomposed"]) == ("pi", 0, True)


def test_mr_factor_eta(capsys):
    hom = json.dumps({"a1": "aa", "a2": "aaa", "b1": "", "b2": "b"})
    code, out = run(capsys, "mr", "factor", "--hom", hom)
    record = json.loads(out)
    assert code == 0
    assert record["variant"] == "eta"
    assert record["exponents"] == [2, 3, 0, 1]


@pytest.mark.parametrize("hom", [
    "not json",
    json.dumps({"a1": "a", "a2": "b"}),
    json.dumps({"a1": "a", "a2": "b", "b1": "b", "b2": "a"}),
    json.dumps({"a1": "a", "a2": "b", "b1": "x", "b2": "a"}),
])
def test_mr_factor_bad_input(capsys, hom):
    code, out = run(capsys, "mr", "factor", "--hom", hom)
    assert code == 2
    assert out == ""


def test_mr_factor_unfactored(capsys, monkeypatch):
    monkeypatch.setattr(cli, "factor", lambda h, k_bound=None: Unfactored("no twist exponent"))
    hom = json.dumps({"a1": "a", "a2": "b", "b1": "a", "b2": "b"})
    code, out = run(capsys, "mr", "factor", "--hom", hom)
    assert code == 4
    assert json.loads(out)["variant"] == "unfactored"


def test_mr_separability(capsys):
    code, out = run(capsys, "mr", "separability", "--samples", "2", "--seed", "3", "--max-len", "1")
    record = json.loads(out)
    assert code == 0
    assert record["separated"] == 0


def test_mr_separability_with_fixed_element(capsys):
    code, out = run(capsys, "mr", "separability", "--g", "abb", "--samples", "4", "--seed", "3",
                    "--max-len", "1")
    record = json.loads(out)
    assert record["g"] == "abb"
    assert record["samples"] == 4
    assert code == (0 if record["separated"] == 0 else 1)


def test_mr_separability_bad_element(capsys):
    code, out = run(capsys, "mr", "separability", "--g", "ab^", "--samples", "2")
    assert code == 2
    assert out == ""
