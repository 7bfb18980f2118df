#!/usr/bin/env python3
"""
Tests for the JSON and DOT renderings of classifier results
"""

import json

import pytest

from services.classifier_service import graph_of_groups as shapes
from services.classifier_service.classifier import JsjClassification
from services.classifier_service.double import DoubleGroup
from services.classifier_service.emit import emit_dot, emit_graph, emit_json, to_record
from services.shared.errors import FreeGroupError
from services.whitehead_service.automorphisms import RANK_TWO, AutChain
from services.words_service.parser import parse_word

A, B = RANK_TWO.generators()


@pytest.fixture
def qh3():
    result = JsjClassification("Case1_QH3", n=3, m=3, chain=AutChain(), basis=(A, B), bounded=True)
    return result, shapes.qh3(A, B, 3, 3)


@pytest.fixture
def double_edge():
    result = JsjClassification("DoubleIsJsj", bounded=True)
    return result, shapes.double_edge(DoubleGroup.of(parse_word("aabAbAB")))


def test_json_record_keys(qh3):
    record = json.loads(emit_json("a^3 b^3", *qh3))
    assert list(record) == ["input", "verdict", "params", "witness", "bounded", "graph"]
    assert record["input"] == "a^3 b^3"
    assert record["params"] == {"n": 3, "m": 3, "k": None}
    assert record["witness"] == {"chain": [], "basis": ["a", "b"]}
    assert record["bounded"] is True


def test_json_qh3_counts(qh3):
    graph = json.loads(emit_json("aaabbb", *qh3))["graph"]
    assert len(graph["vertices"]) == 5
    assert len(graph["edges"]) == 4
    surface = graph["vertices"][0]
    assert surface == {
        "id": "S", "kind": "qh", "orientable": True, "genus": 0, "boundaries": 4,
        "basis": ["aaa", "bbb", "ccc", "ddd"],
    }
    edge = graph["edges"][0]
    assert edge == {"from": "S", "to": "X_A", "loop": False, "image_from": "aaa", "image_to": "aaa"}


def test_json_double_edge(double_edge):
    graph = json.loads(emit_json("aabAbAB", *double_edge))["graph"]
    assert [v["id"] for v in graph["vertices"]] == ["A", "B"]
    assert graph["edges"] == [{
        "from": "A", "to": "B", "loop": False, "image_from": "aabAbAB", "image_to": "ccdCdCD",
    }]


def test_record_without_graph():
    result = JsjClassification("Indeterminate", bounded=True, consumed=10)
    record = to_record("aaabbb", result, None)
    assert record.graph is None
    assert record.witness is None
    assert json.loads(emit_graph("aaabbb", result, None, "json"))["verdict"] == "Indeterminate"


def test_emit_graph_is_deterministic(qh3):
    assert emit_graph("aaabbb", *qh3) == emit_graph("aaabbb", *qh3)
    assert emit_graph("aaabbb", *qh3).endswith("}\n")


def test_dot_shapes(qh3, double_edge):
    dot = emit_dot("aaabbb", *qh3)
    assert dot.startswith("digraph G {")
    assert dot.count("shape=ellipse") == 1
    assert dot.count("shape=circle") == 4
    assert dot.count("->") == 4
    assert 'label="aaabbb: Case1_QH3";' in dot
    assert "shape=box" in emit_dot("aabAbAB", *double_edge)


def test_dot_variant_in_title():
    w = parse_word("aaabaaabb")
    result = JsjClassification("Case1_Rigid", n=3, variant="one-edge", bounded=True)
    dot = emit_graph("aaabaaabb", result, shapes.amalgam_rigid(A, B, 3, None, w), "dot")
    assert "Case1_Rigid (one-edge)" in dot
    assert dot.count("shape=box") == 2


def test_dot_needs_a_graph():
    with pytest.raises(FreeGroupError):
        emit_dot("aaabbb", JsjClassification("Indeterminate"), None)


def test_unknown_format(qh3):
    with pytest.raises(FreeGroupError, match="unknown format"):
        emit_graph("aaabbb", *qh3, fmt="svg")
