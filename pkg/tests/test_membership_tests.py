"""Categorical membership tests flow through the whole pipeline like
threshold tests: one literal per distinct value set."""

import json

from treelogic import (build_literal_table, load_model, make_explanation,
                       make_instance, oracle_check, predict, prepare)
from treelogic.asp import export_facts, parse_facts, skeleton_of
from treelogic.explain_dt import dt_contrastive, dt_sufficient

DOC = {
    "kind": "dt",
    "n_features": 2,
    "trees": [{"nodes": [
        {"type": "split", "feature": 0, "op": "in", "threshold": [2, 3, 5], "left": 1, "right": 4},
        {"type": "split", "feature": 1, "op": "le", "threshold": 4, "left": 2, "right": 3},
        {"type": "leaf", "class": 1},
        {"type": "leaf", "class": 0},
        {"type": "leaf", "class": 0},
    ]}],
}


def membership_query(values=(3, 2)):
    return prepare(load_model(json.dumps(DOC)), make_instance(list(values)))


def test_predict_and_render():
    q = membership_query()
    assert q.prediction.label == 1
    assert q.table.tests[0].render() == "x1 in {2, 3, 5}"
    assert list(q.bi.truth) == [1, 1]


def test_value_set_order_does_not_split_literals():
    doc = json.loads(json.dumps(DOC))
    doc["kind"] = "rf"
    reordered = json.loads(json.dumps(doc["trees"][0]))
    reordered["nodes"][0]["threshold"] = [5, 3, 2]
    doc["trees"].append(reordered)
    model = load_model(json.dumps(doc))
    table = build_literal_table(model)
    assert table.node_literals[0][0] == table.node_literals[1][0]


def test_explanations_and_oracle_agree():
    q = membership_query()
    sufficient = dt_sufficient(q)
    assert sufficient.literals == (1, 2)
    assert oracle_check(q, sufficient).ok
    contrastive = dt_contrastive(q)
    assert oracle_check(q, contrastive).ok


def test_membership_miss_goes_right():
    model = load_model(json.dumps(DOC))
    assert predict(model, make_instance([4, 0])).label == 0


def test_asp_export_parses_back():
    q = membership_query()
    facts = export_facts(q, "dt-sufficient")
    assert parse_facts(facts) == skeleton_of(q, "dt-sufficient")
