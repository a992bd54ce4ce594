#!/usr/bin/env python3
"""Walk the three worked examples end to end: predictions, literal tables,
all six explanation kinds, and the ASP export for each model."""

import json
import sys
from pathlib import Path

from treelogic import load_model, make_instance, prepare
from treelogic.asp import export_document
from treelogic.explain_bt import bt_tree_specific_one
from treelogic.explain_dt import dt_contrastive, dt_sufficient
from treelogic.explain_rf import rf_contrastive, rf_majority, rf_sufficient_one

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def load(name):
    model = load_model((DATA / f"example_{name}.json").read_text())
    values = json.loads((DATA / f"example_{name}_instance.json").read_text())
    return prepare(model, make_instance(values))


def show(label, explanation):
    rendered = " AND ".join(explanation.tests) if explanation.tests else "(empty term)"
    print(f"  {label}: literals {list(explanation.literals)}  ->  {rendered}")


def main():
    show_asp = "--asp" in sys.argv

    q = load("dt")
    print(f"decision tree, instance {list(q.instance.values)}, predicts {q.prediction.label}")
    print(f"  literals: {[t.render() for t in q.table.tests]}, truth {list(q.bi.truth)}")
    show("sufficient ", dt_sufficient(q))
    show("contrastive", dt_contrastive(q))
    if show_asp:
        print(export_document(q, "dt-sufficient").render())

    q = load("rf")
    print(f"\nrandom forest, instance {list(q.instance.values)}, predicts {q.prediction.label}")
    print(f"  thresholds: flip > {q.thresholds.con}, majority safe < {q.thresholds.majo}")
    show("sufficient ", rf_sufficient_one(q))
    show("contrastive", rf_contrastive(q))
    show("majority   ", rf_majority(q))
    print("  contrastive, all:",
          [list(e.literals) for e in rf_contrastive(q, enumerate_all=True)])
    print("  majority, all:   ",
          [list(e.literals) for e in rf_majority(q, enumerate_all=True)])
    if show_asp:
        print(export_document(q, "rf-majority").render())

    q = load("bt")
    print(f"\nboosted trees, instance {list(q.instance.values)}, "
          f"raw weight {q.prediction.raw_weight}, predicts {q.prediction.label}")
    show("tree-specific", bt_tree_specific_one(q))
    if show_asp:
        print(export_document(q, "bt-tree-specific").render())


if __name__ == "__main__":
    main()
