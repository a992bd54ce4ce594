"""ASP-text export: ground facts for a (model, instance) pair plus the
matching encoding program, for cross-validation with external ASP toolchains.

No solver is invoked or bundled; the output targets ASP-Core-2 grounder
syntax. Decision-tree facts use 0-based literal ids, random-forest trees are
numbered from 1 and boosted trees from 0, mirroring the reference fact
layout this exporter is validated against. Node truth values always come
from direct evaluation of the test on the instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .explanations import (BT_TREE_SPECIFIC, DT_CONTRASTIVE, DT_SUFFICIENT,
                           KINDS_BY_MODEL, RF_CONTRASTIVE, RF_MAJORITY,
                           RF_SUFFICIENT, Query)
from .models import ClassLeaf, Split, WeightLeaf

DT_SUFFICIENT_PROGRAM = """\
1 {selected_literal(L):node(X,L,B)}.
node(X,L,0..1) :- selected_literal(L),node(X,L,B).
next_node(LX) :- node(0,L,1),left_node(0,LX).
next_node(RX) :- node(0,L,0),right_node(0,RX).
next_node(LX) :- next_node(X),node(X,L,1),left_node(X,LX).
next_node(RX) :- next_node(X),node(X,L,0),right_node(X,RX).
class(C):-next_node(X),leaf_node(X,C).
invalid :- class(0),class(1).
:- invalid.
#heuristic selected_literal(L). [1,true]
#show selected_literal/1.
"""

DT_CONTRASTIVE_PROGRAM = """\
1 {selected_literal(L):node(X,L,B)}.
node(X,L,0..1) :- selected_literal(L),node(X,L,B).
next_node(LX) :- node(0,L,1),left_node(0,LX).
next_node(RX) :- node(0,L,0),right_node(0,RX).
next_node(LX) :- next_node(X),node(X,L,1),left_node(X,LX).
next_node(RX) :- next_node(X),node(X,L,0),right_node(X,RX).
class(C) :- next_node(X),leaf_node(X,C).
valid :- class(0),class(1).
:- not valid.
#heuristic selected_literal(L). [1,false]
#show selected_literal/1.
"""

RF_SUFFICIENT_STAGE1_PROGRAM = """\
node(T,X,L) :- node(T,X,L,_).
new_node(T,X,L,0) :- change(L),node(T,X,L),feature(L,1).
new_node(T,X,L,1) :- change(L),node(T,X,L),feature(L,0).
new_node(T,X,L,B) :- node(T,X,L),feature(L,B),not change(L).
next_node(T,LX) :- new_node(T,0,L,1),left_node(T,0,LX).
next_node(T,RX) :- new_node(T,0,L,0),right_node(T,0,RX).
next_node(T,LX) :- next_node(T,X),new_node(T,X,L,1),left_node(T,X,LX).
next_node(T,RX) :- next_node(T,X),new_node(T,X,L,0),right_node(T,X,RX).
class(T,C) :- next_node(T,X),leaf_node(T,X,C).
invalid_tree(T) :- class(T,C),pre_forest(FC),C!=FC.
forest_changed :- VT=#count{T:invalid_tree(T)},tree_threshold(TH),VT>TH.
:- not forest_changed.
"""

RF_SUFFICIENT_STAGE2_NOTE = """\
% stage 2: guess the changeable literals outside the fixed set, then extract
% a minimal unsatisfiable core over the fix_lit guesses with wasp --mus.
% {change(L) : not fix_lit(L),L=1..<number of literals>}.
% fix_lit(I).  (one fact per literal id I of the instance term)
% python wasp_rewriter.py enc.lp ins.lp | clingo --output=smodels | ./wasp --mus=__debug__ -n0
"""

RF_CONTRASTIVE_PROGRAM = """\
1 {selected_literal(L):node(T,X,L,B)}.
new_node(T,X,L,0) :- selected_literal(L),node(T,X,L,1).
new_node(T,X,L,1) :- selected_literal(L),node(T,X,L,0).
new_node(T,X,L,B) :- node(T,X,L,B),not selected_literal(L).
next_node(T,LX) :- new_node(T,0,L,1),left_node(T,0,LX).
next_node(T,RX) :- new_node(T,0,L,0),right_node(T,0,RX).
next_node(T,LX) :- next_node(T,X),new_node(T,X,L,1),left_node(T,X,LX).
next_node(T,RX) :- next_node(T,X),new_node(T,X,L,0),right_node(T,X,RX).
class(T,C):-next_node(T,X),leaf_node(T,X,C).
valid_tree(T) :- class(T,C),pre_forest(FC),C!=FC.
valid :- VT = #count{T : valid_tree(T)},con_tree_threshold(TH),VT>TH.
:- not valid.
#heuristic selected_literal(L). [1,false]
#show selected_literal/1.
"""

RF_MAJORITY_PROGRAM = """\
1 {selected_literal(L):node(T,X,L,B)}.
node(T,X,L,0..1) :- selected_literal(L),node(T,X,L,B).
next_node(T,LX) :- node(T,0,L,1),left_node(T,0,LX).
next_node(T,RX) :- node(T,0,L,0),right_node(T,0,RX).
next_node(T,LX) :- next_node(T,X),node(T,X,L,1),left_node(T,X,LX).
next_node(T,RX) :- next_node(T,X),node(T,X,L,0),right_node(T,X,RX).
class(T,C) :- next_node(T,X),leaf_node(T,X,C).
invalid_tree(T) :- class(T,C),pre_forest(FC),C!=FC.
valid :- VT = #count{T : invalid_tree(T)},majo_tree_threshold(TH),VT<TH.
:- not valid.
#heuristic selected_literal(L). [1,true]
#show selected_literal/1.
"""

BT_TREE_SPECIFIC_PROGRAM = """\
1 {selected_literal(L) : node(T,X,L,B) }.
node(T,X,L,0..1) :- node(T,X,L,B), not selected_literal(L).
next_node(T,LX) :- node(T,0,L,1), left_node(T,0,LX).
next_node(T,RX) :- node(T,0,L,0), right_node(T,0,RX).
next_node(T,LX) :- next_node(T,X), node(T,X,L,1), left_node(T,X,LX).
next_node(T,RX) :- next_node(T,X), node(T,X,L,0), right_node(T,X,RX).
weight(T,W) :- next_node(T,X), leaf_node(T,X,W).
best_weight(T,BW) :- weight(T, _), BW = #max{W:weight(T,W)}.
worst_weight(T,WW) :- weight(T, _), WW = #min{W:weight(T,W)}.
valid :- SW = #sum{BW:best_weight(_,BW)}, SW<=0, pre_forest(0).
valid :- SW = #sum{WW:worst_weight(_,WW)}, SW>0, pre_forest(1).
:- not valid.
#heuristic selected_literal(L). [1,false]
#show selected_literal/1.
"""

_ENCODINGS = {
    DT_SUFFICIENT: DT_SUFFICIENT_PROGRAM,
    DT_CONTRASTIVE: DT_CONTRASTIVE_PROGRAM,
    RF_SUFFICIENT: RF_SUFFICIENT_STAGE1_PROGRAM + RF_SUFFICIENT_STAGE2_NOTE,
    RF_CONTRASTIVE: RF_CONTRASTIVE_PROGRAM,
    RF_MAJORITY: RF_MAJORITY_PROGRAM,
    BT_TREE_SPECIFIC: BT_TREE_SPECIFIC_PROGRAM,
}


@dataclass(frozen=True)
class AspDocument:
    kind: str
    facts: str
    encoding: str

    def render(self) -> str:
        return f"% facts\n{self.facts}% encoding\n{self.encoding}"


def export_encoding(kind: str) -> str:
    if kind not in _ENCODINGS:
        raise ValueError(f"unknown explanation kind {kind!r}")
    return _ENCODINGS[kind]


def _dt_facts(query: Query) -> list:
    # single tree; literal ids shifted to 0-based, node tests evaluated directly
    table, bi = query.table, query.bi
    tree = query.model.trees[0]
    lits = table.node_literals[0]
    facts = [f"pre_class({query.prediction.label})."]
    internal = [i for i, node in enumerate(tree.nodes) if isinstance(node, Split)]
    for i in internal:
        facts.append(f"node({i},{lits[i] - 1},{bi.truth_of(lits[i])}).")
    for i, node in enumerate(tree.nodes):
        if isinstance(node, ClassLeaf):
            facts.append(f"leaf_node({i},{node.label}).")
    for i in internal:
        node = tree.nodes[i]
        facts.append(f"left_node({i},{node.left}).")
        facts.append(f"right_node({i},{node.right}).")
    return facts


def _forest_tree_facts(query: Query, tree_idx: int, asp_tree: int) -> list:
    table, bi = query.table, query.bi
    tree = query.model.trees[tree_idx]
    lits = table.node_literals[tree_idx]
    facts = []
    internal = [i for i, node in enumerate(tree.nodes) if isinstance(node, Split)]
    for i in internal:
        facts.append(f"node({asp_tree},{i},{lits[i]},{bi.truth_of(lits[i])}).")
    for i, node in enumerate(tree.nodes):
        if isinstance(node, ClassLeaf):
            facts.append(f"leaf_node({asp_tree},{i},{node.label}).")
        elif isinstance(node, WeightLeaf):
            facts.append(f"leaf_node({asp_tree},{i},{node.weight}).")
    for i in internal:
        node = tree.nodes[i]
        facts.append(f"left_node({asp_tree},{i},{node.left}).")
        facts.append(f"right_node({asp_tree},{i},{node.right}).")
    return facts


def _rf_facts(query: Query, kind: str) -> list:
    facts = [f"feature({lit},{query.bi.truth_of(lit)})." for lit in query.table.literal_ids]
    facts.append(f"pre_forest({query.prediction.label}).")
    if kind == RF_SUFFICIENT:
        facts.append(f"tree_threshold({query.thresholds.suf}).")
    facts.append(f"con_tree_threshold({query.thresholds.con}).")
    facts.append(f"majo_tree_threshold({query.thresholds.majo}).")
    for t in range(len(query.model.trees)):
        facts.extend(_forest_tree_facts(query, t, t + 1))
    return facts


def _bt_facts(query: Query) -> list:
    facts = [f"pre_forest({query.prediction.label})."]
    for t in range(len(query.model.trees)):
        facts.extend(_forest_tree_facts(query, t, t))
    return facts


def export_facts(query: Query, kind: str) -> str:
    """Ground facts for the given explanation kind, one fact per line."""
    if kind not in _ENCODINGS:
        raise ValueError(f"unknown explanation kind {kind!r}")
    if kind not in KINDS_BY_MODEL[query.model.kind]:
        raise ValueError(f"{kind} is not applicable to a {query.model.kind} model")
    if query.model.kind == "dt":
        facts = _dt_facts(query)
    elif query.model.kind == "rf":
        facts = _rf_facts(query, kind)
    else:
        facts = _bt_facts(query)
    return "\n".join(facts) + "\n"


def export_document(query: Query, kind: str) -> AspDocument:
    return AspDocument(kind=kind, facts=export_facts(query, kind),
                       encoding=export_encoding(kind))


def parse_facts(text: str) -> dict:
    """Minimal fact reader used to cross-check exports against the source
    model; reconstructs structure fields only (shape, leaves, literal wiring).

    Handles both the single-tree fact forms (``node(X,L,B)``) and the forest
    forms (``node(T,X,L,B)``); single-tree facts land under tree key 0.
    """
    skeleton = {"pre": None, "feature": {}, "thresholds": {}, "trees": {}}

    def tree_entry(t):
        return skeleton["trees"].setdefault(
            t, {"node": {}, "leaf": {}, "left": {}, "right": {}})

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if not line.endswith(".") or "(" not in line:
            raise ValueError(f"not a fact: {line!r}")
        name, rest = line[:-1].split("(", 1)
        args = [int(a) for a in rest.rstrip(")").split(",")]
        if name in ("pre_class", "pre_forest"):
            skeleton["pre"] = args[0]
        elif name == "feature":
            skeleton["feature"][args[0]] = args[1]
        elif name.endswith("_threshold"):
            skeleton["thresholds"][name] = args[0]
        elif name == "node":
            if len(args) == 3:
                tree_entry(0)["node"][args[0]] = (args[1], args[2])
            else:
                tree_entry(args[0])["node"][args[1]] = (args[2], args[3])
        elif name in ("leaf_node", "left_node", "right_node"):
            key = name.split("_")[0]
            if len(args) == 2:
                tree_entry(0)[key][args[0]] = args[1]
            else:
                tree_entry(args[0])[key][args[1]] = args[2]
        else:
            raise ValueError(f"unknown predicate in fact: {line!r}")
    return skeleton


def skeleton_of(query: Query, kind: str) -> dict:
    """The structure skeleton the exported facts for ``kind`` should parse
    back to; built straight from the model, not from any exported text."""
    model, table, bi = query.model, query.table, query.bi
    skeleton = {"pre": query.prediction.label, "feature": {}, "thresholds": {}, "trees": {}}
    if model.kind == "rf":
        skeleton["feature"] = {lit: bi.truth_of(lit) for lit in table.literal_ids}
        skeleton["thresholds"]["con_tree_threshold"] = query.thresholds.con
        skeleton["thresholds"]["majo_tree_threshold"] = query.thresholds.majo
        if kind == RF_SUFFICIENT:
            skeleton["thresholds"]["tree_threshold"] = query.thresholds.suf
    lit_base = 1 if model.kind == "dt" else 0
    tree_base = 1 if model.kind == "rf" else 0
    for t, tree in enumerate(model.trees):
        entry = {"node": {}, "leaf": {}, "left": {}, "right": {}}
        for i, node in enumerate(tree.nodes):
            if isinstance(node, Split):
                lit = table.node_literals[t][i]
                entry["node"][i] = (lit - lit_base, bi.truth_of(lit))
                entry["left"][i] = node.left
                entry["right"][i] = node.right
            elif isinstance(node, ClassLeaf):
                entry["leaf"][i] = node.label
            else:
                entry["leaf"][i] = node.weight
        skeleton["trees"][t + tree_base] = entry
    return skeleton
