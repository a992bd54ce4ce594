"""In-memory representation of tree models: JSON ingestion, validation, prediction.

Three model kinds share one node layout:

* ``dt`` -- a single tree with class leaves,
* ``rf`` -- a voting forest of trees with class leaves,
* ``bt`` -- a boosted ensemble of trees with integer leaf weights
  (fixed-point, ``weight_scale`` units per 1.0).

Models and instances are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Union

OP_LE = "le"
OP_LT = "lt"
OP_IN = "in"

DEFAULT_WEIGHT_SCALE = 1000


class ModelError(ValueError):
    """Raised for schema or structural violations in a model document."""


@dataclass(frozen=True)
class SplitTest:
    """A Boolean node test: ``x[feature] <= c``, ``x[feature] < c`` or set membership."""

    feature: int
    op: str
    threshold: Union[int, float, tuple]

    def evaluate(self, value) -> bool:
        if self.op == OP_LE:
            return value <= self.threshold
        if self.op == OP_LT:
            return value < self.threshold
        return value in self.threshold

    def key(self):
        """Canonical identity used to deduplicate tests into literals."""
        if self.op == OP_IN:
            return (self.feature, self.op, frozenset(self.threshold))
        return (self.feature, self.op, float(self.threshold))

    def render(self) -> str:
        name = f"x{self.feature + 1}"
        if self.op == OP_LE:
            return f"{name} <= {self.threshold}"
        if self.op == OP_LT:
            return f"{name} < {self.threshold}"
        inner = ", ".join(str(v) for v in self.threshold)
        return f"{name} in {{{inner}}}"


@dataclass(frozen=True)
class Split:
    test: SplitTest
    left: int
    right: int


@dataclass(frozen=True)
class ClassLeaf:
    label: int


@dataclass(frozen=True)
class WeightLeaf:
    weight: int


Node = Union[Split, ClassLeaf, WeightLeaf]


@dataclass(frozen=True)
class Tree:
    """Binary tree as a node array; node 0 is the root, left branch = test true."""

    nodes: tuple


@dataclass(frozen=True)
class Model:
    kind: str
    n_features: int
    trees: tuple
    weight_scale: int = DEFAULT_WEIGHT_SCALE


@dataclass(frozen=True)
class Instance:
    values: tuple


@dataclass(frozen=True)
class Prediction:
    label: int
    raw_weight: int | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ModelError(message)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_split(obj: dict, where: str, n_features: int) -> Split:
    for field in ("feature", "op", "threshold", "left", "right"):
        _require(field in obj, f"{where}: split node missing field '{field}'")
    feature = obj["feature"]
    _require(isinstance(feature, int) and not isinstance(feature, bool) and feature >= 0,
             f"{where}: feature must be a non-negative integer")
    _require(feature < n_features, f"{where}: feature {feature} out of range (n_features={n_features})")
    op = obj["op"]
    _require(op in (OP_LE, OP_LT, OP_IN), f"{where}: unknown op '{op}'")
    threshold = obj["threshold"]
    if op == OP_IN:
        _require(isinstance(threshold, list) and len(threshold) > 0,
                 f"{where}: membership test needs a non-empty value array")
        _require(all(_is_number(v) for v in threshold), f"{where}: membership values must be numbers")
        threshold = tuple(sorted(set(threshold)))
    else:
        _require(_is_number(threshold) and math.isfinite(threshold),
                 f"{where}: threshold must be a finite number")
    left, right = obj["left"], obj["right"]
    _require(isinstance(left, int) and isinstance(right, int),
             f"{where}: child indices must be integers")
    return Split(SplitTest(feature, op, threshold), left, right)


def _parse_leaf(obj: dict, where: str, expect: str) -> Node:
    has_class = "class" in obj
    has_weight = "weight" in obj
    _require(has_class != has_weight, f"{where}: leaf must carry exactly one of 'class'/'weight'")
    if expect == "class":
        _require(has_class, f"{where}: expected a class leaf, found a weight leaf")
        label = obj["class"]
        _require(label in (0, 1) and not isinstance(label, bool), f"{where}: leaf class must be 0 or 1")
        return ClassLeaf(label)
    _require(has_weight, f"{where}: expected a weight leaf, found a class leaf")
    weight = obj["weight"]
    _require(isinstance(weight, int) and not isinstance(weight, bool),
             f"{where}: leaf weight must be a (scaled) integer")
    return WeightLeaf(weight)


def _check_tree_structure(tree: Tree, tree_idx: int) -> None:
    n = len(tree.nodes)
    indegree = [0] * n
    for idx, node in enumerate(tree.nodes):
        if isinstance(node, Split):
            for child in (node.left, node.right):
                _require(0 <= child < n,
                         f"tree {tree_idx} node {idx}: child index {child} out of bounds")
                indegree[child] += 1
    _require(indegree[0] == 0, f"tree {tree_idx}: root node 0 must not have a parent")
    for idx in range(1, n):
        _require(indegree[idx] == 1,
                 f"tree {tree_idx} node {idx}: expected exactly one parent, found {indegree[idx]}")
    # one root + indegree one everywhere else rules out all cycles except a
    # component detached from the root, which the parent count already forbids
    # for n nodes and n-1 edges; a DFS keeps the error message concrete anyway.
    seen = set()
    stack = [0]
    while stack:
        idx = stack.pop()
        if idx in seen:
            continue
        seen.add(idx)
        node = tree.nodes[idx]
        if isinstance(node, Split):
            stack.append(node.right)
            stack.append(node.left)
    _require(len(seen) == n, f"tree {tree_idx}: {n - len(seen)} node(s) unreachable from the root")


def load_model(document: str) -> Model:
    """Parse and validate a model-IR JSON document."""
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ModelError(f"not valid JSON: {exc}") from exc
    return model_from_object(obj)


def model_from_object(obj) -> Model:
    _require(isinstance(obj, dict), "top level must be an object")
    kind = obj.get("kind")
    _require(kind in ("dt", "rf", "bt"), f"kind must be one of dt/rf/bt, got {kind!r}")
    n_features = obj.get("n_features")
    _require(isinstance(n_features, int) and n_features >= 0, "n_features must be a non-negative integer")
    weight_scale = obj.get("weight_scale", DEFAULT_WEIGHT_SCALE)
    _require(isinstance(weight_scale, int) and weight_scale > 0, "weight_scale must be a positive integer")
    raw_trees = obj.get("trees")
    _require(isinstance(raw_trees, list) and len(raw_trees) > 0, "trees must be a non-empty array")
    if kind == "dt":
        _require(len(raw_trees) == 1, f"a dt model must have exactly 1 tree, found {len(raw_trees)}")
    leaf_kind = "weight" if kind == "bt" else "class"

    trees = []
    for t_idx, raw_tree in enumerate(raw_trees):
        _require(isinstance(raw_tree, dict) and isinstance(raw_tree.get("nodes"), list),
                 f"tree {t_idx}: must be an object with a 'nodes' array")
        raw_nodes = raw_tree["nodes"]
        _require(len(raw_nodes) > 0, f"tree {t_idx}: empty node array")
        nodes = []
        for n_idx, raw_node in enumerate(raw_nodes):
            where = f"tree {t_idx} node {n_idx}"
            _require(isinstance(raw_node, dict), f"{where}: node must be an object")
            ntype = raw_node.get("type")
            if ntype == "split":
                nodes.append(_parse_split(raw_node, where, n_features))
            elif ntype == "leaf":
                nodes.append(_parse_leaf(raw_node, where, leaf_kind))
            else:
                raise ModelError(f"{where}: type must be 'split' or 'leaf', got {ntype!r}")
        tree = Tree(tuple(nodes))
        _check_tree_structure(tree, t_idx)
        trees.append(tree)

    return Model(kind=kind, n_features=n_features, trees=tuple(trees), weight_scale=weight_scale)


def model_to_object(model: Model) -> dict:
    obj = {"kind": model.kind, "n_features": model.n_features}
    if model.kind == "bt":
        obj["weight_scale"] = model.weight_scale
    trees = []
    for tree in model.trees:
        nodes = []
        for node in tree.nodes:
            if isinstance(node, Split):
                threshold = node.test.threshold
                if node.test.op == OP_IN:
                    threshold = list(threshold)
                nodes.append({"type": "split", "feature": node.test.feature, "op": node.test.op,
                              "threshold": threshold, "left": node.left, "right": node.right})
            elif isinstance(node, ClassLeaf):
                nodes.append({"type": "leaf", "class": node.label})
            else:
                nodes.append({"type": "leaf", "weight": node.weight})
        trees.append({"nodes": nodes})
    obj["trees"] = trees
    return obj


def dump_model(model: Model) -> str:
    """Canonical serialization; load(dump(m)) == m for every valid model."""
    return json.dumps(model_to_object(model), sort_keys=True, separators=(",", ":"))


def model_hash(model: Model) -> str:
    return hashlib.sha256(dump_model(model).encode()).hexdigest()


def make_instance(values) -> Instance:
    vals = tuple(values)
    for v in vals:
        _require(_is_number(v) and math.isfinite(v), f"instance value {v!r} is not a finite number")
    return Instance(vals)


def check_instance(model: Model, instance: Instance) -> None:
    _require(len(instance.values) == model.n_features,
             f"instance has {len(instance.values)} values, model expects {model.n_features}")


def instance_hash(instance: Instance) -> str:
    text = json.dumps(list(instance.values), separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _walk_tree(tree: Tree, values) -> Node:
    node = tree.nodes[0]
    while isinstance(node, Split):
        node = tree.nodes[node.left if node.test.evaluate(values[node.test.feature]) else node.right]
    return node


def predict(model: Model, instance: Instance) -> Prediction:
    """Deterministic model output: leaf class, strict majority, or weight-sign test."""
    check_instance(model, instance)
    if model.kind == "dt":
        leaf = _walk_tree(model.trees[0], instance.values)
        return Prediction(label=leaf.label)
    if model.kind == "rf":
        votes = sum(_walk_tree(tree, instance.values).label for tree in model.trees)
        # strict majority: a tie in an even-sized forest predicts 0
        return Prediction(label=1 if 2 * votes > len(model.trees) else 0)
    total = sum(_walk_tree(tree, instance.values).weight for tree in model.trees)
    return Prediction(label=1 if total > 0 else 0, raw_weight=total)
