"""Convert scikit-learn tree models into the engine's model-IR JSON.

Supported dump kinds (joblib/pickle files):

* ``tree``    -- DecisionTreeClassifier           -> ``dt`` document
* ``forest``  -- RandomForestClassifier           -> ``rf`` document
* ``boosted`` -- GradientBoostingClassifier       -> ``bt`` document

Only binary classifiers with labels {0, 1} are supported. The IR forest uses
a hard strict-majority vote; scikit-learn forests average per-tree
probabilities, so the two agree exactly when the trees have pure leaves
(fully grown trees) and can differ on impure-leaf ties otherwise.

Boosted leaf values are folded to fixed point: each leaf stores
``round(learning_rate * value * weight_scale)`` with banker's rounding, and
the model's initial log-odds becomes a single-leaf intercept tree (omitted
when it rounds to zero, e.g. for perfectly balanced training classes), so the
IR sign test tracks ``decision_function`` up to rounding of the margin.
"""

from __future__ import annotations

import json

import joblib
import numpy as np

DEFAULT_WEIGHT_SCALE = 1000


class AdapterError(ValueError):
    pass


def _check_binary_classes(model) -> None:
    classes = getattr(model, "classes_", None)
    if classes is None:
        raise AdapterError("model is not a fitted classifier (no classes_)")
    if list(classes) != [0, 1]:
        raise AdapterError(f"only binary classifiers with labels [0, 1] are supported, "
                           f"got classes {list(classes)}")


def _check_feature_indices(tree, n_features: int) -> None:
    used = tree.feature[tree.feature >= 0]
    if used.size and int(used.max()) >= n_features:
        raise AdapterError(f"feature-count mismatch: tree splits on feature "
                           f"{int(used.max())} but the model declares {n_features}")


def _tree_nodes(tree, leaf_value) -> list:
    """Flatten one fitted sklearn tree into IR node dicts (indices preserved)."""
    nodes = []
    for i in range(tree.node_count):
        if tree.children_left[i] == -1:
            nodes.append(leaf_value(tree, i))
        else:
            nodes.append({"type": "split", "feature": int(tree.feature[i]), "op": "le",
                          "threshold": float(tree.threshold[i]),
                          "left": int(tree.children_left[i]),
                          "right": int(tree.children_right[i])})
    return nodes


def _class_leaf(tree, i) -> dict:
    # same tie behaviour as sklearn predict: argmax takes the lower class
    return {"type": "leaf", "class": int(np.argmax(tree.value[i][0]))}


def convert_tree(clf) -> dict:
    _check_binary_classes(clf)
    _check_feature_indices(clf.tree_, clf.n_features_in_)
    return {"kind": "dt", "n_features": int(clf.n_features_in_),
            "trees": [{"nodes": _tree_nodes(clf.tree_, _class_leaf)}]}


def convert_forest(forest) -> dict:
    _check_binary_classes(forest)
    trees = []
    for estimator in forest.estimators_:
        _check_feature_indices(estimator.tree_, forest.n_features_in_)
        trees.append({"nodes": _tree_nodes(estimator.tree_, _class_leaf)})
    return {"kind": "rf", "n_features": int(forest.n_features_in_), "trees": trees}


def convert_boosted(gbm, weight_scale: int = DEFAULT_WEIGHT_SCALE) -> dict:
    _check_binary_classes(gbm)
    if gbm.estimators_.shape[1] != 1:
        raise AdapterError("expected a binary boosted model with one tree per stage")
    lr = float(gbm.learning_rate)
    init_raw = float(gbm._raw_predict_init(np.zeros((1, gbm.n_features_in_)))[0, 0])

    def weight_leaf(tree, i):
        # round-half-even keeps the scaled margin within 0.5 units per leaf
        return {"type": "leaf", "weight": round(lr * float(tree.value[i][0][0]) * weight_scale)}

    trees = []
    intercept = round(init_raw * weight_scale)
    if intercept != 0:
        trees.append({"nodes": [{"type": "leaf", "weight": intercept}]})
    for stage in gbm.estimators_[:, 0]:
        _check_feature_indices(stage.tree_, gbm.n_features_in_)
        trees.append({"nodes": _tree_nodes(stage.tree_, weight_leaf)})
    return {"kind": "bt", "n_features": int(gbm.n_features_in_),
            "weight_scale": weight_scale, "trees": trees}


_CONVERTERS = {
    "tree": ("DecisionTreeClassifier", convert_tree),
    "forest": ("RandomForestClassifier", convert_forest),
    "boosted": ("GradientBoostingClassifier", convert_boosted),
}


def convert_model(model, dump_type: str, weight_scale: int = DEFAULT_WEIGHT_SCALE) -> dict:
    if dump_type not in _CONVERTERS:
        raise AdapterError(f"unsupported dump type {dump_type!r}; "
                           f"expected one of {sorted(_CONVERTERS)}")
    expected_cls, fn = _CONVERTERS[dump_type]
    if type(model).__name__ != expected_cls:
        raise AdapterError(f"dump type '{dump_type}' expects a {expected_cls}, "
                           f"found {type(model).__name__}")
    if dump_type == "boosted":
        return fn(model, weight_scale)
    return fn(model)


def convert(dump_path: str, dump_type: str, out_path: str,
            weight_scale: int = DEFAULT_WEIGHT_SCALE) -> dict:
    """Load a serialized model, convert it, and write the IR JSON document."""
    try:
        model = joblib.load(dump_path)
    except Exception as exc:
        raise AdapterError(f"cannot load model dump {dump_path}: {exc}") from exc
    doc = convert_model(model, dump_type, weight_scale)
    with open(out_path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    return doc
