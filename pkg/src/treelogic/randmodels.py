"""Seeded random models and instances for property suites and benchmarks.

All generation goes through ``random.Random(seed)`` so every test run sees
identical models. Node tests are drawn from a small pre-built pool, which
caps the number of distinct literals and makes test sharing across trees
(and within one tree) common -- the interesting regime for the explainers.
"""

from __future__ import annotations

import random

from .models import Model, Instance, make_instance, model_from_object


def _test_pool(rng: random.Random, n_features: int, max_literals: int, grid) -> list:
    pool = {(f, c) for f in range(n_features) for c in grid}
    picks = rng.sample(sorted(pool), min(max_literals, len(pool)))
    return [{"feature": f, "op": "le", "threshold": c} for f, c in picks]


def _random_tree(rng: random.Random, pool: list, max_depth: int, leaf_maker) -> dict:
    # a path never repeats a test: learned trees cannot re-split on an
    # identical condition (one side would be empty), and the node-local
    # branch semantics of the explainers relies on path-distinct tests
    nodes = []

    def build(depth: int, used: frozenset) -> int:
        idx = len(nodes)
        nodes.append(None)
        usable = [t for i, t in enumerate(pool) if i not in used]
        if depth >= max_depth or not usable or rng.random() < 0.08 + 0.16 * depth:
            nodes[idx] = leaf_maker()
            return idx
        pick = rng.randrange(len(usable))
        test = usable[pick]
        child_used = used | {pool.index(test)}
        left = build(depth + 1, child_used)
        right = build(depth + 1, child_used)
        nodes[idx] = {"type": "split", **test, "left": left, "right": right}
        return idx

    root = build(0, frozenset())
    assert root == 0
    return {"nodes": nodes}


def random_model(seed: int, kind: str | None = None, max_trees: int = 3,
                 max_depth: int = 3, max_literals: int = 8,
                 n_features: int = 3, grid=range(1, 7)) -> tuple[Model, Instance]:
    """One random (model, instance) pair; the instance is always in range of
    the threshold grid so literal truth values are mixed."""
    rng = random.Random(seed)
    if kind is None:
        kind = rng.choice(("dt", "rf", "bt"))
    pool = _test_pool(rng, n_features, max_literals, grid)
    n_trees = 1 if kind == "dt" else rng.randint(1, max_trees)
    if kind == "bt":
        def leaf_maker():
            return {"type": "leaf", "weight": rng.randint(-900, 900)}
    else:
        def leaf_maker():
            return {"type": "leaf", "class": rng.randint(0, 1)}
    trees = [_random_tree(rng, pool, max_depth, leaf_maker) for _ in range(n_trees)]
    doc = {"kind": kind, "n_features": n_features, "trees": trees}
    if kind == "bt":
        doc["weight_scale"] = 1000
    model = model_from_object(doc)
    instance = make_instance([rng.randint(0, max(grid) + 1) for _ in range(n_features)])
    return model, instance


def grid_forest(seed: int, n_trees: int = 100, depth: int = 6,
                n_features: int = 10, grid=range(1, 9)) -> tuple[Model, Instance]:
    """A dense voting forest over a shared threshold grid, the scale used for
    the single-contrastive performance bound."""
    rng = random.Random(seed)
    pool = [{"feature": f, "op": "le", "threshold": c} for f in range(n_features) for c in grid]

    def leaf_maker():
        return {"type": "leaf", "class": rng.randint(0, 1)}

    trees = []
    for _ in range(n_trees):
        tree = _random_tree(rng, pool, depth, leaf_maker)
        trees.append(tree)
    model = model_from_object({"kind": "rf", "n_features": n_features, "trees": trees})
    instance = make_instance([rng.randint(0, max(grid) + 1) for _ in range(n_features)])
    return model, instance
