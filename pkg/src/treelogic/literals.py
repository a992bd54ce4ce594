"""Boolean abstraction of a model: the literal table, instance truth values,
and per-instance vote thresholds for forests.

Literal ids are 1-based and assigned by first occurrence in (tree index,
depth-first preorder). Identical tests share one id across the whole model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .models import Model, Instance, Split, SplitTest, check_instance


@dataclass(frozen=True)
class LiteralTable:
    """Bijection between distinct node tests and literal ids.

    ``node_literals[t][x]`` is the literal id of internal node ``x`` of tree
    ``t`` (``None`` for leaves); ``tree_literals[t]`` is the id set of tree ``t``.
    """

    tests: tuple                 # tests[i] is the SplitTest of literal i+1
    node_literals: tuple
    tree_literals: tuple

    def __len__(self) -> int:
        return len(self.tests)

    @property
    def literal_ids(self) -> range:
        return range(1, len(self.tests) + 1)

    def test_of(self, lit: int) -> SplitTest:
        return self.tests[lit - 1]


@dataclass(frozen=True)
class BoolInstance:
    """Truth value of every literal on one instance, indexed by literal id."""

    truth: tuple

    def truth_of(self, lit: int) -> int:
        return self.truth[lit - 1]


@dataclass(frozen=True)
class Thresholds:
    """Per-instance vote-count thresholds for a forest of m trees.

    ``con`` is the strict lower bound on disagreeing trees that flips the
    forest prediction; ``suf`` equals ``con`` (the sufficient-explanation
    stage uses the same flip condition); staying strictly below ``majo``
    disagreeing trees guarantees a strict majority still agrees.
    """

    suf: int
    con: int
    majo: int


def build_literal_table(model: Model) -> LiteralTable:
    tests = []
    index = {}
    node_literals = []
    tree_literals = []
    for tree in model.trees:
        per_node = [None] * len(tree.nodes)
        lits = set()
        stack = [0]
        while stack:
            idx = stack.pop()
            node = tree.nodes[idx]
            if not isinstance(node, Split):
                continue
            key = node.test.key()
            lit = index.get(key)
            if lit is None:
                tests.append(node.test)
                lit = len(tests)
                index[key] = lit
            per_node[idx] = lit
            lits.add(lit)
            stack.append(node.right)
            stack.append(node.left)
        node_literals.append(tuple(per_node))
        tree_literals.append(frozenset(lits))
    return LiteralTable(tests=tuple(tests), node_literals=tuple(node_literals),
                        tree_literals=tuple(tree_literals))


def booleanize(model: Model, table: LiteralTable, instance: Instance) -> BoolInstance:
    check_instance(model, instance)
    truth = tuple(1 if test.evaluate(instance.values[test.feature]) else 0 for test in table.tests)
    return BoolInstance(truth=truth)


def compute_thresholds(m: int, predicted_class: int) -> Thresholds:
    """Thresholds for an m-tree forest under the strict ">m/2" majority rule.

    Derived from the flip condition per predicted class: with the forest
    predicting 1, it flips to 0 once at least ceil(m/2) trees disagree; with
    the forest predicting 0, once at least floor(m/2)+1 trees disagree.
    """
    if m < 1:
        raise ValueError(f"forest must have at least one tree, got m={m}")
    if predicted_class not in (0, 1):
        raise ValueError(f"predicted class must be 0 or 1, got {predicted_class!r}")
    if predicted_class == 1:
        con = (m + 1) // 2 - 1
    else:
        con = m // 2
    majo = m - m // 2
    return Thresholds(suf=con, con=con, majo=majo)
