"""Tree evaluation under partial literal assignments.

Every literal is in one of three modes:

* Fixed   -- keeps its instance truth value,
* Flipped -- deterministically takes the opposite value,
* Free    -- may take both values, so traversal explores both branches.

All functions are pure; each node is visited at most once per query.
"""

from __future__ import annotations

from dataclasses import dataclass

from .literals import BoolInstance, LiteralTable
from .models import ClassLeaf, Model, Split, WeightLeaf

EMPTY = frozenset()


@dataclass(frozen=True)
class ModeMap:
    """Per-literal traversal mode; literals outside both sets are Fixed."""

    free: frozenset = EMPTY
    flipped: frozenset = EMPTY

    def __post_init__(self):
        overlap = self.free & self.flipped
        if overlap:
            raise ValueError(f"literals cannot be Free and Flipped at once: {sorted(overlap)}")


FIXED = ModeMap()


def free_literals(lits) -> ModeMap:
    return ModeMap(free=frozenset(lits))


def flipped_literals(lits) -> ModeMap:
    return ModeMap(flipped=frozenset(lits))


@dataclass(frozen=True)
class WeightRange:
    worst: int
    best: int


@dataclass(frozen=True)
class FlipVote:
    label: int
    disagreeing: int


def _effective(lit: int, bi: BoolInstance, modes: ModeMap):
    """Truth value driving the branch choice; None means both branches."""
    if lit in modes.free:
        return None
    value = bi.truth_of(lit)
    if lit in modes.flipped:
        return 1 - value
    return value


def _reachable(model: Model, table: LiteralTable, tree_idx: int,
               bi: BoolInstance, modes: ModeMap):
    """Yields (node id, leaf node) for every reachable leaf."""
    tree = model.trees[tree_idx]
    lits = table.node_literals[tree_idx]
    stack = [0]
    while stack:
        idx = stack.pop()
        node = tree.nodes[idx]
        if not isinstance(node, Split):
            yield idx, node
            continue
        value = _effective(lits[idx], bi, modes)
        if value is None:
            stack.append(node.left)
            stack.append(node.right)
        elif value:
            stack.append(node.left)
        else:
            stack.append(node.right)


def reachable_leaves(model: Model, table: LiteralTable, tree_idx: int,
                     bi: BoolInstance, modes: ModeMap = FIXED) -> frozenset:
    """Leaf node ids reachable under some branch choice consistent with the modes."""
    return frozenset(idx for idx, _ in _reachable(model, table, tree_idx, bi, modes))


def class_set(model: Model, table: LiteralTable, tree_idx: int,
              bi: BoolInstance, modes: ModeMap = FIXED) -> frozenset:
    """Set of classes over reachable leaves; exits early once both are seen."""
    seen = 0
    for _, leaf in _reachable(model, table, tree_idx, bi, modes):
        if not isinstance(leaf, ClassLeaf):
            raise TypeError("class_set needs class leaves; use weight_range for weight trees")
        seen |= 1 << leaf.label
        if seen == 3:
            break
    out = set()
    if seen & 1:
        out.add(0)
    if seen & 2:
        out.add(1)
    return frozenset(out)


def weight_range(model: Model, table: LiteralTable, tree_idx: int,
                 bi: BoolInstance, modes: ModeMap = FIXED) -> WeightRange:
    """Min and max leaf weight reachable under the modes."""
    worst = best = None
    for _, leaf in _reachable(model, table, tree_idx, bi, modes):
        if not isinstance(leaf, WeightLeaf):
            raise TypeError("weight_range needs weight leaves; use class_set for class trees")
        if worst is None or leaf.weight < worst:
            worst = leaf.weight
        if best is None or leaf.weight > best:
            best = leaf.weight
    return WeightRange(worst=worst, best=best)


def tree_class_under_flips(model: Model, table: LiteralTable, tree_idx: int,
                           bi: BoolInstance, flips: frozenset) -> int:
    """Deterministic class of one tree with the given literals flipped."""
    tree = model.trees[tree_idx]
    lits = table.node_literals[tree_idx]
    idx = 0
    node = tree.nodes[0]
    while isinstance(node, Split):
        value = bi.truth_of(lits[idx])
        if lits[idx] in flips:
            value = 1 - value
        idx = node.left if value else node.right
        node = tree.nodes[idx]
    return node.label


def forest_vote_under_flips(model: Model, table: LiteralTable,
                            bi: BoolInstance, flips) -> FlipVote:
    """Recompute the majority vote with every tree evaluated under the flips.

    ``disagreeing`` counts trees whose class differs from the original
    (flip-free) forest prediction.
    """
    flips = frozenset(flips)
    m = len(model.trees)
    base_votes = sum(tree_class_under_flips(model, table, t, bi, EMPTY) for t in range(m))
    original = 1 if 2 * base_votes > m else 0
    classes = [tree_class_under_flips(model, table, t, bi, flips) for t in range(m)]
    votes = sum(classes)
    label = 1 if 2 * votes > m else 0
    disagreeing = sum(1 for c in classes if c != original)
    return FlipVote(label=label, disagreeing=disagreeing)
