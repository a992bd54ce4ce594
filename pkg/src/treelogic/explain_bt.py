"""Tree-specific explanations for boosted trees via per-tree best/worst-case
weight aggregation. All arithmetic stays in scaled integers."""

from __future__ import annotations

from dataclasses import dataclass

from .explanations import BT_TREE_SPECIFIC, Query, make_explanation
from .search import greedy_shrink
from .timeouts import NO_DEADLINE
from .traversal import ModeMap, WeightRange, weight_range


@dataclass(frozen=True)
class WeightSummary:
    """Per-tree reachable weight ranges and their sums."""

    per_tree: tuple
    worst_sum: int
    best_sum: int


def bt_weight_summary(query: Query, fixed=frozenset()) -> WeightSummary:
    """Weight ranges with the given literals fixed and everything else free."""
    if query.model.kind != "bt":
        raise ValueError(f"boosted-tree explainer called on a {query.model.kind} model")
    all_lits = frozenset(query.table.literal_ids)
    modes = ModeMap(free=all_lits - frozenset(fixed))
    ranges = tuple(weight_range(query.model, query.table, t, query.bi, modes)
                   for t in range(len(query.model.trees)))
    return WeightSummary(per_tree=ranges,
                         worst_sum=sum(r.worst for r in ranges),
                         best_sum=sum(r.best for r in ranges))


def bt_tree_specific_one(query: Query, deadline=NO_DEADLINE):
    """Minimal fixed set whose worst case (class 1) or best case (class 0)
    still yields the prediction.

    Worst sums grow and best sums shrink as literals are fixed, so a
    deletion-based shrink from the full instance term (removals tried in
    ascending literal id) yields a subset-minimal set.
    """
    fc = query.prediction.label

    def holds(fixed: frozenset) -> bool:
        deadline.check()
        summary = bt_weight_summary(query, fixed)
        if fc == 1:
            return summary.worst_sum > 0
        return summary.best_sum <= 0

    fixed = greedy_shrink(sorted(query.table.literal_ids), holds, deadline)
    return make_explanation(query, BT_TREE_SPECIFIC, fixed)
