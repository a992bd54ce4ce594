"""Sufficient and contrastive explanations for single decision trees.

Both kinds work on the freed-literal lattice of one tree: a freed literal may
take either truth value during traversal. Freeing more literals can only grow
the reachable class set, so validity is monotone in both directions we need.
"""

from __future__ import annotations

from .explanations import (DT_CONTRASTIVE, DT_SUFFICIENT, ContrastiveImpossible,
                           Query, make_explanation, sort_explanations)
from .search import enumerate_maximal, enumerate_minimal, greedy_grow, greedy_shrink
from .timeouts import NO_DEADLINE, TimeoutExceeded
from .traversal import class_set, free_literals


def _tree_literals(query: Query, tree_idx: int) -> list:
    return sorted(query.table.tree_literals[tree_idx])


def _predicted_class(query: Query, tree_idx: int) -> int:
    only = class_set(query.model, query.table, tree_idx, query.bi)
    assert len(only) == 1
    return next(iter(only))


def dt_sufficient(query: Query, tree_idx: int = 0, enumerate_all: bool = False,
                  deadline=NO_DEADLINE):
    """Prime-implicant explanations covering the instance.

    A freed set is valid when every branch choice still reaches the predicted
    class; explanations are complements of maximal valid freed sets. The
    single-answer mode grows the freed set greedily in ascending literal id.
    """
    fc = _predicted_class(query, tree_idx)
    lits = _tree_literals(query, tree_idx)

    def valid(freed: frozenset) -> bool:
        deadline.check()
        return class_set(query.model, query.table, tree_idx, query.bi,
                         free_literals(freed)) == frozenset({fc})

    if not enumerate_all:
        freed = greedy_grow(lits, valid, deadline)
        return make_explanation(query, DT_SUFFICIENT, set(lits) - freed)
    try:
        freed_sets = enumerate_maximal(lits, valid, deadline)
    except TimeoutExceeded as exc:
        exc.partial = sort_explanations(
            make_explanation(query, DT_SUFFICIENT, set(lits) - s) for s in exc.partial)
        raise
    return sort_explanations(
        make_explanation(query, DT_SUFFICIENT, set(lits) - freed) for freed in freed_sets)


def dt_contrastive(query: Query, tree_idx: int = 0, enumerate_all: bool = False,
                   deadline=NO_DEADLINE):
    """Minimal freed sets that make both classes reachable.

    The single-answer mode shrinks from the full literal set, trying removals
    in ascending literal id.
    """
    lits = _tree_literals(query, tree_idx)

    def valid(freed: frozenset) -> bool:
        deadline.check()
        return len(class_set(query.model, query.table, tree_idx, query.bi,
                             free_literals(freed))) == 2

    if not valid(frozenset(lits)):
        raise ContrastiveImpossible(
            "the tree predicts the same class under every branch choice")
    if not enumerate_all:
        freed = greedy_shrink(lits, valid, deadline)
        return make_explanation(query, DT_CONTRASTIVE, freed)
    try:
        freed_sets = enumerate_minimal(lits, valid, deadline)
    except TimeoutExceeded as exc:
        exc.partial = sort_explanations(
            make_explanation(query, DT_CONTRASTIVE, s) for s in exc.partial)
        raise
    return sort_explanations(make_explanation(query, DT_CONTRASTIVE, s) for s in freed_sets)
