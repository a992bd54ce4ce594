"""Independent brute-force verifier and enumerator.

Everything here evaluates the explanation definitions literally, on complete
truth assignments, with plain root-to-leaf walks. It deliberately shares no
search or traversal logic with the explainers: trees are never evaluated
under partial assignments, only under fully specified ones enumerated
exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .explanations import (ALL_KINDS, BT_TREE_SPECIFIC, DT_CONTRASTIVE, DT_SUFFICIENT,
                           KINDS_BY_MODEL, RF_CONTRASTIVE, RF_MAJORITY, RF_SUFFICIENT,
                           Query)
from .models import Split

DEFAULT_BOUND = 16


class OracleBoundError(ValueError):
    """Model has more literals than the brute-force verifier is allowed."""


@dataclass(frozen=True)
class Verdict:
    valid: bool
    minimal_or_maximal: bool
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.valid and self.minimal_or_maximal


def _check_bound(query: Query, bound: int) -> None:
    n = len(query.table)
    if n > bound:
        raise OracleBoundError(
            f"model has {n} literals, above the oracle bound of {bound}")


def _check_kind(query: Query, kind: str) -> None:
    if kind not in ALL_KINDS:
        raise ValueError(f"unknown explanation kind {kind!r}")
    if kind not in KINDS_BY_MODEL[query.model.kind]:
        raise ValueError(f"{kind} is not applicable to a {query.model.kind} model")


def _tree_value(query: Query, tree_idx: int, assign: dict):
    """Plain walk under a complete truth assignment; leaf label or weight."""
    tree = query.model.trees[tree_idx]
    lits = query.table.node_literals[tree_idx]
    idx = 0
    node = tree.nodes[0]
    while isinstance(node, Split):
        idx = node.left if assign[lits[idx]] else node.right
        node = tree.nodes[idx]
    return node.label if hasattr(node, "label") else node.weight


def _model_label(query: Query, assign: dict) -> int:
    model = query.model
    if model.kind == "dt":
        return _tree_value(query, 0, assign)
    if model.kind == "rf":
        votes = sum(_tree_value(query, t, assign) for t in range(len(model.trees)))
        return 1 if 2 * votes > len(model.trees) else 0
    total = sum(_tree_value(query, t, assign) for t in range(len(model.trees)))
    return 1 if total > 0 else 0


def _instance_assignment(query: Query) -> dict:
    return {lit: query.bi.truth_of(lit) for lit in query.table.literal_ids}


def _completions(query: Query, pinned_lits: frozenset):
    """All complete assignments agreeing with the instance on the pinned literals."""
    base = _instance_assignment(query)
    free = sorted(set(query.table.literal_ids) - pinned_lits)
    for values in product((0, 1), repeat=len(free)):
        assign = dict(base)
        assign.update(zip(free, values))
        yield assign


def _implicant_counterexample(query: Query, lits: frozenset):
    """A completion of the term that changes the model output, or None."""
    fc = query.prediction.label
    for assign in _completions(query, lits):
        if _model_label(query, assign) != fc:
            return assign
    return None


def _tree_implicant(query: Query, tree_idx: int, lits: frozenset) -> bool:
    """Does every completion keep this single tree on the predicted class?"""
    fc = query.prediction.label
    base = _instance_assignment(query)
    free = sorted(query.table.tree_literals[tree_idx] - lits)
    for values in product((0, 1), repeat=len(free)):
        assign = dict(base)
        assign.update(zip(free, values))
        if _tree_value(query, tree_idx, assign) != fc:
            return False
    return True


def _majority_support(query: Query, lits: frozenset) -> int:
    return sum(1 for t in range(len(query.model.trees)) if _tree_implicant(query, t, lits))


def _flip_changes_prediction(query: Query, flips: frozenset) -> bool:
    assign = {lit: (1 - query.bi.truth_of(lit)) if lit in flips else query.bi.truth_of(lit)
              for lit in query.table.literal_ids}
    return _model_label(query, assign) != query.prediction.label


def _bt_extreme_sum(query: Query, lits: frozenset, want_max: bool) -> int:
    total = 0
    base = _instance_assignment(query)
    for t in range(len(query.model.trees)):
        free = sorted(query.table.tree_literals[t] - lits)
        extreme = None
        for values in product((0, 1), repeat=len(free)):
            assign = dict(base)
            assign.update(zip(free, values))
            weight = _tree_value(query, t, assign)
            if extreme is None or (weight > extreme if want_max else weight < extreme):
                extreme = weight
        total += extreme
    return total


def _valid_by_definition(query: Query, kind: str, lits: frozenset) -> bool:
    if kind in (DT_SUFFICIENT, RF_SUFFICIENT):
        return _implicant_counterexample(query, lits) is None
    if kind == DT_CONTRASTIVE:
        # removing the literals must leave a term that is not an implicant
        return _implicant_counterexample(
            query, frozenset(query.table.literal_ids) - lits) is not None
    if kind == RF_CONTRASTIVE:
        return _flip_changes_prediction(query, lits)
    if kind == RF_MAJORITY:
        needed = len(query.model.trees) // 2 + 1
        return _majority_support(query, lits) >= needed
    if kind == BT_TREE_SPECIFIC:
        if query.prediction.label == 1:
            return _bt_extreme_sum(query, lits, want_max=False) > 0
        return _bt_extreme_sum(query, lits, want_max=True) <= 0
    raise ValueError(kind)


def _universe(query: Query, kind: str) -> frozenset:
    if kind in (DT_SUFFICIENT, DT_CONTRASTIVE):
        return query.table.tree_literals[0]
    return frozenset(query.table.literal_ids)


def oracle_check(query: Query, explanation, bound: int = DEFAULT_BOUND) -> Verdict:
    """Exhaustively check validity and minimality of one explanation.

    For the flip-based contrastive kind minimality means no valid proper
    subset anywhere in the lattice; for every other kind the defining
    condition is monotone and per-literal deletions settle it.
    """
    kind = explanation.kind
    _check_kind(query, kind)
    _check_bound(query, bound)
    lits = frozenset(explanation.literals)
    if not lits <= _universe(query, kind):
        return Verdict(valid=False, minimal_or_maximal=False,
                       witness={"foreign_literals": sorted(lits - _universe(query, kind))})

    if not _valid_by_definition(query, kind, lits):
        witness = None
        if kind in (DT_SUFFICIENT, RF_SUFFICIENT):
            assign = _implicant_counterexample(query, lits)
            witness = {"completion": {lit: assign[lit] for lit in sorted(assign)}}
        return Verdict(valid=False, minimal_or_maximal=False, witness=witness)

    if kind == RF_CONTRASTIVE:
        for k in range(len(lits)):
            for combo in combinations(sorted(lits), k):
                if _valid_by_definition(query, kind, frozenset(combo)):
                    return Verdict(valid=True, minimal_or_maximal=False,
                                   witness={"smaller_valid_subset": sorted(combo)})
    else:
        for lit in sorted(lits):
            if _valid_by_definition(query, kind, lits - {lit}):
                return Verdict(valid=True, minimal_or_maximal=False,
                               witness={"removable_literal": lit})
    return Verdict(valid=True, minimal_or_maximal=True)


def oracle_enumerate(query: Query, kind: str, bound: int = DEFAULT_BOUND) -> set:
    """Complete duplicate-free set of explanations of the given kind, found by
    scanning the subset lattice bottom-up and keeping minimal valid sets."""
    _check_kind(query, kind)
    _check_bound(query, bound)
    universe = sorted(_universe(query, kind))
    found = []
    for k in range(len(universe) + 1):
        for combo in combinations(universe, k):
            candidate = frozenset(combo)
            if any(prior < candidate for prior in found):
                continue
            if _valid_by_definition(query, kind, candidate):
                found.append(candidate)
    return set(found)
