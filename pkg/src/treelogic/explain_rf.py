"""Random-forest explainers: two-stage sufficient (counterfactual search plus
deletion-based minimal fixed set), contrastive, and majority explanations.

Two different literal semantics are in play and are kept strictly apart:

* sufficient/contrastive reason about *flipped* literals (deterministically
  set to the opposite of their instance value),
* majority reasons about *freed* literals (both branch choices explored).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .explanations import (RF_CONTRASTIVE, RF_MAJORITY, RF_SUFFICIENT,
                           ContrastiveImpossible, ExplanationImpossible, Query,
                           make_explanation, sort_explanations)
from .search import (enumerate_maximal, enumerate_minimal,
                     first_of_minimum_cardinality, greedy_shrink)
from .timeouts import NO_DEADLINE, TimeoutExceeded
from .traversal import class_set, free_literals, tree_class_under_flips

EMPTY = frozenset()


@dataclass(frozen=True)
class CounterfactualWitness:
    """A flip set that changes the forest prediction."""

    flips: frozenset
    resulting_class: int
    disagreeing_count: int


class _ForestEval:
    """Per-tree evaluation caches for one (forest, instance) pair."""

    def __init__(self, query: Query):
        if query.model.kind != "rf":
            raise ValueError(f"random-forest explainer called on a {query.model.kind} model")
        self.query = query
        self.m = len(query.model.trees)
        self.fc = query.prediction.label
        self.tree_lits = query.table.tree_literals
        self.trees_of_literal = {}
        for t, lits in enumerate(self.tree_lits):
            for lit in lits:
                self.trees_of_literal.setdefault(lit, []).append(t)
        self.base_class = tuple(
            tree_class_under_flips(query.model, query.table, t, query.bi, EMPTY)
            for t in range(self.m))
        self.base_disagree = sum(1 for c in self.base_class if c != self.fc)
        self._flip_cache = {}
        self._break_cache = {}

    def class_under_flips(self, tree_idx: int, flips: frozenset) -> int:
        proj = flips & self.tree_lits[tree_idx]
        if not proj:
            return self.base_class[tree_idx]
        key = (tree_idx, proj)
        got = self._flip_cache.get(key)
        if got is None:
            got = tree_class_under_flips(self.query.model, self.query.table,
                                         tree_idx, self.query.bi, proj)
            self._flip_cache[key] = got
        return got

    def disagreeing_under_flips(self, flips: frozenset) -> int:
        """Number of trees voting against the original forest class."""
        count = self.base_disagree
        affected = set()
        for lit in flips:
            affected.update(self.trees_of_literal.get(lit, ()))
        for t in affected:
            was = self.base_class[t] != self.fc
            now = self.class_under_flips(t, flips) != self.fc
            count += now - was
        return count

    def broken_under_frees(self, tree_idx: int, freed: frozenset) -> bool:
        """True when freeing lets this tree reach the opposite class."""
        proj = freed & self.tree_lits[tree_idx]
        if not proj:
            return self.base_class[tree_idx] != self.fc
        key = (tree_idx, proj)
        got = self._break_cache.get(key)
        if got is None:
            got = (1 - self.fc) in class_set(self.query.model, self.query.table,
                                             tree_idx, self.query.bi, free_literals(proj))
            self._break_cache[key] = got
        return got

    def broken_count(self, freed: frozenset) -> int:
        return sum(1 for t in range(self.m) if self.broken_under_frees(t, freed))


def _search_counterfactual(ev: _ForestEval, fixed: frozenset, deadline):
    """Complete search for a flip set over the non-fixed literals that changes
    the forest prediction; None when every flip set is blocked."""
    threshold = ev.query.thresholds.suf
    allowed = frozenset(ev.query.table.literal_ids) - fixed
    # a tree whose opposite class is free-unreachable can never disagree
    potential = [t for t in range(ev.m)
                 if ev.broken_under_frees(t, allowed & ev.tree_lits[t])]
    if len(potential) <= threshold:
        return None
    candidates = sorted(
        {lit for t in potential for lit in ev.tree_lits[t]} & allowed)
    ticker = 0
    for k in range(1, len(candidates) + 1):
        for combo in combinations(candidates, k):
            ticker += 1
            if ticker % 256 == 0:
                deadline.check()
            flips = frozenset(combo)
            count = ev.disagreeing_under_flips(flips)
            if count > threshold:
                return CounterfactualWitness(flips=flips, resulting_class=1 - ev.fc,
                                             disagreeing_count=count)
    return None


def rf_counterfactual_exists(query: Query, fixed=EMPTY, deadline=NO_DEADLINE):
    """Stage 1 of the sufficient pipeline: is there a prediction-changing flip
    set outside the fixed literals?"""
    return _search_counterfactual(_ForestEval(query), frozenset(fixed), deadline)


def rf_sufficient_one(query: Query, deadline=NO_DEADLINE):
    """Stage 2: a minimal fixed set blocking every counterfactual.

    Deletion-based shrink from the full instance term, trying removals in
    ascending literal id; blocking is upward-closed, so the result is
    subset-minimal.
    """
    ev = _ForestEval(query)

    def blocked(fixed: frozenset) -> bool:
        deadline.check()
        return _search_counterfactual(ev, fixed, deadline) is None

    fixed = greedy_shrink(sorted(query.table.literal_ids), blocked, deadline)
    return make_explanation(query, RF_SUFFICIENT, fixed)


def _contrastive_candidates(ev: _ForestEval):
    threshold = ev.query.thresholds.con
    all_lits = frozenset(ev.query.table.literal_ids)
    potential = [t for t in range(ev.m)
                 if ev.broken_under_frees(t, all_lits & ev.tree_lits[t])]
    if len(potential) <= threshold:
        raise ContrastiveImpossible(
            "no combination of literal flips can change the forest prediction")
    return sorted({lit for t in potential for lit in ev.tree_lits[t]})


def rf_contrastive(query: Query, enumerate_all: bool = False, deadline=NO_DEADLINE):
    """Minimal flip sets that change the forest prediction end-to-end.

    Flip semantics is not monotone (flipping more literals can un-flip a
    tree), so the single answer is found by cardinality-ascending search --
    the first solution in (size, lexicographic) order is subset-minimal by
    construction -- and enumeration filters the full lattice against found
    solutions.
    """
    ev = _ForestEval(query)
    threshold = query.thresholds.con
    candidates = _contrastive_candidates(ev)

    def valid(flips: frozenset) -> bool:
        return ev.disagreeing_under_flips(flips) > threshold

    if not enumerate_all:
        flips = first_of_minimum_cardinality(candidates, valid, deadline)
        if flips is None:
            raise ContrastiveImpossible(
                "no combination of literal flips can change the forest prediction")
        return make_explanation(query, RF_CONTRASTIVE, flips)
    try:
        flip_sets = enumerate_minimal(candidates, valid, deadline)
    except TimeoutExceeded as exc:
        exc.partial = sort_explanations(
            make_explanation(query, RF_CONTRASTIVE, s) for s in exc.partial)
        raise
    return sort_explanations(make_explanation(query, RF_CONTRASTIVE, s) for s in flip_sets)


def rf_majority(query: Query, enumerate_all: bool = False, deadline=NO_DEADLINE):
    """Fixed sets guaranteeing that a strict majority of trees keeps the
    predicted class, as complements of maximal freeable sets.

    The single-answer mode grows the freed set greedily: harmless literals
    (breaking no tree) first in ascending id; when only breaking additions
    remain, it sacrifices the most constrained tree -- fewest trees newly
    broken, then fewest remaining literals able to break them, then smallest
    id -- and returns to harmless growth.
    """
    ev = _ForestEval(query)
    majo = query.thresholds.majo
    all_lits = sorted(query.table.literal_ids)

    def valid(freed: frozenset) -> bool:
        deadline.check()
        return ev.broken_count(freed) < majo

    if enumerate_all:
        try:
            freed_sets = enumerate_maximal(all_lits, valid, deadline)
        except TimeoutExceeded as exc:
            exc.partial = sort_explanations(
                make_explanation(query, RF_MAJORITY, set(all_lits) - s) for s in exc.partial)
            raise
        return sort_explanations(
            make_explanation(query, RF_MAJORITY, set(all_lits) - s) for s in freed_sets)

    freed = set()
    broken = {t for t in range(ev.m) if ev.broken_under_frees(t, frozenset())}
    if len(broken) >= majo:
        # only possible for a tied even-sized forest: too many trees disagree
        # with the strict-majority class on the raw instance, so not even the
        # full instance term pins enough trees
        raise ExplanationImpossible(
            "no strict majority of trees agrees with the forest prediction on "
            "this instance, so no majority explanation exists")

    def newly_broken(lit: int) -> set:
        grown = frozenset(freed | {lit})
        return {t for t in ev.trees_of_literal.get(lit, ())
                if t not in broken and ev.broken_under_frees(t, grown)}

    while True:
        deadline.check()
        # harmless additions, re-scanned to a fixpoint (pairs of freed
        # literals may break a tree that each one alone does not)
        grew = True
        while grew:
            grew = False
            for lit in all_lits:
                if lit not in freed and not newly_broken(lit):
                    freed.add(lit)
                    grew = True
        # one breaking addition, most constrained tree first
        best = None
        for lit in all_lits:
            if lit in freed:
                continue
            hits = newly_broken(lit)
            if len(broken) + len(hits) >= majo:
                continue
            breakers = sum(
                sum(1 for other in ev.tree_lits[t] - freed if t in newly_broken(other))
                for t in hits)
            key = (len(hits), breakers, lit)
            if best is None or key < best[0]:
                best = (key, lit, hits)
        if best is None:
            break
        freed.add(best[1])
        broken |= best[2]

    return make_explanation(query, RF_MAJORITY, set(all_lits) - freed)
