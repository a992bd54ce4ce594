"""Deterministic subset-lattice searches shared by the explainers.

The enumeration routines do a complete scan over subsets of a (small)
universe, pruned by blocking against already-found solutions. They are meant
for desk-scale queries; large models are protected by the deadline.
"""

from __future__ import annotations

from itertools import combinations

from .timeouts import NO_DEADLINE, TimeoutExceeded


def greedy_grow(universe, valid, deadline=NO_DEADLINE) -> frozenset:
    """Largest set reachable by adding elements in the given order.

    ``valid`` must be downward-closed and hold for the empty set; the result
    is then subset-maximal.
    """
    current = set()
    for element in universe:
        deadline.check()
        candidate = current | {element}
        if valid(frozenset(candidate)):
            current = candidate
    return frozenset(current)


def greedy_shrink(universe, valid, deadline=NO_DEADLINE) -> frozenset:
    """Smallest set reachable by dropping elements in the given order.

    ``valid`` must be upward-closed and hold for the full set; the result is
    then subset-minimal.
    """
    current = set(universe)
    for element in universe:
        deadline.check()
        candidate = current - {element}
        if valid(frozenset(candidate)):
            current = candidate
    return frozenset(current)


def first_of_minimum_cardinality(universe, valid, deadline=NO_DEADLINE):
    """First valid subset in (cardinality, lexicographic) order, or None."""
    ordered = sorted(universe)
    ticker = 0
    for k in range(len(ordered) + 1):
        for combo in combinations(ordered, k):
            ticker += 1
            if ticker % 256 == 0:
                deadline.check()
            candidate = frozenset(combo)
            if valid(candidate):
                return candidate
    return None


def enumerate_minimal(universe, valid, deadline=NO_DEADLINE) -> list:
    """All subset-minimal valid sets, scanning cardinalities bottom-up.

    Works for arbitrary ``valid``: every valid set contains a minimal valid
    subset, so blocking on found minimal sets is a complete filter.
    """
    ordered = sorted(universe)
    found = []
    ticker = 0
    for k in range(len(ordered) + 1):
        for combo in combinations(ordered, k):
            ticker += 1
            if ticker % 256 == 0:
                deadline.check(partial=found)
            candidate = frozenset(combo)
            if any(prior < candidate for prior in found):
                continue
            if valid(candidate):
                found.append(candidate)
    return found


def enumerate_maximal(universe, valid, deadline=NO_DEADLINE) -> list:
    """All subset-maximal valid sets of a downward-closed ``valid``."""
    ordered = sorted(universe)
    found = []
    ticker = 0
    for k in range(len(ordered), -1, -1):
        for combo in combinations(ordered, k):
            ticker += 1
            if ticker % 256 == 0:
                deadline.check(partial=found)
            candidate = frozenset(combo)
            if any(candidate < prior for prior in found):
                continue
            if valid(candidate):
                found.append(candidate)
    return found
