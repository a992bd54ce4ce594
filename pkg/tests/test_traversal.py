import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treelogic import (ModeMap, class_set, forest_vote_under_flips, free_literals,
                       flipped_literals, predict, prepare, reachable_leaves,
                       tree_class_under_flips, weight_range)
from treelogic.models import ClassLeaf
from treelogic.randmodels import random_model


class TestReachability:
    def test_all_fixed_single_path(self, dt_query):
        q = dt_query
        assert reachable_leaves(q.model, q.table, 0, q.bi) == {2}

    def test_free_literal_opens_both_children(self, dt_query):
        q = dt_query
        assert reachable_leaves(q.model, q.table, 0, q.bi, free_literals({2})) == {2, 3}

    def test_all_free_reaches_all_leaves(self, dt_query):
        q = dt_query
        leaves = {i for i, n in enumerate(q.model.trees[0].nodes) if isinstance(n, ClassLeaf)}
        assert reachable_leaves(q.model, q.table, 0, q.bi, free_literals({1, 2, 3})) == leaves


class TestClassSet:
    def test_fixed(self, dt_query):
        q = dt_query
        assert class_set(q.model, q.table, 0, q.bi) == {1}

    def test_free_produces_both(self, dt_query):
        q = dt_query
        assert class_set(q.model, q.table, 0, q.bi, free_literals({2})) == {0, 1}

    def test_rf_tree3_free_x3le4(self, rf_query):
        # both branches of the freed root end in class-1 leaves
        q = rf_query
        assert class_set(q.model, q.table, 2, q.bi, free_literals({5})) == {1}

    def test_weight_tree_rejected(self, bt_query):
        q = bt_query
        with pytest.raises(TypeError):
            class_set(q.model, q.table, 0, q.bi)


class TestWeightRange:
    def test_all_free(self, bt_query):
        q = bt_query
        got = weight_range(q.model, q.table, 0, q.bi, free_literals({1, 2, 3}))
        assert (got.worst, got.best) == (-500, 600)

    def test_partial_fix(self, bt_query):
        q = bt_query
        got = weight_range(q.model, q.table, 1, q.bi, free_literals({4}))
        assert (got.worst, got.best) == (300, 500)

    def test_all_fixed_degenerate(self, bt_query):
        q = bt_query
        got = weight_range(q.model, q.table, 1, q.bi)
        assert got.worst == got.best == 500

    def test_class_tree_rejected(self, dt_query):
        q = dt_query
        with pytest.raises(TypeError):
            weight_range(q.model, q.table, 0, q.bi)


class TestForestFlips:
    def test_two_flips_change_forest(self, rf_query):
        got = forest_vote_under_flips(rf_query.model, rf_query.table, rf_query.bi, {1, 3})
        assert (got.label, got.disagreeing) == (0, 2)

    def test_identity(self, rf_query):
        got = forest_vote_under_flips(rf_query.model, rf_query.table, rf_query.bi, set())
        assert (got.label, got.disagreeing) == (1, 0)

    def test_single_flip_keeps_majority(self, rf_query):
        got = forest_vote_under_flips(rf_query.model, rf_query.table, rf_query.bi, {1})
        assert (got.label, got.disagreeing) == (1, 1)


class TestModeMap:
    def test_free_and_flipped_disjoint(self):
        with pytest.raises(ValueError):
            ModeMap(free=frozenset({1}), flipped=frozenset({1}))


def _random_query(seed, kind=None):
    model, instance = random_model(seed, kind=kind)
    return prepare(model, instance)


class TestInvariants:
    @given(st.integers(0, 5_000))
    @settings(max_examples=150, deadline=None)
    def test_all_fixed_agrees_with_predict(self, seed):
        q = _random_query(seed)
        if q.model.kind == "bt":
            total = sum(weight_range(q.model, q.table, t, q.bi).worst
                        for t in range(len(q.model.trees)))
            assert total == q.prediction.raw_weight
        else:
            for t in range(len(q.model.trees)):
                assert len(reachable_leaves(q.model, q.table, t, q.bi)) == 1

    @given(st.integers(0, 5_000), st.integers(0, 1 << 12), st.integers(0, 1 << 12))
    @settings(max_examples=150, deadline=None)
    def test_monotonicity_in_freed_set(self, seed, bits_small, bits_extra):
        q = _random_query(seed)
        lits = list(q.table.literal_ids)
        small = frozenset(l for l in lits if bits_small >> (l - 1) & 1)
        large = small | frozenset(l for l in lits if bits_extra >> (l - 1) & 1)
        for t in range(len(q.model.trees)):
            a = reachable_leaves(q.model, q.table, t, q.bi, free_literals(small))
            b = reachable_leaves(q.model, q.table, t, q.bi, free_literals(large))
            assert a <= b
            if q.model.kind == "bt":
                ra = weight_range(q.model, q.table, t, q.bi, free_literals(small))
                rb = weight_range(q.model, q.table, t, q.bi, free_literals(large))
                assert rb.worst <= ra.worst and ra.best <= rb.best

    @given(st.integers(0, 5_000), st.integers(0, 1 << 12))
    @settings(max_examples=150, deadline=None)
    def test_flip_involution(self, seed, bits):
        q = _random_query(seed)
        flips = frozenset(l for l in q.table.literal_ids if bits >> (l - 1) & 1)
        for t in range(len(q.model.trees)):
            once = reachable_leaves(q.model, q.table, t, q.bi, flipped_literals(flips))
            # flipping twice = evaluating the already-flipped instance with the
            # same flips again; rebuild the truth vector to express that
            flipped_truth = tuple(
                1 - v if (i + 1) in flips else v for i, v in enumerate(q.bi.truth))
            from treelogic.literals import BoolInstance
            bi2 = BoolInstance(truth=flipped_truth)
            twice = reachable_leaves(q.model, q.table, t, bi2, flipped_literals(flips))
            fixed = reachable_leaves(q.model, q.table, t, q.bi)
            assert twice == fixed
            if q.model.kind != "bt":
                assert tree_class_under_flips(q.model, q.table, t, bi2, flips) == \
                    tree_class_under_flips(q.model, q.table, t, q.bi, frozenset())
            assert once == reachable_leaves(q.model, q.table, t, bi2)
