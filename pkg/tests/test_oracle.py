import pytest

from treelogic import load_model, make_explanation, make_instance, prepare
from treelogic.oracle import (DEFAULT_BOUND, OracleBoundError, oracle_check,
                              oracle_enumerate)
from treelogic.randmodels import grid_forest


class TestCheck:
    def test_example_dt_sufficient_valid_minimal(self, dt_query):
        verdict = oracle_check(dt_query, make_explanation(dt_query, "dt-sufficient", {1, 2}))
        assert verdict.valid and verdict.minimal_or_maximal

    def test_example_dt_sufficient_too_small(self, dt_query):
        verdict = oracle_check(dt_query, make_explanation(dt_query, "dt-sufficient", {1}))
        assert not verdict.valid
        assert "completion" in verdict.witness

    def test_example_dt_sufficient_not_prime(self, dt_query):
        verdict = oracle_check(dt_query, make_explanation(dt_query, "dt-sufficient", {1, 2, 3}))
        assert verdict.valid and not verdict.minimal_or_maximal
        assert verdict.witness == {"removable_literal": 3}

    def test_example_rf_majority_valid(self, rf_query):
        verdict = oracle_check(rf_query, make_explanation(rf_query, "rf-majority", {1, 2, 6}))
        assert verdict.valid and verdict.minimal_or_maximal

    def test_example_rf_sufficient(self, rf_query):
        verdict = oracle_check(rf_query, make_explanation(rf_query, "rf-sufficient", {3, 6}))
        assert verdict.valid and verdict.minimal_or_maximal

    def test_example_rf_contrastive(self, rf_query):
        verdict = oracle_check(rf_query, make_explanation(rf_query, "rf-contrastive", {1, 3}))
        assert verdict.valid and verdict.minimal_or_maximal

    def test_example_bt_tree_specific(self, bt_query):
        verdict = oracle_check(bt_query, make_explanation(bt_query, "bt-tree-specific", {5, 6}))
        assert verdict.valid and verdict.minimal_or_maximal

    def test_bt_subset_invalid(self, bt_query):
        verdict = oracle_check(bt_query, make_explanation(bt_query, "bt-tree-specific", {5}))
        assert not verdict.valid

    def test_kind_model_mismatch(self, dt_query):
        bad = make_explanation(dt_query, "rf-majority", {1})
        with pytest.raises(ValueError, match="not applicable"):
            oracle_check(dt_query, bad)

    def test_bound(self):
        model, instance = grid_forest(seed=1, n_trees=20, depth=6)
        query = prepare(model, instance)
        exp = make_explanation(query, "rf-contrastive", {1})
        with pytest.raises(OracleBoundError):
            oracle_check(query, exp, bound=DEFAULT_BOUND)


class TestEnumerate:
    def test_dt_contrastive(self, dt_query):
        got = oracle_enumerate(dt_query, "dt-contrastive")
        assert got == {frozenset({1}), frozenset({2})}

    def test_dt_sufficient(self, dt_query):
        assert oracle_enumerate(dt_query, "dt-sufficient") == {frozenset({1, 2})}

    def test_single_leaf_sufficient_is_empty_term(self):
        model = load_model('{"kind": "dt", "n_features": 1, "trees": [{"nodes": [{"type": "leaf", "class": 1}]}]}')
        query = prepare(model, make_instance([3]))
        assert oracle_enumerate(query, "dt-sufficient") == {frozenset()}

    def test_rf_contrastive(self, rf_query):
        got = oracle_enumerate(rf_query, "rf-contrastive")
        assert frozenset({1, 3}) in got
        assert got == {frozenset({1, 3}), frozenset({1, 6}), frozenset({2, 3}),
                       frozenset({2, 6}), frozenset({3, 6})}

    def test_rf_majority(self, rf_query):
        got = oracle_enumerate(rf_query, "rf-majority")
        assert got == {frozenset({3, 6}), frozenset({1, 2, 3}), frozenset({1, 2, 6})}
