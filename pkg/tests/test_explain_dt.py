from itertools import product

import pytest

from treelogic import (ContrastiveImpossible, load_model, make_instance, prepare)
from treelogic.explain_dt import dt_contrastive, dt_sufficient
from treelogic.models import Split


def plain_walk(tree, node_lits, assign):
    idx, node = 0, tree.nodes[0]
    while isinstance(node, Split):
        idx = node.left if assign[node_lits[idx]] else node.right
        node = tree.nodes[idx]
    return node.label


def all_completions_classify(query, lits):
    """Brute-force implicant check used to pin expected values."""
    fc = query.prediction.label
    free = sorted(set(query.table.literal_ids) - set(lits))
    node_lits = query.table.node_literals[0]
    for values in product((0, 1), repeat=len(free)):
        assign = {l: query.bi.truth_of(l) for l in query.table.literal_ids}
        assign.update(zip(free, values))
        if plain_walk(query.model.trees[0], node_lits, assign) != fc:
            return False
    return True


def constant_tree_query():
    model = load_model('{"kind": "dt", "n_features": 1, "trees": [{"nodes": ['
                       '{"type": "split", "feature": 0, "op": "le", "threshold": 1, "left": 1, "right": 2},'
                       '{"type": "leaf", "class": 1}, {"type": "leaf", "class": 1}]}]}')
    return prepare(model, make_instance([0]))


class TestSufficient:
    def test_example_example(self, dt_query):
        got = dt_sufficient(dt_query)
        assert got.literals == (1, 2)
        assert got.tests == ("x1 <= 2", "x2 <= 3")

    def test_single_leaf_gives_empty_term(self):
        model = load_model('{"kind": "dt", "n_features": 1, "trees": [{"nodes": [{"type": "leaf", "class": 1}]}]}')
        got = dt_sufficient(prepare(model, make_instance([4])))
        assert got.literals == ()

    def test_enumerate_matches_exhaustive_scan(self, dt_query):
        got = {e.literal_set for e in dt_sufficient(dt_query, enumerate_all=True)}
        # expected set computed by scanning all 2^3 subsets with the
        # completion-based implicant check plus a per-literal primality check
        lits = list(dt_query.table.literal_ids)
        expected = set()
        for bits in range(1 << len(lits)):
            cand = frozenset(l for l in lits if bits >> (l - 1) & 1)
            if all_completions_classify(dt_query, cand) and \
               not any(all_completions_classify(dt_query, cand - {l}) for l in cand):
                expected.add(cand)
        assert got == expected == {frozenset({1, 2})}

    def test_result_is_implicant_and_prime(self, dt_query):
        got = dt_sufficient(dt_query)
        assert all_completions_classify(dt_query, got.literals)
        for lit in got.literals:
            assert not all_completions_classify(dt_query, set(got.literals) - {lit})


class TestContrastive:
    def test_example_example(self, dt_query):
        got = dt_contrastive(dt_query)
        assert got.literals == (2,)
        assert got.tests == ("x2 <= 3",)

    def test_constant_tree_impossible(self):
        with pytest.raises(ContrastiveImpossible):
            dt_contrastive(constant_tree_query())

    def test_enumerate_matches_exhaustive_scan(self, dt_query):
        got = {e.literal_set for e in dt_contrastive(dt_query, enumerate_all=True)}
        lits = list(dt_query.table.literal_ids)

        def not_implicant_after_removal(cand):
            return not all_completions_classify(
                dt_query, set(lits) - set(cand))

        expected = set()
        for bits in range(1 << len(lits)):
            cand = frozenset(l for l in lits if bits >> (l - 1) & 1)
            if not_implicant_after_removal(cand) and \
               not any(not_implicant_after_removal(cand - {l}) for l in cand):
                expected.add(cand)
        assert got == expected == {frozenset({1}), frozenset({2})}

    def test_minimality_witness(self, dt_query):
        got = dt_contrastive(dt_query)
        assert got.literals == (2,)
        # freeing literal 2 really breaks implicanthood of the rest ...
        assert not all_completions_classify(dt_query, {1, 3})
        # ... while freeing nothing leaves the full instance term, an implicant
        assert all_completions_classify(dt_query, {1, 2, 3})


class TestDuality:
    def test_every_contrastive_hits_every_sufficient(self):
        # hitting-set duality between the two families, on small random trees
        from treelogic import oracle_enumerate, prepare
        from treelogic.randmodels import random_model
        pairs_checked = 0
        for seed in range(90):
            model, instance = random_model(seed, kind="dt")
            query = prepare(model, instance)
            sufficient = oracle_enumerate(query, "dt-sufficient")
            contrastive = oracle_enumerate(query, "dt-contrastive")
            for c in contrastive:
                for e in sufficient:
                    assert c & e, (seed, sorted(c), sorted(e))
                    pairs_checked += 1
        assert pairs_checked > 100
