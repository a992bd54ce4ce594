import json

import joblib
import numpy as np
import pytest
from sklearn.ensemble import GradientBoostingClassifier, RandomForestClassifier
from sklearn.tree import DecisionTreeClassifier

from treelogic import load_model, make_instance, predict
from treelogic_adapter import (AdapterError, convert, convert_boosted, convert_forest,
                               convert_model, convert_tree, parity_rate, random_probes)
from treelogic_adapter.cli import main as convert_cli

RNG = np.random.default_rng(17)


def toy_data(n=400, n_features=3, balanced=False):
    X = RNG.uniform(0, 10, size=(n, n_features))
    if balanced:
        # exactly half the rows on each side of the x0 boundary
        X[: n // 2, 0] = RNG.uniform(0, 5, size=n // 2)
        X[n // 2:, 0] = RNG.uniform(5.01, 10, size=n - n // 2)
        y = (X[:, 0] > 5).astype(int)
    else:
        y = ((X[:, 0] > 5) ^ (X[:, 1] > 3)).astype(int)
    return X, y


def probes(n_features, n=1000):
    return random_probes(np.random.default_rng(99), n, n_features)


class TestSingleTree:
    def test_depth2_tree_structure_and_parity(self):
        X, y = toy_data()
        clf = DecisionTreeClassifier(max_depth=2, random_state=0).fit(X, y)
        doc = convert_tree(clf)
        assert doc["kind"] == "dt"
        splits = [n for n in doc["trees"][0]["nodes"] if n["type"] == "split"]
        assert len(splits) <= 3
        assert parity_rate(clf, doc, probes(3)) >= 0.999

    def test_deep_tree_exact_parity(self):
        X, y = toy_data()
        clf = DecisionTreeClassifier(random_state=0).fit(X, y)
        doc = convert_tree(clf)
        assert parity_rate(clf, doc, probes(3)) == 1.0


class TestForest:
    def test_three_stumps(self):
        X = RNG.uniform(0, 10, size=(300, 3))
        y = (X[:, 0] > 5).astype(int)  # single-feature rule keeps stump leaves pure
        forest = RandomForestClassifier(n_estimators=3, max_depth=1,
                                        random_state=0).fit(X, y)
        doc = convert_forest(forest)
        assert doc["kind"] == "rf" and len(doc["trees"]) == 3
        assert parity_rate(forest, doc, probes(3)) >= 0.999

    def test_fully_grown_forest(self):
        X, y = toy_data()
        forest = RandomForestClassifier(n_estimators=15, random_state=1).fit(X, y)
        doc = convert_forest(forest)
        assert parity_rate(forest, doc, probes(3)) >= 0.999

    def test_ir_validates_and_votes(self):
        X, y = toy_data()
        forest = RandomForestClassifier(n_estimators=5, random_state=2).fit(X, y)
        model = load_model(json.dumps(convert_forest(forest)))
        row = X[0]
        assert predict(model, make_instance([float(v) for v in row])).label in (0, 1)


class TestBoosted:
    def test_hundred_estimators_depth6(self):
        X, y = toy_data(balanced=True)
        gbm = GradientBoostingClassifier(n_estimators=100, max_depth=6,
                                         random_state=0).fit(X, y)
        doc = convert_boosted(gbm)
        # balanced classes give zero initial log-odds, so no intercept tree
        assert doc["kind"] == "bt" and len(doc["trees"]) == 100
        assert doc["weight_scale"] == 1000
        assert parity_rate(gbm, doc, probes(3)) >= 0.999

    def test_unbalanced_adds_intercept_tree(self):
        X, y = toy_data()
        keep = np.concatenate([np.where(y == 1)[0], np.where(y == 0)[0][:60]])
        X, y = X[keep], y[keep]
        gbm = GradientBoostingClassifier(n_estimators=30, max_depth=3,
                                         random_state=0).fit(X, y)
        doc = convert_boosted(gbm)
        first = doc["trees"][0]["nodes"]
        assert len(first) == 1 and first[0]["weight"] != 0
        assert len(doc["trees"]) == 31
        assert parity_rate(gbm, doc, probes(3)) >= 0.999

    def test_margin_tracks_decision_function(self):
        X, y = toy_data(balanced=True)
        gbm = GradientBoostingClassifier(n_estimators=20, max_depth=3,
                                         random_state=0).fit(X, y)
        doc = convert_boosted(gbm)
        model = load_model(json.dumps(doc))
        for row in probes(3, n=50):
            raw = predict(model, make_instance([float(v) for v in row])).raw_weight
            native = float(gbm.decision_function([row])[0])
            assert abs(raw / 1000 - native) < 0.5 * (len(doc["trees"]) + 1) / 1000


class TestErrors:
    def test_type_mismatch(self):
        X, y = toy_data()
        clf = DecisionTreeClassifier(max_depth=2, random_state=0).fit(X, y)
        with pytest.raises(AdapterError, match="expects a RandomForestClassifier"):
            convert_model(clf, "forest")

    def test_unsupported_type(self):
        with pytest.raises(AdapterError, match="unsupported dump type"):
            convert_model(object(), "svm")

    def test_non_binary_labels(self):
        X = RNG.uniform(0, 10, size=(90, 3))
        y = np.arange(90) % 3
        clf = DecisionTreeClassifier(max_depth=2, random_state=0).fit(X, y)
        with pytest.raises(AdapterError, match="binary classifiers"):
            convert_tree(clf)

    def test_unfitted_model(self):
        with pytest.raises(AdapterError, match="not a fitted classifier"):
            convert_tree(DecisionTreeClassifier())

    def test_unreadable_dump(self, tmp_path):
        path = tmp_path / "broken.joblib"
        path.write_bytes(b"not a pickle")
        with pytest.raises(AdapterError, match="cannot load"):
            convert(str(path), "tree", str(tmp_path / "out.json"))

    def test_probe_width_mismatch(self):
        X, y = toy_data()
        clf = DecisionTreeClassifier(max_depth=2, random_state=0).fit(X, y)
        doc = convert_tree(clf)
        with pytest.raises(ValueError, match="probe width"):
            parity_rate(clf, doc, probes(5))


class TestCli:
    def test_convert_roundtrip(self, tmp_path, capsys):
        X, y = toy_data()
        forest = RandomForestClassifier(n_estimators=4, random_state=3).fit(X, y)
        dump = tmp_path / "forest.joblib"
        joblib.dump(forest, dump)
        out = tmp_path / "forest_ir.json"
        code = convert_cli(["--in", str(dump), "--type", "forest", "--out", str(out)])
        assert code == 0
        assert "kind=rf trees=4" in capsys.readouterr().out
        doc = json.loads(out.read_text())
        assert parity_rate(forest, doc, probes(3)) >= 0.999

    def test_cli_error_exit(self, tmp_path, capsys):
        X, y = toy_data()
        clf = DecisionTreeClassifier(max_depth=2, random_state=0).fit(X, y)
        dump = tmp_path / "tree.joblib"
        joblib.dump(clf, dump)
        code = convert_cli(["--in", str(dump), "--type", "boosted",
                            "--out", str(tmp_path / "x.json")])
        assert code == 1
        assert "expects a GradientBoostingClassifier" in capsys.readouterr().err
