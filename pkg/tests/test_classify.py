"""Splitting, logistic training, confusion metrics, feature-set comparison."""

import numpy as np
import pytest
from sklearn.exceptions import NotFittedError

from qubokit import (
    Dataset,
    EvalReport,
    LogisticClassifier,
    Split,
    compare_feature_sets,
    confusion_metrics,
    evaluate,
    nll_gradient,
    nll_loss,
    sigmoid,
    train_logistic,
    train_test_split,
)
from qubokit.errors import DataError


def numeric_dataset(seed=0, rows=120, cols=4, minority=0.5):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(rows, cols))
    score = X[:, 0] - 0.5 * X[:, 1] + 0.2 * rng.normal(size=rows)
    y = (score > np.quantile(score, 1.0 - minority)).astype(int)
    cols_t = tuple(X[:, i] for i in range(cols))
    names = tuple(f"f{i}" for i in range(cols))
    return Dataset(names, ("numeric",) * cols, cols_t, y)


class TestSplit:
    def test_sizes_follow_ratio(self):
        ds = numeric_dataset()
        split = train_test_split(ds, ratio=0.7, seed=0)
        assert split.train_indices.size == round(0.7 * ds.rows)
        assert split.test_indices.size == ds.rows - split.train_indices.size

    def test_partition_is_exact(self):
        ds = numeric_dataset(seed=1)
        split = train_test_split(ds, ratio=0.6, seed=3)
        merged = np.sort(np.concatenate([split.train_indices, split.test_indices]))
        assert merged.tolist() == list(range(ds.rows))

    def test_stratification_preserves_class_balance(self):
        ds = numeric_dataset(seed=2, rows=400, minority=0.25)
        split = train_test_split(ds, ratio=0.7, seed=0)
        overall = ds.target.mean()
        train_rate = ds.target[split.train_indices].mean()
        test_rate = ds.target[split.test_indices].mean()
        assert abs(train_rate - overall) < 0.02
        assert abs(test_rate - overall) < 0.03

    def test_deterministic_per_seed(self):
        ds = numeric_dataset(seed=3)
        a = train_test_split(ds, seed=9)
        b = train_test_split(ds, seed=9)
        c = train_test_split(ds, seed=10)
        assert a.train_indices.tolist() == b.train_indices.tolist()
        assert a.train_indices.tolist() != c.train_indices.tolist()

    def test_bad_ratio_rejected(self):
        ds = numeric_dataset(seed=4)
        for ratio in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ValueError):
                train_test_split(ds, ratio=ratio)

    def test_degenerate_partition_rejected(self):
        tiny = Dataset(
            ("a",), ("numeric",), (np.array([1.0, 2.0]),), np.array([0, 1])
        )
        with pytest.raises(ValueError, match="empty partition"):
            train_test_split(tiny, ratio=0.01)

    def test_overlapping_indices_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            Split(np.array([0, 1]), np.array([1, 2]), 0.5, 0)


class TestLossAndGradient:
    def test_sigmoid_extremes_are_stable(self):
        z = np.array([-1000.0, 0.0, 1000.0])
        p = sigmoid(z)
        assert p[0] == 0.0 and p[1] == 0.5 and p[2] == 1.0
        assert np.all(np.isfinite(p))

    def test_loss_at_zero_weights(self):
        X = np.zeros((4, 2))
        y = np.array([0.0, 1.0, 0.0, 1.0])
        assert nll_loss(np.zeros(2), 0.0, X, y) == pytest.approx(np.log(2.0))

    def test_l2_term_excludes_bias(self):
        X = np.zeros((2, 2))
        y = np.array([0.0, 1.0])
        w = np.array([3.0, 4.0])
        no_reg = nll_loss(w, 7.0, X, y, l2=0.0)
        reg = nll_loss(w, 7.0, X, y, l2=0.1)
        assert reg - no_reg == pytest.approx(0.5 * 0.1 * 25.0)

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(71)
        for _ in range(10):
            n, d = int(rng.integers(5, 30)), int(rng.integers(1, 6))
            X = rng.normal(size=(n, d))
            y = rng.integers(0, 2, n).astype(float)
            w = rng.normal(size=d)
            b = float(rng.normal())
            l2 = float(rng.uniform(0, 0.5))
            grad_w, grad_b = nll_gradient(w, b, X, y, l2)
            eps = 1e-6
            for k in range(d):
                shift = np.zeros(d)
                shift[k] = eps
                fd = (nll_loss(w + shift, b, X, y, l2) - nll_loss(w - shift, b, X, y, l2)) / (2 * eps)
                assert grad_w[k] == pytest.approx(fd, rel=1e-5, abs=1e-8)
            fd_b = (nll_loss(w, b + eps, X, y, l2) - nll_loss(w, b - eps, X, y, l2)) / (2 * eps)
            assert grad_b == pytest.approx(fd_b, rel=1e-5, abs=1e-8)


class TestClassifier:
    def test_separable_data_is_learned(self):
        rng = np.random.default_rng(81)
        X = np.vstack([rng.normal(-2.0, 0.4, (40, 2)), rng.normal(2.0, 0.4, (40, 2))])
        y = np.array([0] * 40 + [1] * 40)
        clf = LogisticClassifier().fit(X, y)
        assert np.array_equal(clf.predict(X), y)

    def test_training_reduces_loss(self):
        rng = np.random.default_rng(82)
        X = rng.normal(size=(60, 3))
        y = (X[:, 0] > 0).astype(int)
        clf = LogisticClassifier(n_iterations=200).fit(X, y)
        assert nll_loss(clf.weights_, clf.bias_, X, y.astype(float)) < np.log(2.0)

    def test_deterministic(self):
        rng = np.random.default_rng(83)
        X = rng.normal(size=(50, 2))
        y = (X.sum(axis=1) > 0).astype(int)
        a = LogisticClassifier().fit(X, y)
        b = LogisticClassifier().fit(X, y)
        assert a.weights_.tolist() == b.weights_.tolist()
        assert a.bias_ == b.bias_

    def test_threshold_sends_half_to_class_one(self):
        clf = LogisticClassifier(n_iterations=1)
        clf.weights_ = np.zeros(1)
        clf.bias_ = 0.0
        clf.n_features_in_ = 1
        clf.classes_ = np.array([0, 1])
        assert clf.predict(np.array([[123.0]]))[0] == 1  # p == 0.5 exactly

    def test_predict_proba_sums_to_one(self):
        rng = np.random.default_rng(84)
        X = rng.normal(size=(30, 2))
        y = (X[:, 0] > 0).astype(int)
        proba = LogisticClassifier().fit(X, y).predict_proba(X)
        assert proba.shape == (30, 2)
        assert np.allclose(proba.sum(axis=1), 1.0)

    def test_l2_shrinks_weights(self):
        rng = np.random.default_rng(85)
        X = rng.normal(size=(80, 3))
        y = (X[:, 0] > 0).astype(int)
        free = LogisticClassifier().fit(X, y)
        shrunk = LogisticClassifier(l2=1.0).fit(X, y)
        assert np.linalg.norm(shrunk.weights_) < np.linalg.norm(free.weights_)

    def test_single_class_rejected(self):
        X = np.zeros((5, 2))
        with pytest.raises(DataError, match="single class"):
            LogisticClassifier().fit(X, np.zeros(5, dtype=int))

    def test_bad_hyperparameters_rejected(self):
        X = np.array([[0.0], [1.0]])
        y = np.array([0, 1])
        for clf in (
            LogisticClassifier(learning_rate=0.0),
            LogisticClassifier(n_iterations=0),
            LogisticClassifier(l2=-1.0),
        ):
            with pytest.raises(ValueError):
                clf.fit(X, y)

    def test_not_fitted_and_width_checks(self):
        with pytest.raises(NotFittedError):
            LogisticClassifier().predict(np.zeros((2, 2)))
        rng = np.random.default_rng(86)
        X = rng.normal(size=(20, 3))
        y = (X[:, 0] > 0).astype(int)
        clf = LogisticClassifier().fit(X, y)
        with pytest.raises(ValueError):
            clf.predict(X[:, :2])


class TestConfusionMetrics:
    def test_hand_counted_example(self):
        y_true = np.array([1, 1, 1, 0, 0, 0, 1, 0])
        y_pred = np.array([1, 0, 1, 0, 1, 0, 1, 0])
        confusion, precision, recall, accuracy = confusion_metrics(y_true, y_pred)
        assert confusion.tolist() == [[3, 1], [1, 3]]
        assert precision == pytest.approx(3 / 4)
        assert recall == pytest.approx(3 / 4)
        assert accuracy == pytest.approx(6 / 8)

    def test_zero_denominators_warn_and_report_zero(self):
        y_true = np.array([0, 0, 0])
        y_pred = np.array([0, 0, 0])
        with pytest.warns(UserWarning):
            confusion, precision, recall, accuracy = confusion_metrics(y_true, y_pred)
        assert precision == 0.0 and recall == 0.0
        assert accuracy == 1.0
        assert confusion.tolist() == [[3, 0], [0, 0]]

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            confusion_metrics(np.array([0, 1]), np.array([0, 1, 1]))


class TestPipelineHelpers:
    def test_train_and_evaluate_on_masked_columns(self):
        ds = numeric_dataset(seed=91, rows=200)
        split = train_test_split(ds, ratio=0.7, seed=0)
        mask = np.array([True, True, False, False])
        clf = train_logistic(ds, split, mask)
        assert clf.n_features_in_ == 2
        report = evaluate(clf, ds, split, mask)
        assert isinstance(report, EvalReport)
        assert report.confusion.sum() == split.test_indices.size
        assert 0.5 < report.accuracy <= 1.0  # signal lives in the kept columns

    def test_empty_mask_rejected(self):
        ds = numeric_dataset(seed=92)
        split = train_test_split(ds)
        with pytest.raises(DataError, match="no columns"):
            train_logistic(ds, split, np.zeros(4, dtype=bool))

    def test_wrong_mask_width_rejected(self):
        ds = numeric_dataset(seed=93)
        split = train_test_split(ds)
        with pytest.raises(ValueError):
            train_logistic(ds, split, np.ones(3, dtype=bool))

    def test_eval_report_to_dict(self):
        ds = numeric_dataset(seed=94)
        split = train_test_split(ds)
        mask = np.ones(4, dtype=bool)
        doc = evaluate(train_logistic(ds, split, mask), ds, split, mask).to_dict()
        assert set(doc) == {"feature_mask", "confusion", "precision", "recall", "accuracy"}
        assert doc["feature_mask"] == [1, 1, 1, 1]


class TestFeatureSetComparison:
    def test_deltas_are_relative_to_all_features(self):
        ds = numeric_dataset(seed=95, rows=240)
        split = train_test_split(ds, seed=1)
        masks = [np.array([True, True, False, False]), np.ones(4, dtype=bool)]
        comp = compare_feature_sets(ds, split, masks)
        assert len(comp.reports) == 2
        assert comp.baseline.feature_mask.all()
        for report, delta in zip(comp.reports, comp.deltas):
            assert delta["accuracy"] == pytest.approx(
                report.accuracy - comp.baseline.accuracy
            )
        # a mask equal to the baseline must have exactly zero deltas
        assert comp.deltas[1]["accuracy"] == 0.0
        assert comp.deltas[1]["precision"] == 0.0
        assert comp.deltas[1]["recall"] == 0.0

    def test_to_dict_shape(self):
        ds = numeric_dataset(seed=96)
        split = train_test_split(ds)
        comp = compare_feature_sets(ds, split, [np.array([True, False, True, False])])
        doc = comp.to_dict()
        assert set(doc) == {"baseline", "reports", "deltas"}
        assert len(doc["reports"]) == len(doc["deltas"]) == 1
