"""Gradient-descent logistic regression: gradient oracle and sklearn parity."""

import numpy as np
import pytest
from sklearn.linear_model import LogisticRegression

from featbench.linear import LogisticRegressionGD, train_logreg

SEEDS = range(10)


def numeric_grad(fn, arr, eps=1e-6):
    g = np.zeros_like(arr)
    flat = arr.ravel()
    gf = g.ravel()
    for i in range(flat.size):
        old = flat[i]
        flat[i] = old + eps
        hi = fn()
        flat[i] = old - eps
        lo = fn()
        flat[i] = old
        gf[i] = (hi - lo) / (2 * eps)
    return g


class TestGradientOracle:
    def test_loss_grad_matches_finite_differences(self):
        for seed in SEEDS:
            rng = np.random.default_rng(seed)
            n, f, k = 14, 3, 3
            Z = rng.normal(size=(n, f))
            y = rng.integers(0, k, size=n)
            onehot = np.zeros((n, k))
            onehot[np.arange(n), y] = 1.0
            W = rng.normal(scale=0.5, size=(k, f))
            b = rng.normal(scale=0.5, size=k)
            clf = LogisticRegressionGD(l2=0.7)
            loss, gW, gb = clf._loss_grad(W, b, Z, onehot)
            nW = numeric_grad(lambda: clf._loss_grad(W, b, Z, onehot)[0], W)
            nb = numeric_grad(lambda: clf._loss_grad(W, b, Z, onehot)[0], b)
            np.testing.assert_allclose(gW, nW, rtol=1e-5, atol=1e-8)
            np.testing.assert_allclose(gb, nb, rtol=1e-5, atol=1e-8)

    def test_loss_decreases_monotonically_under_armijo(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(60, 3))
        y = (X[:, 0] + X[:, 1] > 0).astype(int)
        # run twice with growing iteration caps; the final loss never increases
        losses = []
        for iters in (5, 20, 80):
            clf = LogisticRegressionGD(max_iter=iters, tol=0.0).fit(X, y)
            Z = (X - clf.mean_) / clf.scale_
            onehot = np.zeros((60, 2))
            onehot[np.arange(60), y] = 1.0
            losses.append(clf._loss_grad(clf.coef_, clf.intercept_, Z, onehot)[0])
        assert losses[0] >= losses[1] >= losses[2]


class TestAgainstSklearn:
    def test_probabilities_match(self):
        # same objective: sum CE + 0.5*||W||^2, i.e. C = 1/l2 = 1 on scaled data
        for seed in SEEDS:
            rng = np.random.default_rng(seed)
            n = 90
            X = rng.normal(size=(n, 4)) * np.array([1.0, 3.0, 0.2, 1.0])
            y = (X @ rng.normal(size=4) + 0.2 * rng.normal(size=n) > 0).astype(int) + (
                X[:, 1] > 2.0
            )
            if np.unique(y).size < 2:
                continue
            mine = LogisticRegressionGD(l2=1.0, max_iter=20000, tol=1e-7).fit(X, y)
            assert mine.converged_
            Z = (X - X.mean(axis=0)) / np.where(X.std(axis=0) == 0, 1, X.std(axis=0))
            ref = LogisticRegression(C=1.0, tol=1e-10, max_iter=6000).fit(Z, y)
            np.testing.assert_allclose(
                mine.predict_proba(X), ref.predict_proba(Z), rtol=1e-4, atol=1e-5
            )

    def test_coefficients_match_on_multiclass(self):
        rng = np.random.default_rng(42)
        X = rng.normal(size=(150, 3))
        y = rng.integers(0, 3, size=150)
        y[X[:, 0] > 0.5] = 0
        y[X[:, 1] > 0.8] = 2
        mine = LogisticRegressionGD(max_iter=30000, tol=1e-7).fit(X, y)
        Z = (X - X.mean(axis=0)) / X.std(axis=0)
        ref = LogisticRegression(C=1.0, tol=1e-12, max_iter=8000).fit(Z, y)
        np.testing.assert_allclose(mine.coef_, ref.coef_, atol=2e-3)
        np.testing.assert_allclose(mine.intercept_, ref.intercept_, atol=2e-3)


class TestBehavior:
    def test_zero_variance_column_gets_zero_weight(self):
        rng = np.random.default_rng(1)
        X = np.column_stack([rng.normal(size=80), np.full(80, 5.0)])
        y = (X[:, 0] > 0).astype(int)
        clf = LogisticRegressionGD().fit(X, y)
        np.testing.assert_array_equal(clf.coef_[:, 1], [0.0, 0.0])

    def test_scaling_invariance_of_predictions(self):
        # z-scoring makes column rescaling a no-op
        rng = np.random.default_rng(2)
        X = rng.normal(size=(70, 3))
        y = rng.integers(0, 2, size=70)
        p1 = LogisticRegressionGD().fit(X, y).predict_proba(X)
        X2 = X * np.array([100.0, 0.01, 1.0])
        p2 = LogisticRegressionGD().fit(X2, y).predict_proba(X2)
        np.testing.assert_allclose(p1, p2, rtol=1e-8, atol=1e-10)

    def test_reports_non_convergence(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(50, 2))
        y = rng.integers(0, 2, size=50)
        clf = LogisticRegressionGD(max_iter=2, tol=1e-12).fit(X, y)
        assert not clf.converged_
        assert clf.n_iter_ == 2

    def test_class_labels_preserved(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(40, 2))
        y = np.array([4, 7])[rng.integers(0, 2, size=40)]
        clf = train_logreg(X, y)
        assert clf.classes_.tolist() == [4, 7]
        assert set(clf.predict(X)) <= {4, 7}

    def test_single_class_rejected(self):
        with pytest.raises(ValueError, match="single class"):
            LogisticRegressionGD().fit(np.zeros((5, 2)), np.zeros(5, dtype=int))

    def test_predict_wrong_width(self):
        rng = np.random.default_rng(5)
        clf = LogisticRegressionGD().fit(rng.normal(size=(30, 2)), np.arange(30) % 2)
        with pytest.raises(ValueError, match="expected 2"):
            clf.predict(np.zeros((3, 5)))
