"""Multinomial logistic regression fitted by full-batch gradient descent.

Features are z-scored internally before fitting; zero-variance columns are
scaled to constant zero, so their weights stay at the L2 shrinkage target
of exactly 0.  Descent uses Armijo backtracking from unit step; stops when
the full gradient norm drops below tol or after max_iter sweeps, and the
``converged_`` flag reports which.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_matrix, check_X_y

_ARMIJO_C = 1e-4
_MAX_BACKTRACKS = 50


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class LogisticRegressionGD(ClassifierMixin, BaseEstimator):
    """L2-penalized multinomial logistic regression (penalty excludes the intercept)."""

    def __init__(self, l2: float = 1.0, max_iter: int = 1000, tol: float = 1e-6):
        self.l2 = l2
        self.max_iter = max_iter
        self.tol = tol

    def _loss_grad(self, W, b, Z, onehot):
        n = Z.shape[0]
        P = _softmax(Z @ W.T + b)
        logp = np.log(np.maximum(P[onehot.astype(bool)], 1e-300))
        loss = -logp.sum() / n + 0.5 * self.l2 * np.sum(W * W) / n
        R = (P - onehot) / n
        gW = R.T @ Z + self.l2 * W / n
        gb = R.sum(axis=0)
        return loss, gW, gb

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_ = np.unique(y)
        if self.classes_.size < 2:
            raise ValueError("target has a single class; need at least 2")
        yi = np.searchsorted(self.classes_, y)
        n, f = X.shape
        k = self.classes_.size

        self.mean_ = X.mean(axis=0)
        sd = X.std(axis=0)
        self.scale_ = np.where(sd == 0.0, 1.0, sd)
        Z = (X - self.mean_) / self.scale_
        onehot = np.zeros((n, k))
        onehot[np.arange(n), yi] = 1.0

        W = np.zeros((k, f))
        b = np.zeros(k)
        loss, gW, gb = self._loss_grad(W, b, Z, onehot)
        self.converged_ = False
        self.n_iter_ = 0
        for it in range(self.max_iter):
            gnorm2 = float(np.sum(gW * gW) + np.sum(gb * gb))
            if np.sqrt(gnorm2) < self.tol:
                self.converged_ = True
                break
            step = 1.0
            for _ in range(_MAX_BACKTRACKS):
                W2 = W - step * gW
                b2 = b - step * gb
                loss2, gW2, gb2 = self._loss_grad(W2, b2, Z, onehot)
                if loss2 <= loss - _ARMIJO_C * step * gnorm2:
                    break
                step *= 0.5
            W, b, loss, gW, gb = W2, b2, loss2, gW2, gb2
            self.n_iter_ = it + 1

        self.coef_ = W
        self.intercept_ = b
        self.n_features_in_ = f
        return self

    def decision_function(self, X) -> np.ndarray:
        X = check_matrix(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        Z = (X - self.mean_) / self.scale_
        return Z @ self.coef_.T + self.intercept_

    def predict_proba(self, X) -> np.ndarray:
        return _softmax(self.decision_function(X))

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]


def train_logreg(features, target) -> LogisticRegressionGD:
    """Fit the linear classifier with its default hyperparameters."""
    return LogisticRegressionGD().fit(features, target)
