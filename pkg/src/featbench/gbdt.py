"""Native gradient-boosted decision trees with a softmax objective.

One regression tree per class per boosting round, exact greedy splits on
presorted feature values, shrinkage, and row/column subsampling.  No other
regularization.  A split threshold is the largest left-side value, so
routing is the exact comparison ``x <= threshold`` with no midpoint
rounding.

Trees grow level-wise inside a numba kernel over per-feature working
arrays kept in node-segment order (node-major, value-ascending within each
node).  Each level scans every segment contiguously and then stably
partitions the arrays into the child segments, so the hot loops never
chase per-row node assignments.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from sklearn.base import BaseEstimator, ClassifierMixin

from ._validation import check_matrix, check_X_y

_EPS = 1e-12
_MIN_GAIN = 1e-12


@njit(cache=True)
def _build_tree(sorted_values, sorted_rows, in_sample, cols, grad, hess, max_depth, importance):
    # sorted_values/sorted_rows are (n_features, n_rows) with each feature's
    # values ascending over the full training set; the kernel works on the
    # subsampled rows only.
    n_rows = in_sample.shape[0]
    k_cols = cols.shape[0]

    n_in = 0
    for i in range(n_rows):
        if in_sample[i]:
            n_in += 1

    cap = 2 * n_in + 1
    by_depth = 2 ** (max_depth + 1) - 1
    if by_depth < cap:
        cap = by_depth
    feat = np.full(cap, -1, np.int64)
    thr = np.zeros(cap)
    value = np.zeros(cap)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)

    idx_a = np.empty((k_cols, n_in), np.int64)
    val_a = np.empty((k_cols, n_in))
    g_a = np.empty((k_cols, n_in))
    h_a = np.empty((k_cols, n_in))
    idx_b = np.empty((k_cols, n_in), np.int64)
    val_b = np.empty((k_cols, n_in))
    g_b = np.empty((k_cols, n_in))
    h_b = np.empty((k_cols, n_in))

    for ci in range(k_cols):
        f = cols[ci]
        p = 0
        for pos in range(n_rows):
            i = sorted_rows[f, pos]
            if in_sample[i]:
                idx_a[ci, p] = i
                val_a[ci, p] = sorted_values[f, pos]
                g_a[ci, p] = grad[i]
                h_a[ci, p] = hess[i]
                p += 1

    seg = np.empty(cap + 1, np.int64)
    seg[0] = 0
    seg[1] = n_in
    n_nodes = 1
    level_start = 0
    go_left = np.zeros(n_rows, np.uint8)

    for depth in range(max_depth + 1):
        width = n_nodes - level_start
        if width == 0:
            break
        grow = depth < max_depth

        G = np.empty(width)
        H = np.empty(width)
        for s in range(width):
            gs = 0.0
            hs = 0.0
            for pos in range(seg[s], seg[s + 1]):
                gs += g_a[0, pos]
                hs += h_a[0, pos]
            G[s] = gs
            H[s] = hs

        best_gain = np.full(width, _MIN_GAIN)
        best_ci = np.full(width, -1, np.int64)
        best_thr = np.zeros(width)

        if grow:
            for ci in range(k_cols):
                for s in range(width):
                    a = seg[s]
                    b = seg[s + 1]
                    if b - a < 2:
                        continue
                    parent = G[s] * G[s] / (H[s] + _EPS)
                    gl = g_a[ci, a]
                    hl = h_a[ci, a]
                    last = val_a[ci, a]
                    for pos in range(a + 1, b):
                        v = val_a[ci, pos]
                        if v != last:
                            gr = G[s] - gl
                            hr = H[s] - hl
                            gain = 0.5 * (
                                gl * gl / (hl + _EPS) + gr * gr / (hr + _EPS) - parent
                            )
                            if gain > best_gain[s]:
                                best_gain[s] = gain
                                best_ci[s] = ci
                                best_thr[s] = last
                            last = v
                        gl += g_a[ci, pos]
                        hl += h_a[ci, pos]

        for s in range(width):
            nd = level_start + s
            if grow and best_ci[s] >= 0 and n_nodes + 2 <= cap:
                feat[nd] = cols[best_ci[s]]
                thr[nd] = best_thr[s]
                left[nd] = n_nodes
                right[nd] = n_nodes + 1
                n_nodes += 2
                importance[cols[best_ci[s]]] += best_gain[s]
            else:
                best_ci[s] = -1
                value[nd] = -G[s] / (H[s] + _EPS)

        # mark sides along the split feature, count left-child rows
        nl_count = np.zeros(width, np.int64)
        for s in range(width):
            ci = best_ci[s]
            if ci < 0:
                continue
            t = best_thr[s]
            cnt = 0
            for pos in range(seg[s], seg[s + 1]):
                if val_a[ci, pos] <= t:
                    go_left[idx_a[ci, pos]] = 1
                    cnt += 1
                else:
                    go_left[idx_a[ci, pos]] = 0
            nl_count[s] = cnt

        new_seg = np.empty(cap + 1, np.int64)
        new_seg[0] = 0
        w2 = 0
        for s in range(width):
            if best_ci[s] < 0:
                continue
            size = seg[s + 1] - seg[s]
            new_seg[w2 + 1] = new_seg[w2] + nl_count[s]
            new_seg[w2 + 2] = new_seg[w2] + size
            w2 += 2

        # stable partition of every per-feature array into child segments;
        # rows of finalized leaves drop out here
        for ci in range(k_cols):
            w2i = 0
            for s in range(width):
                if best_ci[s] < 0:
                    continue
                lp = new_seg[w2i]
                rp = new_seg[w2i + 1]
                for pos in range(seg[s], seg[s + 1]):
                    i = idx_a[ci, pos]
                    if go_left[i] == 1:
                        idx_b[ci, lp] = i
                        val_b[ci, lp] = val_a[ci, pos]
                        g_b[ci, lp] = g_a[ci, pos]
                        h_b[ci, lp] = h_a[ci, pos]
                        lp += 1
                    else:
                        idx_b[ci, rp] = i
                        val_b[ci, rp] = val_a[ci, pos]
                        g_b[ci, rp] = g_a[ci, pos]
                        h_b[ci, rp] = h_a[ci, pos]
                        rp += 1
                w2i += 2

        idx_a, idx_b = idx_b, idx_a
        val_a, val_b = val_b, val_a
        g_a, g_b = g_b, g_a
        h_a, h_b = h_b, h_a
        seg = new_seg
        level_start += width

    return feat[:n_nodes], thr[:n_nodes], value[:n_nodes], left[:n_nodes], right[:n_nodes]


@njit(cache=True)
def _add_tree_margin(X, feat, thr, value, left, right, scale, out):
    for i in range(X.shape[0]):
        nd = 0
        while feat[nd] >= 0:
            if X[i, feat[nd]] <= thr[nd]:
                nd = left[nd]
            else:
                nd = right[nd]
        out[i] += scale * value[nd]


def _softmax(margins: np.ndarray) -> np.ndarray:
    z = margins - margins.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class BoostedTreesClassifier(ClassifierMixin, BaseEstimator):
    """Multi-class GBDT; feature_importances_ is raw total split gain."""

    def __init__(
        self,
        n_trees: int = 100,
        learning_rate: float = 0.1,
        max_depth: int = 6,
        subsample: float = 1.0,
        colsample: float = 1.0,
        random_state: int = 0,
    ):
        self.n_trees = n_trees
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.subsample = subsample
        self.colsample = colsample
        self.random_state = random_state

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be >= 1, got {self.n_trees}")
        if not 1 <= self.max_depth <= 32:
            raise ValueError(f"max_depth must be in [1, 32], got {self.max_depth}")
        if not 0.0 < self.subsample <= 1.0 or not 0.0 < self.colsample <= 1.0:
            raise ValueError("subsample and colsample must be in (0, 1]")
        self.classes_ = np.unique(y)
        if self.classes_.size < 2:
            raise ValueError("target has a single class; need at least 2")
        n, f = X.shape
        k = self.classes_.size
        yi = np.searchsorted(self.classes_, y)
        onehot = np.zeros((n, k))
        onehot[np.arange(n), yi] = 1.0

        sorted_rows = np.ascontiguousarray(np.argsort(X, axis=0, kind="stable").T)
        sorted_values = np.ascontiguousarray(np.take_along_axis(X, sorted_rows.T, axis=0).T)
        rng = np.random.default_rng(self.random_state)
        importance = np.zeros(f)
        margins = np.zeros((n, k))
        trees = []

        n_sub = max(1, int(round(self.subsample * n)))
        n_cols = max(1, int(round(self.colsample * f)))
        for _ in range(self.n_trees):
            proba = _softmax(margins)
            in_sample = np.ones(n, dtype=np.bool_)
            if n_sub < n:
                in_sample[:] = False
                in_sample[rng.permutation(n)[:n_sub]] = True
            round_trees = []
            for c in range(k):
                cols = np.arange(f)
                if n_cols < f:
                    cols = np.sort(rng.permutation(f)[:n_cols])
                g = proba[:, c] - onehot[:, c]
                h = proba[:, c] * (1.0 - proba[:, c])
                tree = _build_tree(
                    sorted_values, sorted_rows, in_sample, cols, g, h, self.max_depth, importance
                )
                _add_tree_margin(X, *tree, self.learning_rate, margins[:, c])
                round_trees.append(tree)
            trees.append(round_trees)

        self.trees_ = trees
        self.n_features_in_ = f
        self.feature_importances_ = importance
        return self

    def decision_function(self, X) -> np.ndarray:
        X = check_matrix(X, "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        k = self.classes_.size
        margins = np.zeros((X.shape[0], k))
        for round_trees in self.trees_:
            for c in range(k):
                _add_tree_margin(X, *round_trees[c], self.learning_rate, margins[:, c])
        return margins

    def predict_proba(self, X) -> np.ndarray:
        return _softmax(self.decision_function(X))

    def predict(self, X) -> np.ndarray:
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]
