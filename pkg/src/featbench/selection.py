"""Five automatic feature-selection techniques behind the importance table.

univariate ANOVA F, impurity (total split gain), permutation accuracy drop,
single-feature model accuracy, and RFE rank from the linear classifier.
Each technique's raw scores are min-max normalized across features; the
table's Average column is the plain mean of the five normalized scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._validation import check_X_y
from .linear import LogisticRegressionGD
from .model import (
    HyperParams,
    SearchBudget,
    cross_validate_detailed,
    derive_seed,
    impurity_importance,
    weighted_metrics,
)
from .stats import anova_f

TECHNIQUES = ("univariate", "impurity", "permutation", "accuracy", "ranking")

ACCURACY_FI_FOLDS = 3
PERMUTATION_REPEATS = 5


def minmax_normalize(raw) -> np.ndarray:
    """Scale to [0,1]; a constant column maps to all ones."""
    raw = np.asarray(raw, dtype=np.float64)
    lo, hi = raw.min(), raw.max()
    if hi == lo:
        return np.ones_like(raw)
    return (raw - lo) / (hi - lo)


def univariate_fs(X, y) -> np.ndarray:
    """ANOVA F per feature over the full space."""
    X, y = check_X_y(X, y)
    return np.array([anova_f(X[:, j], y) for j in range(X.shape[1])])


def permutation_fi(clf, X_val, y_val, rng_seed: int, repeats: int = PERMUTATION_REPEATS) -> np.ndarray:
    """Mean held-out accuracy drop per shuffled feature, negatives clipped to 0."""
    X_val, y_val = check_X_y(X_val, y_val)
    rng = np.random.default_rng(rng_seed)
    baseline = float(np.mean(clf.predict(X_val) == y_val))
    drops = np.empty(X_val.shape[1])
    for j in range(X_val.shape[1]):
        acc = 0.0
        for _ in range(repeats):
            Xp = X_val.copy()
            Xp[:, j] = Xp[rng.permutation(X_val.shape[0]), j]
            acc += float(np.mean(clf.predict(Xp) == y_val))
        drops[j] = baseline - acc / repeats
    return np.clip(drops, 0.0, None)


def accuracy_fi(X, y, params: HyperParams, rng_seed: int) -> np.ndarray:
    """Stratified 3-fold CV accuracy of the model fit on each feature alone.

    Every feature uses the same folds and training seed, so identical
    columns score identically.
    """
    X, y = check_X_y(X, y)
    budget = SearchBudget(iterations=1, folds=ACCURACY_FI_FOLDS, rng_seed=rng_seed)
    scores = np.empty(X.shape[1])
    for j in range(X.shape[1]):
        report, _ = cross_validate_detailed(X[:, j : j + 1], y, params, budget)
        scores[j] = report.accuracy_mean
    return scores


def ranking_fs(X, y) -> np.ndarray:
    """RFE rank score (n - r + 1)/n from repeated linear fits.

    Each step refits on the surviving features and drops the one whose
    coefficient column has the smallest L2 norm; the survivor ranks 1.
    """
    X, y = check_X_y(X, y)
    n = X.shape[1]
    remaining = list(range(n))
    rank = np.empty(n, dtype=np.int64)
    r = n
    while len(remaining) > 1:
        clf = LogisticRegressionGD().fit(X[:, remaining], y)
        norms = np.linalg.norm(clf.coef_, axis=0)
        drop = int(np.argmin(norms))
        rank[remaining[drop]] = r
        del remaining[drop]
        r -= 1
    rank[remaining[0]] = 1
    return (n - rank + 1) / n


@dataclass(frozen=True)
class ImportanceTable:
    """Per-feature raw + normalized scores for each technique, plus their average."""

    features: tuple
    active: tuple
    raw: dict
    normalized: dict
    average: tuple

    def order(self, by: str = "average") -> list:
        """Feature names sorted descending by one column, insertion order on ties."""
        if by == "average":
            vals = np.asarray(self.average)
        elif by in self.normalized:
            vals = np.asarray(self.normalized[by])
        else:
            raise ValueError(f"unknown sort column {by!r}; expected 'average' or one of {TECHNIQUES}")
        idx = np.argsort(-vals, kind="stable")
        return [self.features[i] for i in idx]

    def average_of(self, name: str) -> float:
        return self.average[self.features.index(name)]

    def to_dict(self) -> dict:
        return {
            "features": list(self.features),
            "active": list(self.active),
            "techniques": {
                t: {"raw": list(self.raw[t]), "normalized": list(self.normalized[t])}
                for t in TECHNIQUES
            },
            "average": list(self.average),
            "order": self.order(),
        }


def build_table(
    X,
    y,
    feature_names: Sequence[str],
    params: HyperParams,
    budget: SearchBudget,
    train_seed: Optional[int] = None,
    fits: Optional[list] = None,
    active: Optional[Sequence[bool]] = None,
    rng_seed: Optional[int] = None,
) -> ImportanceTable:
    """Assemble the averaged importance table over the given feature matrix.

    ``fits`` may carry the cross-validation fold models already trained on
    exactly this matrix; otherwise they are trained here.  Impurity and
    permutation scores are averaged over the fold models, permutation on
    each fold's held-out rows.
    """
    X, y = check_X_y(X, y)
    names = tuple(feature_names)
    if len(names) != X.shape[1]:
        raise ValueError(f"{len(names)} names for {X.shape[1]} columns")
    if active is None:
        active = (True,) * len(names)
    if rng_seed is None:
        rng_seed = budget.rng_seed
    if fits is None:
        _, fits = cross_validate_detailed(
            X, y, params, budget, train_seed=train_seed, keep_models=True
        )

    impurity = np.mean([impurity_importance(f.model) for f in fits], axis=0)
    permutation = np.mean(
        [
            permutation_fi(f.model, X[f.test_idx], y[f.test_idx], derive_seed(rng_seed, i))
            for i, f in enumerate(fits)
        ],
        axis=0,
    )
    raw = {
        "univariate": univariate_fs(X, y),
        "impurity": impurity,
        "permutation": permutation,
        "accuracy": accuracy_fi(X, y, params, rng_seed),
        "ranking": ranking_fs(X, y),
    }
    normalized = {t: minmax_normalize(raw[t]) for t in TECHNIQUES}
    average = np.mean([normalized[t] for t in TECHNIQUES], axis=0)
    return ImportanceTable(
        features=names,
        active=tuple(bool(a) for a in active),
        raw={t: tuple(float(v) for v in raw[t]) for t in TECHNIQUES},
        normalized={t: tuple(float(v) for v in normalized[t]) for t in TECHNIQUES},
        average=tuple(float(v) for v in average),
    )
