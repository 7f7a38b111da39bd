"""Training, stratified cross-validation, and random hyperparameter search.

Per-instance predicted probabilities of the ground-truth class come from
the fold where the instance was held out; reported metric spreads are the
population standard deviation across folds of one configuration.  All
randomness flows from explicit integer seeds so identical inputs rebuild
identical models.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_X_y
from .gbdt import BoostedTreesClassifier

N_TREES_RANGE = (5, 200)
LEARNING_RATE_RANGE = (0.0, 0.3)
MAX_DEPTH_RANGE = (6, 12)
SUBSAMPLE_RANGE = (0.8, 1.0)
COLSAMPLE_RANGE = (0.8, 1.0)


def derive_seed(*parts: int) -> int:
    """Stable well-mixed integer seed from a tuple of integers."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class HyperParams:
    """One GBDT configuration inside the searchable ranges."""

    n_trees: int = 100
    learning_rate: float = 0.1
    max_depth: int = 6
    subsample: float = 1.0
    colsample: float = 1.0

    def __post_init__(self):
        checks = (
            ("n_trees", self.n_trees, N_TREES_RANGE),
            ("learning_rate", self.learning_rate, LEARNING_RATE_RANGE),
            ("max_depth", self.max_depth, MAX_DEPTH_RANGE),
            ("subsample", self.subsample, SUBSAMPLE_RANGE),
            ("colsample", self.colsample, COLSAMPLE_RANGE),
        )
        for name, value, (lo, hi) in checks:
            if not lo <= value <= hi:
                raise ValueError(f"{name}={value} out of range [{lo}, {hi}]")

    def to_dict(self) -> dict:
        return {
            "n_trees": self.n_trees,
            "learning_rate": self.learning_rate,
            "max_depth": self.max_depth,
            "subsample": self.subsample,
            "colsample": self.colsample,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HyperParams":
        return cls(
            n_trees=int(d["n_trees"]),
            learning_rate=float(d["learning_rate"]),
            max_depth=int(d["max_depth"]),
            subsample=float(d["subsample"]),
            colsample=float(d["colsample"]),
        )


@dataclass(frozen=True)
class SearchBudget:
    iterations: int = 25
    folds: int = 8
    rng_seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.folds < 2:
            raise ValueError(f"folds must be >= 2, got {self.folds}")


@dataclass(frozen=True)
class ModelReport:
    """Cross-validated metrics plus held-out ground-truth-class probabilities."""

    accuracy_mean: float
    accuracy_std: float
    wprecision_mean: float
    wprecision_std: float
    wrecall_mean: float
    wrecall_std: float
    probabilities: np.ndarray
    best_params: HyperParams
    fold_accuracy: tuple = ()

    def to_dict(self) -> dict:
        return {
            "accuracy_mean": self.accuracy_mean,
            "accuracy_std": self.accuracy_std,
            "wprecision_mean": self.wprecision_mean,
            "wprecision_std": self.wprecision_std,
            "wrecall_mean": self.wrecall_mean,
            "wrecall_std": self.wrecall_std,
            "probabilities": self.probabilities.tolist(),
            "best_params": self.best_params.to_dict(),
            "fold_accuracy": list(self.fold_accuracy),
        }


@dataclass
class FoldFit:
    """One fitted fold model with the rows it trained on and held out."""

    model: BoostedTreesClassifier
    train_idx: np.ndarray
    test_idx: np.ndarray


@dataclass
class SearchResult:
    best_params: HyperParams
    report: ModelReport
    trials: list = field(default_factory=list)
    best_train_seed: int = 0


def train_gbdt(features, target, params: HyperParams, rng_seed: int) -> BoostedTreesClassifier:
    clf = BoostedTreesClassifier(
        n_trees=params.n_trees,
        learning_rate=params.learning_rate,
        max_depth=params.max_depth,
        subsample=params.subsample,
        colsample=params.colsample,
        random_state=rng_seed,
    )
    return clf.fit(features, target)


def impurity_importance(clf: BoostedTreesClassifier) -> np.ndarray:
    """Total split gain per feature over every tree of the fitted classifier."""
    if not hasattr(clf, "feature_importances_"):
        raise ValueError("classifier is not fitted")
    return np.array(clf.feature_importances_, dtype=np.float64)


def weighted_metrics(y_true, y_pred) -> tuple[float, float, float]:
    """(accuracy, weighted precision, weighted recall).

    Per-class precision and recall are averaged with weights equal to class
    support / n; a class nobody predicted contributes precision 0.
    """
    y_true = np.asarray(y_true).ravel()
    y_pred = np.asarray(y_pred).ravel()
    if y_true.size != y_pred.size:
        raise ValueError(f"length mismatch: {y_true.size} vs {y_pred.size}")
    if y_true.size == 0:
        raise ValueError("empty prediction set")
    n = y_true.size
    accuracy = float(np.mean(y_true == y_pred))
    wprec = 0.0
    wrec = 0.0
    for c in np.unique(y_true):
        support = int(np.sum(y_true == c))
        tp = int(np.sum((y_true == c) & (y_pred == c)))
        predicted = int(np.sum(y_pred == c))
        precision = tp / predicted if predicted else 0.0
        recall = tp / support
        weight = support / n
        wprec += weight * precision
        wrec += weight * recall
    return accuracy, wprec, wrec


def stratified_folds(y, folds: int, rng_seed: int) -> np.ndarray:
    """Per-row fold ids: seeded shuffle within each class, then round-robin."""
    y = np.asarray(y)
    fold_of_row = np.empty(y.size, dtype=np.int64)
    rng = np.random.default_rng(rng_seed)
    for c in np.unique(y):
        idx = np.flatnonzero(y == c)
        if idx.size < folds:
            raise ValueError(
                f"class {c} has {idx.size} instances, fewer than {folds} folds"
            )
        idx = idx[rng.permutation(idx.size)]
        fold_of_row[idx] = np.arange(idx.size) % folds
    return fold_of_row


def cross_validate_detailed(
    X,
    y,
    params: HyperParams,
    budget: SearchBudget,
    train_seed: Optional[int] = None,
    keep_models: bool = False,
) -> tuple[ModelReport, list]:
    """Stratified k-fold evaluation of one configuration.

    Fold membership depends only on budget (rng_seed, folds), so every
    configuration in a search sees the same folds; per-fold training seeds
    derive from train_seed (default: the budget seed).
    """
    X, y = check_X_y(X, y)
    if train_seed is None:
        train_seed = budget.rng_seed
    fold_of_row = stratified_folds(y, budget.folds, budget.rng_seed)
    probabilities = np.empty(X.shape[0])
    per_fold = []
    fits: list[FoldFit] = []
    for fold in range(budget.folds):
        test_idx = np.flatnonzero(fold_of_row == fold)
        train_idx = np.flatnonzero(fold_of_row != fold)
        clf = train_gbdt(X[train_idx], y[train_idx], params, derive_seed(train_seed, fold))
        proba = clf.predict_proba(X[test_idx])
        col = np.searchsorted(clf.classes_, y[test_idx])
        probabilities[test_idx] = proba[np.arange(test_idx.size), col]
        y_pred = clf.classes_[np.argmax(proba, axis=1)]
        per_fold.append(weighted_metrics(y[test_idx], y_pred))
        if keep_models:
            fits.append(FoldFit(model=clf, train_idx=train_idx, test_idx=test_idx))
    per_fold = np.asarray(per_fold)
    report = ModelReport(
        accuracy_mean=float(per_fold[:, 0].mean()),
        accuracy_std=float(per_fold[:, 0].std()),
        wprecision_mean=float(per_fold[:, 1].mean()),
        wprecision_std=float(per_fold[:, 1].std()),
        wrecall_mean=float(per_fold[:, 2].mean()),
        wrecall_std=float(per_fold[:, 2].std()),
        probabilities=probabilities,
        best_params=params,
        fold_accuracy=tuple(float(a) for a in per_fold[:, 0]),
    )
    return report, fits


def cross_validate(X, y, params: HyperParams, budget: SearchBudget, train_seed=None) -> ModelReport:
    report, _ = cross_validate_detailed(X, y, params, budget, train_seed=train_seed)
    return report


def sample_params(rng: np.random.Generator) -> HyperParams:
    """One uniform draw from the hyperparameter ranges."""
    return HyperParams(
        n_trees=int(rng.integers(N_TREES_RANGE[0], N_TREES_RANGE[1] + 1)),
        learning_rate=float(rng.uniform(*LEARNING_RATE_RANGE)),
        max_depth=int(rng.integers(MAX_DEPTH_RANGE[0], MAX_DEPTH_RANGE[1] + 1)),
        subsample=float(rng.uniform(*SUBSAMPLE_RANGE)),
        colsample=float(rng.uniform(*COLSAMPLE_RANGE)),
    )


def search_hyperparams(X, y, budget: SearchBudget, sampling_seed: Optional[int] = None) -> SearchResult:
    """Seeded uniform random search; keeps the first configuration at the best accuracy.

    Fold assignment follows budget.rng_seed regardless of sampling_seed, so
    repeated searches on evolving feature sets stay fold-comparable.
    """
    if sampling_seed is None:
        sampling_seed = budget.rng_seed
    rng = np.random.default_rng(sampling_seed)
    best: Optional[SearchResult] = None
    trials = []
    for i in range(budget.iterations):
        params = sample_params(rng)
        train_seed = derive_seed(sampling_seed, i)
        report = cross_validate(X, y, params, budget, train_seed=train_seed)
        trials.append({"params": params.to_dict(), "accuracy_mean": report.accuracy_mean})
        if best is None or report.accuracy_mean > best.report.accuracy_mean:
            best = SearchResult(
                best_params=params,
                report=report,
                best_train_seed=train_seed,
            )
    best.trials = trials
    return best
