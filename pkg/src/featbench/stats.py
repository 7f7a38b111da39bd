"""Per-slice statistical guidance measures.

Target correlation, per-class (point-biserial) correlation, mutual
information against the class variable, variance inflation factors with
their four-state mapping, between-feature correlations, and the what-if
impact of candidate transforms on between-feature correlation.

Zero-variance columns never produce NaN: correlations degrade to 0 with a
degeneracy flag so downstream aggregation stays finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from . import engineering
from ._validation import check_column
from .dataset import ActiveView

ANOVA_F_CAP = 1e12

SLICE_NAMES = ("Worst", "Bad", "Good", "Best")
ALL_SLICE = "All"


def pearson_flagged(x, y) -> tuple[float, bool]:
    """Pearson's r plus a flag marking zero-variance (degenerate) input."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("pearson needs at least 2 values")
    xd = x - x.mean()
    yd = y - y.mean()
    sx = np.sqrt(np.dot(xd, xd))
    sy = np.sqrt(np.dot(yd, yd))
    if sx == 0.0 or sy == 0.0:
        return 0.0, True
    r = float(np.dot(xd, yd) / (sx * sy))
    return float(np.clip(r, -1.0, 1.0)), False


def pearson(x, y) -> float:
    return pearson_flagged(x, y)[0]


def per_class_correlation(x, target, c: int) -> float:
    """|Pearson r| between x and the one-vs-rest indicator of class c."""
    target = np.asarray(target)
    if not np.any(target == c):
        raise ValueError(f"class {c} not present in target")
    return abs(pearson(x, (target == c).astype(np.float64)))


def _bin_indices(x: np.ndarray, bins: int) -> np.ndarray:
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.zeros(x.size, dtype=np.int64)
    idx = np.floor((x - lo) / (hi - lo) * bins).astype(np.int64)
    return np.clip(idx, 0, bins - 1)


def mutual_information(x, target, bins: int = 10) -> float:
    """Plug-in MI (nats) between an equal-width-binned column and the target.

    The column is discretized into ``bins`` equal-width bins over its
    observed range; a constant column collapses to a single bin and scores 0.
    """
    x = check_column(x, "x", min_length=2)
    target = np.asarray(target, dtype=np.int64).ravel()
    if target.size != x.size:
        raise ValueError(f"length mismatch: {x.size} vs {target.size}")
    bx = _bin_indices(x, bins)
    n = x.size
    joint = np.zeros((bins, int(target.max()) + 1), dtype=np.float64)
    np.add.at(joint, (bx, target), 1.0)
    joint /= n
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    nz = joint > 0
    denom = np.outer(px, py)
    mi = float(np.sum(joint[nz] * np.log(joint[nz] / denom[nz])))
    return max(mi, 0.0)


def binned_entropy(x, bins: int = 10) -> float:
    """Entropy (nats) of the column under the same equal-width binning."""
    x = check_column(x, "x", min_length=1)
    counts = np.bincount(_bin_indices(x, bins), minlength=bins).astype(np.float64)
    p = counts[counts > 0] / x.size
    return float(-np.sum(p * np.log(p)))


def vif(feature, others) -> float:
    """Variance inflation factor 1/(1-R²) from OLS of the feature on the others.

    With no other features the VIF is 1 by definition; R² within 1e-12 of 1
    maps to +inf (perfect collinearity).
    """
    f = np.asarray(feature, dtype=np.float64).ravel()
    others = np.asarray(others, dtype=np.float64)
    if others.size == 0:
        return 1.0
    if others.ndim == 1:
        others = others.reshape(-1, 1)
    if others.shape[0] != f.size:
        raise ValueError(f"length mismatch: {f.size} vs {others.shape[0]}")
    sst = float(np.sum((f - f.mean()) ** 2))
    if sst == 0.0:
        return 1.0
    design = np.column_stack([np.ones(f.size), others])
    beta, *_ = np.linalg.lstsq(design, f, rcond=None)
    resid = f - design @ beta
    r2 = 1.0 - float(np.dot(resid, resid)) / sst
    if r2 >= 1.0 - 1e-12:
        return float("inf")
    return max(1.0 / (1.0 - r2), 1.0)


def vif_state(value: float) -> str:
    """Map a VIF value onto the severe/high/moderate/low concern states."""
    if value > 10.0:
        return "severe"
    if value > 5.0:
        return "high"
    if value > 2.5:
        return "moderate"
    return "low"


def anova_f(x, target) -> float:
    """One-way ANOVA F statistic of the column grouped by class."""
    x = np.asarray(x, dtype=np.float64).ravel()
    target = np.asarray(target, dtype=np.int64).ravel()
    if target.size != x.size:
        raise ValueError(f"length mismatch: {x.size} vs {target.size}")
    classes = np.unique(target)
    k, n = classes.size, x.size
    if k < 2:
        raise ValueError("ANOVA needs at least 2 classes")
    if n - k < 1:
        raise ValueError("ANOVA needs within-group degrees of freedom >= 1")
    grand = x.mean()
    ssb = 0.0
    ssw = 0.0
    for c in classes:
        g = x[target == c]
        m = g.mean()
        ssb += g.size * (m - grand) ** 2
        ssw += float(np.sum((g - m) ** 2))
    total = ssb + ssw
    if total <= 0.0 or ssb <= total * 1e-12:
        return 0.0
    if ssw <= total * 1e-12:
        return ANOVA_F_CAP
    f_stat = (ssb / (k - 1)) / (ssw / (n - k))
    return float(min(f_stat, ANOVA_F_CAP))


@dataclass(frozen=True)
class TransformImpact:
    """Mean pairwise-|r| change per candidate transform of one feature."""

    deltas: dict = field(default_factory=dict)
    direction: str = "neutral"
    inapplicable: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "deltas": dict(self.deltas),
            "direction": self.direction,
            "inapplicable": list(self.inapplicable),
        }


def transform_impact(
    values,
    transforms: Sequence[engineering.Transform],
    others: Mapping[str, np.ndarray],
) -> TransformImpact:
    """What-if correlation impact of each applicable transform.

    For transform t, the delta is the mean over the other active features g
    of |cor(t(f), g)| - |cor(f, g)|; the direction is the majority sign of
    the per-transform deltas (ties give "neutral").
    """
    x = np.asarray(values, dtype=np.float64).ravel()
    base = {name: abs(pearson(x, g)) for name, g in others.items()}
    deltas: dict[str, float] = {}
    inapplicable: list[str] = []
    for t in transforms:
        if t.why_inapplicable(x) is not None:
            inapplicable.append(t.id)
            continue
        tx = t.fn(x)
        if others:
            diffs = [abs(pearson(tx, g)) - base[name] for name, g in others.items()]
            deltas[t.id] = float(np.mean(diffs))
        else:
            deltas[t.id] = 0.0
    neg = sum(1 for d in deltas.values() if d < 0)
    pos = sum(1 for d in deltas.values() if d > 0)
    direction = "decreases" if neg > pos else "increases" if pos > neg else "neutral"
    return TransformImpact(deltas=deltas, direction=direction, inapplicable=tuple(inapplicable))


@dataclass(frozen=True)
class FeatureStatistics:
    """Guidance measures for one feature within one data-space slice."""

    target_cor: float
    degenerate: bool
    per_class_cor: dict
    mi_target: float
    vif: float
    vif_state: str
    pairwise_cor: dict
    impact: Optional[TransformImpact] = None

    def to_dict(self) -> dict:
        out = {
            "target_cor": self.target_cor,
            "degenerate": self.degenerate,
            "per_class_cor": dict(self.per_class_cor),
            "mi_target": self.mi_target,
            "vif": self.vif if np.isfinite(self.vif) else "inf",
            "vif_state": self.vif_state,
            "pairwise_cor": dict(self.pairwise_cor),
        }
        if self.impact is not None:
            out["transform_impact"] = self.impact.to_dict()
        return out


def _abs_corr_matrix(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """|Pearson| matrix with zero-variance columns mapped to 0 (flagged)."""
    n, k = X.shape
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    degen = sd == 0.0
    safe = np.where(degen, 1.0, sd)
    Z = (X - mu) / safe
    corr = np.abs(Z.T @ Z / n)
    corr[degen, :] = 0.0
    corr[:, degen] = 0.0
    np.clip(corr, 0.0, 1.0, out=corr)
    return corr, degen


def slice_statistics(
    X: np.ndarray,
    y: np.ndarray,
    feature_names: Sequence[str],
    class_names: Sequence[str],
    catalog: Optional[Sequence[engineering.Transform]] = None,
    with_impact: bool = True,
) -> dict:
    """FeatureStatistics for every feature over one set of rows."""
    corr, _ = _abs_corr_matrix(X)
    y_float = y.astype(np.float64)
    result: dict[str, FeatureStatistics] = {}
    catalog = engineering.CATALOG if catalog is None else tuple(catalog)
    for j, name in enumerate(feature_names):
        col = X[:, j]
        r, degen = pearson_flagged(col, y_float)
        per_class = {}
        for c, cname in enumerate(class_names):
            rc, _ = pearson_flagged(col, (y == c).astype(np.float64))
            per_class[cname] = abs(rc)
        others_idx = [i for i in range(X.shape[1]) if i != j]
        v = vif(col, X[:, others_idx]) if others_idx else 1.0
        pairwise = {feature_names[i]: float(corr[j, i]) for i in others_idx}
        impact = None
        if with_impact:
            others = {feature_names[i]: X[:, i] for i in others_idx}
            impact = transform_impact(col, catalog, others)
        result[name] = FeatureStatistics(
            target_cor=abs(r),
            degenerate=degen,
            per_class_cor=per_class,
            mi_target=mutual_information(col, y),
            vif=v,
            vif_state=vif_state(v),
            pairwise_cor=pairwise,
            impact=impact,
        )
    return result


def compute_bundle(
    view: ActiveView,
    assignment: Optional[Sequence[str]] = None,
    catalog: Optional[Sequence[engineering.Transform]] = None,
    with_impact: bool = True,
) -> dict:
    """Per-slice statistics bundle keyed by slice name then feature name.

    ``assignment`` holds one slice name per row; slices with fewer than 2
    rows report None (measures absent, not zero).  The "All" entry is always
    computed over every row.
    """
    bundle: dict[str, Optional[dict]] = {}
    slices: list[tuple[str, np.ndarray]] = [(ALL_SLICE, np.ones(view.n_rows, dtype=bool))]
    if assignment is not None:
        assignment = np.asarray(assignment)
        slices += [(s, assignment == s) for s in SLICE_NAMES]
    for slice_name, mask in slices:
        if int(mask.sum()) < 2:
            bundle[slice_name] = None
            continue
        bundle[slice_name] = slice_statistics(
            view.X[mask],
            view.y[mask],
            view.feature_names,
            view.class_names,
            catalog=catalog,
            with_impact=with_impact,
        )
    return bundle


def feature_graph(stats_for_slice: Mapping[str, FeatureStatistics], min_cor: float = 0.6) -> list:
    """Undirected between-feature correlation edges at or above the threshold.

    Returns (a, b, weight) tuples with a < b, sorted lexicographically.
    """
    edges = []
    for a, st in stats_for_slice.items():
        for b, w in st.pairwise_cor.items():
            if a < b and w >= min_cor:
                edges.append((a, b, float(w)))
    edges.sort(key=lambda e: (e[0], e[1]))
    return edges
