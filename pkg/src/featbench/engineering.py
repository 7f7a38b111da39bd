"""Feature transformation catalog and arithmetic feature generation.

Transforms are per-column mathematical functions organized in six categories
(logarithmic, exponential, power, root, reciprocal, scaling).  Each transform
declares its applicability as data (bounds on the column) so the catalog can
be serialized, filtered per session, and amended without touching code.
Generated features combine 2 or 3 columns with ``+ − × /`` left to right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .dataset import Dataset, FeatureDescriptor, GENERATED, TRANSFORMED

PLUS, MINUS, TIMES, DIVIDE = "+", "−", "×", "/"
OPERATORS = (PLUS, TIMES, MINUS, DIVIDE)


class TransformError(ValueError):
    """Raised when a transform is inapplicable or a candidate is invalid."""


def _boxcox_curve(x: np.ndarray, lam: float) -> np.ndarray:
    if abs(lam) < 1e-12:
        return np.log(x)
    return (np.power(x, lam) - 1.0) / lam


def fit_boxcox_lambda(x: np.ndarray) -> float:
    """Pick the Box-Cox exponent by profile log-likelihood over a fixed grid.

    Grid is -2.0 to 2.0 in steps of 0.1; the first grid point attaining the
    maximum wins, which keeps the fit deterministic.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    log_sum = float(np.sum(np.log(x)))
    best_lam = -2.0
    best_ll = -np.inf
    for lam in np.linspace(-2.0, 2.0, 41):
        y = _boxcox_curve(x, lam)
        if not np.all(np.isfinite(y)):
            continue
        var = float(np.var(y))
        ll = -0.5 * n * np.log(max(var, 1e-300)) + (lam - 1.0) * log_sum
        if ll > best_ll:
            best_ll = ll
            best_lam = float(lam)
    return best_lam


def _boxcox(x: np.ndarray) -> np.ndarray:
    return _boxcox_curve(x, fit_boxcox_lambda(x))


def _zscore(x: np.ndarray) -> np.ndarray:
    return (x - x.mean()) / x.std()


def _minmax(x: np.ndarray) -> np.ndarray:
    span = x.max() - x.min()
    if span == 0.0:
        return np.zeros_like(x)
    return (x - x.min()) / span


@dataclass(frozen=True)
class Transform:
    """One catalog entry: a suffix id, its category, and applicability bounds."""

    id: str
    category: str
    fn: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    min_gt: Optional[float] = None
    min_ge: Optional[float] = None
    max_le: Optional[float] = None
    forbid_zero: bool = False
    require_variance: bool = False

    def why_inapplicable(self, x: np.ndarray) -> Optional[str]:
        """Return the violated predicate as text, or None when applicable."""
        if self.min_gt is not None and x.min() <= self.min_gt:
            return f"requires all values > {self.min_gt:g}"
        if self.min_ge is not None and x.min() < self.min_ge:
            return f"requires all values >= {self.min_ge:g}"
        if self.max_le is not None and x.max() > self.max_le:
            return f"requires all values <= {self.max_le:g}"
        if self.forbid_zero and np.any(x == 0.0):
            return "requires no zero values"
        if self.require_variance and x.max() == x.min():
            return "requires nonzero variance"
        # probe deliberately, overflow here just means "not applicable"
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            y = self.fn(x)
        if not np.all(np.isfinite(y)):
            return "produces non-finite values on this column"
        return None

    def describe(self) -> dict:
        out = {"id": self.id, "category": self.category}
        for key in ("min_gt", "min_ge", "max_le"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.forbid_zero:
            out["forbid_zero"] = True
        if self.require_variance:
            out["require_variance"] = True
        return out


CATALOG: tuple[Transform, ...] = (
    Transform("l2", "logarithmic", np.log2, min_gt=0.0),
    Transform("l10", "logarithmic", np.log10, min_gt=0.0),
    Transform("l1p", "logarithmic", np.log1p, min_gt=-1.0),
    Transform("e", "exponential", np.exp, max_le=30.0),
    Transform("p2", "power", lambda x: np.power(x, 2)),
    Transform("p3", "power", lambda x: np.power(x, 3)),
    Transform("p4", "power", lambda x: np.power(x, 4)),
    Transform("r2", "root", np.sqrt, min_ge=0.0),
    Transform("r3", "root", np.cbrt),
    Transform("i", "reciprocal", lambda x: 1.0 / x, forbid_zero=True),
    Transform("z", "scaling", _zscore, require_variance=True),
    Transform("m", "scaling", _minmax),
    Transform("b", "scaling", _boxcox, min_gt=0.0),
)

_BY_ID = {t.id: t for t in CATALOG}

MONOTONE_IDS = ("l2", "l10", "l1p", "e", "r2", "r3", "p3", "b")


def registry(enabled: Optional[Sequence[str]] = None) -> tuple[Transform, ...]:
    """The transform catalog, optionally restricted to a subset of ids."""
    if enabled is None:
        return CATALOG
    unknown = [t for t in enabled if t not in _BY_ID]
    if unknown:
        raise TransformError(f"unknown transform ids {unknown}")
    return tuple(t for t in CATALOG if t.id in set(enabled))


def get_transform(transform_id: str) -> Transform:
    if transform_id not in _BY_ID:
        raise TransformError(f"unknown transform {transform_id!r}")
    return _BY_ID[transform_id]


def list_transforms(column, catalog: Optional[Sequence[Transform]] = None) -> list[Transform]:
    """Transforms applicable to this column, in catalog order."""
    x = np.asarray(column, dtype=np.float64)
    return [t for t in (catalog or CATALOG) if t.why_inapplicable(x) is None]


def transform_values(column, transform_id: str) -> np.ndarray:
    """Apply one transform to a column, rejecting inapplicable ones."""
    t = get_transform(transform_id)
    x = np.asarray(column, dtype=np.float64)
    reason = t.why_inapplicable(x)
    if reason is not None:
        raise TransformError(f"transform {transform_id!r} is inapplicable: {reason}")
    return t.fn(x)


def apply_transform(ds: Dataset, name: str, transform_id: str) -> Dataset:
    """Add ``<name>_<id>`` as an active column and retire its source.

    The transformed variant replaces the source in the working set: the new
    column starts active and the source's active flag is turned off.
    """
    values = transform_values(ds.column(name), transform_id)
    new_name = f"{name}_{transform_id}"
    descriptor = FeatureDescriptor(
        name=new_name, kind=TRANSFORMED, lineage=(name, transform_id), active=True
    )
    ds = ds.add_feature(descriptor, values)
    return ds.set_active(name, False)


@dataclass(frozen=True)
class GenerationCandidate:
    """One arithmetic combination of 2 or 3 source columns."""

    sources: tuple[str, ...]
    operators: tuple[str, ...]
    name: str
    values: Optional[np.ndarray] = field(default=None, compare=False)
    valid: bool = True
    reason: str = ""


def _combine(columns: Sequence[np.ndarray], operators: Sequence[str]) -> np.ndarray:
    acc = columns[0].astype(np.float64, copy=True)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for op, col in zip(operators, columns[1:]):
            if op == PLUS:
                acc = acc + col
            elif op == MINUS:
                acc = acc - col
            elif op == TIMES:
                acc = acc * col
            elif op == DIVIDE:
                acc = acc / col
            else:
                raise TransformError(f"unknown operator {op!r}")
    return acc


def candidate_name(sources: Sequence[str], operators: Sequence[str]) -> str:
    parts = [sources[0]]
    for op, src in zip(operators, sources[1:]):
        parts.append(op)
        parts.append(src)
    return "".join(parts)


def _make_candidate(ds: Dataset, sources: tuple[str, ...], ops: tuple[str, ...]) -> GenerationCandidate:
    values = _combine([ds.column(s) for s in sources], ops)
    name = candidate_name(sources, ops)
    if not np.all(np.isfinite(values)):
        return GenerationCandidate(
            sources=sources, operators=ops, name=name, values=None,
            valid=False, reason="combination produced a non-finite value",
        )
    return GenerationCandidate(sources=sources, operators=ops, name=name, values=values)


def generate_candidates(ds: Dataset, selected: Sequence[str]) -> list[GenerationCandidate]:
    """All arithmetic combinations of the 2 or 3 selected features.

    Two features A, B give exactly six entries (A+B, A×B, A−B, B−A, A/B,
    B/A), invalid ones flagged rather than dropped.  Three features give
    every permutation times every operator pair evaluated left to right;
    valid duplicates (identical value columns) are removed keeping the
    lexicographically smallest name.
    """
    selected = [str(s) for s in selected]
    if len(selected) not in (2, 3):
        raise TransformError(f"select 2 or 3 features to generate from, got {len(selected)}")
    if len(set(selected)) != len(selected):
        raise TransformError("selected features must be distinct")
    for s in selected:
        ds.column(s)  # raises on unknown names

    if len(selected) == 2:
        a, b = selected
        combos = [
            ((a, b), (PLUS,)),
            ((a, b), (TIMES,)),
            ((a, b), (MINUS,)),
            ((b, a), (MINUS,)),
            ((a, b), (DIVIDE,)),
            ((b, a), (DIVIDE,)),
        ]
        return [_make_candidate(ds, srcs, ops) for srcs, ops in combos]

    candidates = []
    for perm in itertools.permutations(selected):
        for ops in itertools.product(OPERATORS, repeat=2):
            candidates.append(_make_candidate(ds, perm, ops))
    return _dedupe_by_values(candidates)


def _dedupe_by_values(candidates: list[GenerationCandidate]) -> list[GenerationCandidate]:
    # Among valid candidates with bit-identical value columns, keep the one
    # with the lexicographically smallest name; invalid entries stay flagged.
    kept: dict[int, GenerationCandidate] = {}
    groups: list[np.ndarray] = []
    order: dict[int, int] = {}
    result: list[GenerationCandidate] = []
    for idx, cand in enumerate(candidates):
        if not cand.valid:
            result.append(cand)
            continue
        match = None
        for gi, ref in enumerate(groups):
            if np.array_equal(ref, cand.values):
                match = gi
                break
        if match is None:
            groups.append(cand.values)
            gi = len(groups) - 1
            kept[gi] = cand
            order[gi] = len(result)
            result.append(cand)
        elif cand.name < kept[match].name:
            kept[match] = cand
            result[order[match]] = cand
    return result


def adopt_candidate(ds: Dataset, candidate: GenerationCandidate) -> Dataset:
    """Add a valid candidate as an active generated column; sources stay active."""
    if not candidate.valid:
        raise TransformError(f"candidate {candidate.name!r} is invalid: {candidate.reason}")
    descriptor = FeatureDescriptor(
        name=candidate.name,
        kind=GENERATED,
        lineage=(candidate.sources, candidate.operators),
        active=True,
    )
    return ds.add_feature(descriptor, candidate.values)


def replay_column(ds: Dataset, descriptor: FeatureDescriptor) -> np.ndarray:
    """Recompute an engineered column from its lineage sources."""
    if descriptor.kind == TRANSFORMED:
        source, transform_id = descriptor.lineage
        return transform_values(ds.column(source), transform_id)
    if descriptor.kind == GENERATED:
        sources, ops = descriptor.lineage
        values = _combine([ds.column(s) for s in sources], tuple(ops))
        if not np.all(np.isfinite(values)):
            raise TransformError(f"replaying {descriptor.name!r} produced non-finite values")
        return values
    raise TransformError(f"{descriptor.name!r} is an original column, nothing to replay")
