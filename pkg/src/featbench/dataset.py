"""Tabular dataset snapshots with class remapping and feature lineage.

A :class:`Dataset` is an immutable snapshot of numeric feature columns plus a
class target.  Every mutating operation (adding an engineered column, toggling
a feature's active flag) returns a new snapshot; column arrays are shared
between snapshots, so holding onto an old snapshot is cheap and safe.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

ORIGINAL = "original"
TRANSFORMED = "transformed"
GENERATED = "generated"

_KINDS = (ORIGINAL, TRANSFORMED, GENERATED)


class DatasetError(ValueError):
    """Raised when a dataset operation violates its contract."""


@dataclass(frozen=True)
class FeatureDescriptor:
    """Identity and provenance of one feature column.

    ``lineage`` is empty for originals, ``(source_name, transform_id)`` for
    transformed columns, and ``(source_names, operator_symbols)`` for generated
    columns (operators applied left to right).
    """

    name: str
    kind: str = ORIGINAL
    lineage: tuple = ()
    active: bool = True

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DatasetError(f"unknown feature kind {self.kind!r}")


@dataclass(frozen=True)
class ClassRemap:
    """Total mapping from raw target labels (as read from file) to class names."""

    mapping: Mapping[str, str]

    def class_names(self) -> tuple[str, ...]:
        # Order of first appearance in the mapping.
        seen: dict[str, None] = {}
        for v in self.mapping.values():
            seen.setdefault(str(v))
        return tuple(seen)

    def apply(self, raw: str) -> str:
        key = raw.strip()
        if key not in self.mapping:
            raise DatasetError(f"target label {raw!r} is not covered by the class remap")
        return str(self.mapping[key])


@dataclass(frozen=True)
class ActiveView:
    """Materialized projection of the active columns, in insertion order."""

    X: np.ndarray
    y: np.ndarray
    feature_names: tuple[str, ...]
    class_names: tuple[str, ...]

    @property
    def n_rows(self) -> int:
        return int(self.X.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.X.shape[1])

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.y, minlength=len(self.class_names))


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Dataset:
    """Immutable snapshot: feature columns, descriptors, target, class names."""

    columns: tuple[np.ndarray, ...]
    descriptors: tuple[FeatureDescriptor, ...]
    target: np.ndarray
    class_names: tuple[str, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {d.name: i for i, d in enumerate(self.descriptors)})
        if len(self._index) != len(self.descriptors):
            raise DatasetError("feature names must be unique")
        n = self.n_rows
        for d, col in zip(self.descriptors, self.columns):
            if col.shape != (n,):
                raise DatasetError(f"column {d.name!r} has length {col.shape[0]}, expected {n}")
        if len(self.class_names) < 2:
            raise DatasetError("a dataset needs at least 2 classes")
        if self.target.size and (self.target.min() < 0 or self.target.max() >= len(self.class_names)):
            raise DatasetError("target contains a class index out of range")

    # -- introspection -------------------------------------------------

    @property
    def n_rows(self) -> int:
        return int(self.target.shape[0])

    @property
    def n_features(self) -> int:
        return len(self.descriptors)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.descriptors)

    @property
    def active_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.descriptors if d.active)

    def descriptor(self, name: str) -> FeatureDescriptor:
        try:
            return self.descriptors[self._index[name]]
        except KeyError:
            raise DatasetError(f"unknown feature {name!r}") from None

    def column(self, name: str) -> np.ndarray:
        return self.columns[self._index_of(name)]

    def _index_of(self, name: str) -> int:
        if name not in self._index:
            raise DatasetError(f"unknown feature {name!r}")
        return self._index[name]

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.target, minlength=len(self.class_names))

    def active_view(self) -> ActiveView:
        names = self.active_names
        X = np.column_stack([self.column(n) for n in names])
        return ActiveView(X=_freeze(X), y=self.target, feature_names=names, class_names=self.class_names)

    # -- snapshot operations -------------------------------------------

    def add_feature(self, descriptor: FeatureDescriptor, values) -> "Dataset":
        """Return a new snapshot with one extra column.

        The descriptor name must be unused, lineage sources must already
        exist, and every value must be finite.
        """
        if descriptor.name in self._index:
            raise DatasetError(f"feature {descriptor.name!r} already exists")
        for src in _lineage_sources(descriptor):
            if src not in self._index:
                raise DatasetError(f"lineage source {src!r} does not exist")
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.shape != (self.n_rows,):
            raise DatasetError(
                f"column {descriptor.name!r} has length {values.size}, expected {self.n_rows}"
            )
        if not np.all(np.isfinite(values)):
            row = int(np.flatnonzero(~np.isfinite(values))[0])
            raise DatasetError(f"column {descriptor.name!r} has a non-finite value at row {row}")
        return Dataset(
            columns=self.columns + (_freeze(values),),
            descriptors=self.descriptors + (descriptor,),
            target=self.target,
            class_names=self.class_names,
        )

    def set_active(self, name: str, active: bool) -> "Dataset":
        """Return a new snapshot with the feature's active flag set.

        Excluding the last remaining active feature is rejected.
        """
        i = self._index_of(name)
        d = self.descriptors[i]
        if d.active == active:
            return self
        if not active and len(self.active_names) == 1:
            raise DatasetError(f"cannot exclude {name!r}: it is the last active feature")
        descriptors = list(self.descriptors)
        descriptors[i] = replace(d, active=active)
        return Dataset(
            columns=self.columns,
            descriptors=tuple(descriptors),
            target=self.target,
            class_names=self.class_names,
        )


def _lineage_sources(descriptor: FeatureDescriptor) -> tuple[str, ...]:
    if descriptor.kind == TRANSFORMED:
        return (descriptor.lineage[0],)
    if descriptor.kind == GENERATED:
        return tuple(descriptor.lineage[0])
    return ()


def from_arrays(
    X,
    y,
    feature_names: Sequence[str],
    class_names: Sequence[str],
) -> Dataset:
    """Build a snapshot of original features from in-memory arrays."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != len(feature_names):
        raise DatasetError("X must be 2-D with one column per feature name")
    if not np.all(np.isfinite(X)):
        r, c = np.argwhere(~np.isfinite(X))[0]
        raise DatasetError(f"non-finite value at row {r}, column {feature_names[c]!r}")
    y = np.asarray(y, dtype=np.int64).ravel()
    columns = tuple(_freeze(X[:, j].copy()) for j in range(X.shape[1]))
    descriptors = tuple(FeatureDescriptor(name=str(n)) for n in feature_names)
    return Dataset(
        columns=columns,
        descriptors=descriptors,
        target=_freeze(y),
        class_names=tuple(str(c) for c in class_names),
    )


def load_csv(path, target_column: str, remap: Optional[ClassRemap] = None) -> Dataset:
    """Load a comma-separated file into a :class:`Dataset`.

    The file must be UTF-8 with a header row; every non-target cell must
    parse as a finite real with a ``.`` decimal point.  Rows with blank
    cells are rejected.  When ``remap`` is given it must cover every label
    in the target column and every resulting class must be non-empty;
    without it, classes are the sorted unique raw labels.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if target_column not in header:
            raise DatasetError(f"{path}: target column {target_column!r} not found in header")
        t_idx = header.index(target_column)
        feature_names = [h for i, h in enumerate(header) if i != t_idx]
        if len(set(feature_names)) != len(feature_names):
            raise DatasetError(f"{path}: duplicate column names in header")

        raw_labels: list[str] = []
        rows: list[list[float]] = []
        for row_no, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and row[0].strip() == ""):
                continue  # trailing blank line
            if len(row) != len(header):
                raise DatasetError(f"{path}: row {row_no} has {len(row)} cells, expected {len(header)}")
            values = []
            for i, cell in enumerate(row):
                if i == t_idx:
                    if cell.strip() == "":
                        raise DatasetError(f"{path}: blank target at row {row_no}")
                    raw_labels.append(cell.strip())
                    continue
                text = cell.strip()
                if text == "":
                    raise DatasetError(f"{path}: blank cell at row {row_no}, column {header[i]!r}")
                try:
                    v = float(text)
                except ValueError:
                    raise DatasetError(
                        f"{path}: cannot parse {cell!r} at row {row_no}, column {header[i]!r}"
                    ) from None
                if not np.isfinite(v):
                    raise DatasetError(
                        f"{path}: non-finite value at row {row_no}, column {header[i]!r}"
                    )
                values.append(v)
            rows.append(values)

    if not rows:
        raise DatasetError(f"{path}: no data rows")

    if remap is not None:
        class_names = remap.class_names()
        name_to_idx = {c: i for i, c in enumerate(class_names)}
        y = np.array([name_to_idx[remap.apply(lbl)] for lbl in raw_labels], dtype=np.int64)
        counts = np.bincount(y, minlength=len(class_names))
        for c, cnt in zip(class_names, counts):
            if cnt == 0:
                raise DatasetError(f"class {c!r} is empty after remapping")
    else:
        class_names = tuple(_sorted_labels(set(raw_labels)))
        name_to_idx = {c: i for i, c in enumerate(class_names)}
        y = np.array([name_to_idx[lbl] for lbl in raw_labels], dtype=np.int64)
    if len(class_names) < 2:
        raise DatasetError(f"{path}: need at least 2 classes, got {len(class_names)}")

    X = np.array(rows, dtype=np.float64)
    return from_arrays(X, y, feature_names, class_names)


def _sorted_labels(labels: Iterable[str]) -> list[str]:
    labels = list(labels)
    try:
        return sorted(labels, key=lambda s: (float(s), s))
    except ValueError:
        return sorted(labels)
