"""Action-driven workbench sessions.

A session owns the current dataset snapshot, retrains and re-evaluates
after every Include/Exclude/Transform/Generate action, keeps the combined
metrics history, and applies the subtract-std best-so-far rule.  Failed
actions leave the session exactly as it was; persisted sessions rebuild
themselves by replaying the action log from the raw CSV.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import engineering, jsonio, selection, slicing, stats
from .dataset import ClassRemap, Dataset, DatasetError, load_csv
from .model import (
    FoldFit,
    HyperParams,
    ModelReport,
    SearchBudget,
    cross_validate_detailed,
    derive_seed,
    search_hyperparams,
)

SESSION_FILE_VERSION = 1

ACTION_KINDS = ("Include", "Exclude", "Transform", "Generate")


class SessionError(ValueError):
    pass


@dataclass(frozen=True)
class SessionConfig:
    """Everything needed to rebuild a session from the raw CSV."""

    csv_path: str
    target_column: str
    remap: Optional[dict] = None
    thresholds: tuple = (25.0, 75.0)
    iterations: int = 25
    folds: int = 8
    rng_seed: int = 0
    transforms: Optional[tuple] = None
    freeze_params_after_baseline: bool = False

    def budget(self) -> SearchBudget:
        return SearchBudget(iterations=self.iterations, folds=self.folds, rng_seed=self.rng_seed)

    def class_remap(self) -> Optional[ClassRemap]:
        return ClassRemap(dict(self.remap)) if self.remap else None

    def catalog(self) -> tuple:
        return engineering.registry(self.transforms)

    def to_dict(self) -> dict:
        return {
            "csv": self.csv_path,
            "target": self.target_column,
            "remap": dict(self.remap) if self.remap else None,
            "thresholds": {"low": self.thresholds[0], "high": self.thresholds[1]},
            "budget": {"iterations": self.iterations, "folds": self.folds},
            "seed": self.rng_seed,
            "transforms": list(self.transforms) if self.transforms is not None else None,
            "freeze_params_after_baseline": self.freeze_params_after_baseline,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SessionConfig":
        budget = d.get("budget") or {}
        thresholds = d.get("thresholds") or {}
        transforms = d.get("transforms")
        return cls(
            csv_path=str(d["csv"]),
            target_column=str(d["target"]),
            remap={str(k): str(v) for k, v in d["remap"].items()} if d.get("remap") else None,
            thresholds=(
                float(thresholds.get("low", 25.0)),
                float(thresholds.get("high", 75.0)),
            ),
            iterations=int(budget.get("iterations", 25)),
            folds=int(budget.get("folds", 8)),
            rng_seed=int(d.get("seed", 0)),
            transforms=tuple(str(t) for t in transforms) if transforms is not None else None,
            freeze_params_after_baseline=bool(d.get("freeze_params_after_baseline", False)),
        )

    @classmethod
    def from_file(cls, path) -> "SessionConfig":
        path = Path(path)
        try:
            d = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SessionError(f"config file {path} is not valid JSON: {exc}") from exc
        cfg = cls.from_dict(d)
        csv = Path(cfg.csv_path)
        if not csv.is_absolute():
            # paths in a config file are relative to the file, not the cwd
            cfg = replace(cfg, csv_path=str(path.parent / csv))
        return cfg


def combined_score(report: ModelReport) -> float:
    """Sum over the three validation metrics of (mean - std)."""
    return (
        (report.accuracy_mean - report.accuracy_std)
        + (report.wprecision_mean - report.wprecision_std)
        + (report.wrecall_mean - report.wrecall_std)
    )


@dataclass(frozen=True)
class Action:
    """One logged step; ordinals are 1-based and strictly increasing."""

    ordinal: int
    kind: str
    subject: str
    request: dict
    report: ModelReport
    became_best: bool

    def __post_init__(self):
        if self.kind not in ACTION_KINDS:
            raise SessionError(f"unknown action kind {self.kind!r}; expected one of {ACTION_KINDS}")


@dataclass(frozen=True)
class BestSoFar:
    """Highest combined score seen, with the snapshot that produced it."""

    combined: float
    ordinal: int
    dataset: Dataset
    report: ModelReport
    params: HyperParams


@dataclass
class EvaluatedState:
    report: ModelReport
    params: HyperParams
    train_seed: int
    fits: list = field(default_factory=list)
    trials: list = field(default_factory=list)


def _history_row(ordinal, kind, subject, report, became_best, n_active) -> dict:
    return {
        "ordinal": ordinal,
        "kind": kind,
        "subject": subject,
        "accuracy_mean": report.accuracy_mean,
        "accuracy_std": report.accuracy_std,
        "wprecision_mean": report.wprecision_mean,
        "wprecision_std": report.wprecision_std,
        "wrecall_mean": report.wrecall_mean,
        "wrecall_std": report.wrecall_std,
        "combined": combined_score(report),
        "became_best": became_best,
        "n_active": n_active,
    }


class Session:
    """Mutable workbench state; one mutating action at a time."""

    def __init__(self, dataset: Dataset, config: SessionConfig):
        self.config = config
        self.dataset = dataset
        self.catalog = config.catalog()
        self.budget = config.budget()
        self.thresholds = slicing.set_thresholds(*config.thresholds)
        self.actions: list[Action] = []
        self.metrics_history: list[dict] = []
        self._stats_cache: Optional[dict] = None
        self.pending_candidates: list[engineering.GenerationCandidate] = []

        state = self._evaluate(dataset, ordinal=0)
        self.state = state
        self.table = self._build_table(dataset, state)
        self.partition = slicing.assign_slices(state.report.probabilities, self.thresholds)
        self.best = BestSoFar(
            combined=combined_score(state.report),
            ordinal=0,
            dataset=dataset,
            report=state.report,
            params=state.params,
        )
        self.metrics_history.append(
            _history_row(0, "Baseline", "", state.report, True, len(dataset.active_names))
        )

    @classmethod
    def from_config(cls, config: SessionConfig) -> "Session":
        ds = load_csv(config.csv_path, config.target_column, remap=config.class_remap())
        return cls(ds, config)

    # -- evaluation -------------------------------------------------------

    def _evaluate(self, ds: Dataset, ordinal: int) -> EvaluatedState:
        """Search (or reuse frozen params) and cross-validate one snapshot."""
        view = ds.active_view()
        if ordinal > 0 and self.config.freeze_params_after_baseline:
            params = self.state.params
            train_seed = self.state.train_seed
            trials = []
        else:
            sampling_seed = derive_seed(self.budget.rng_seed, ordinal)
            result = search_hyperparams(view.X, view.y, self.budget, sampling_seed=sampling_seed)
            params = result.best_params
            train_seed = result.best_train_seed
            trials = result.trials
        report, fits = cross_validate_detailed(
            view.X, view.y, params, self.budget, train_seed=train_seed, keep_models=True
        )
        return EvaluatedState(
            report=report, params=params, train_seed=train_seed, fits=fits, trials=trials
        )

    def _build_table(self, ds: Dataset, state: EvaluatedState) -> selection.ImportanceTable:
        view = ds.active_view()
        return selection.build_table(
            view.X,
            view.y,
            view.feature_names,
            state.params,
            self.budget,
            train_seed=state.train_seed,
            fits=state.fits,
        )

    # -- actions ----------------------------------------------------------

    def _mutate(self, request: dict) -> tuple[Dataset, str]:
        kind = request.get("kind")
        ds = self.dataset
        if kind == "Include":
            name = request["feature"]
            if ds.descriptor(name).active:
                raise SessionError(f"feature {name!r} is already active")
            return ds.set_active(name, True), name
        if kind == "Exclude":
            name = request["feature"]
            if not ds.descriptor(name).active:
                raise SessionError(f"feature {name!r} is already excluded")
            return ds.set_active(name, False), name
        if kind == "Transform":
            name = request["feature"]
            tid = request["transform"]
            if engineering.get_transform(tid) not in self.catalog:
                raise SessionError(f"transform {tid!r} is not enabled in this session")
            ds2 = engineering.apply_transform(ds, name, tid)
            return ds2, f"{name}_{tid}"
        if kind == "Generate":
            sources = list(request["sources"])
            target_name = request["adopt"]
            candidates = engineering.generate_candidates(ds, sources)
            for cand in candidates:
                if cand.name == target_name:
                    return engineering.adopt_candidate(ds, cand), cand.name
            valid = [c.name for c in candidates if c.valid]
            raise SessionError(
                f"candidate {target_name!r} not among generated candidates; valid ones: {valid}"
            )
        raise SessionError(f"unknown action kind {kind!r}; expected one of {ACTION_KINDS}")

    def apply_action(self, request: dict) -> ModelReport:
        """Run one action atomically: mutate, retrain, then commit."""
        ds2, subject = self._mutate(request)
        ordinal = len(self.actions) + 1
        state = self._evaluate(ds2, ordinal)
        table = self._build_table(ds2, state)
        partition = slicing.assign_slices(state.report.probabilities, self.thresholds)

        score = combined_score(state.report)
        became_best = score > self.best.combined
        action = Action(
            ordinal=ordinal,
            kind=request["kind"],
            subject=subject,
            request=jsonio.canonical_order(request),
            report=state.report,
            became_best=became_best,
        )

        self.dataset = ds2
        self.state = state
        self.table = table
        self.partition = partition
        self.actions.append(action)
        self._stats_cache = None
        self.pending_candidates = []
        if became_best:
            self.best = BestSoFar(
                combined=score,
                ordinal=ordinal,
                dataset=ds2,
                report=state.report,
                params=state.params,
            )
        self.metrics_history.append(
            _history_row(ordinal, action.kind, subject, state.report, became_best, len(ds2.active_names))
        )
        return state.report

    def expand_request(self, request: dict) -> list[dict]:
        """Resolve selector shorthand into concrete single-feature requests.

        {"kind": "Exclude", "select": {"lowest_average": k}} expands to k
        Exclude requests over the currently lowest-averaged active features,
        lowest first (ties by table order).
        """
        selector = request.get("select")
        if not selector:
            return [request]
        if request.get("kind") != "Exclude" or set(selector) != {"lowest_average"}:
            raise SessionError(f"unsupported selector {selector!r}")
        k = int(selector["lowest_average"])
        if not 1 <= k < len(self.table.features):
            raise SessionError(
                f"lowest_average count {k} out of range [1, {len(self.table.features) - 1}]"
            )
        ranked = sorted(
            range(len(self.table.features)), key=lambda i: (self.table.average[i], i)
        )
        return [
            {"kind": "Exclude", "feature": self.table.features[i]} for i in ranked[:k]
        ]

    def apply_script(self, requests: Sequence[dict]) -> list[ModelReport]:
        reports = []
        for step, request in enumerate(requests):
            try:
                for concrete in self.expand_request(dict(request)):
                    reports.append(self.apply_action(concrete))
            except (SessionError, DatasetError, engineering.TransformError, ValueError) as exc:
                raise SessionError(f"script step {step} failed: {exc}") from exc
        return reports

    # -- reads ------------------------------------------------------------

    def set_thresholds(self, low: float, high: float) -> slicing.SlicePartition:
        """Move the slice thresholds and re-partition; no retraining happens."""
        self.thresholds = slicing.set_thresholds(low, high)
        self.partition = slicing.assign_slices(self.state.report.probabilities, self.thresholds)
        self._stats_cache = None
        return self.partition

    def statistics(self) -> dict:
        """Per-slice statistics bundle for the current active view."""
        if self._stats_cache is None:
            self._stats_cache = stats.compute_bundle(
                self.dataset.active_view(),
                self.partition.assignment,
                catalog=self.catalog,
            )
        return self._stats_cache

    def feature_graph(self, slice_name: str = stats.ALL_SLICE, min_cor: float = 0.6) -> list:
        bundle = self.statistics()
        if slice_name not in bundle:
            raise SessionError(
                f"unknown slice {slice_name!r}; expected one of {(stats.ALL_SLICE,) + stats.SLICE_NAMES}"
            )
        if bundle[slice_name] is None:
            return []
        return stats.feature_graph(bundle[slice_name], min_cor=min_cor)

    def list_transforms(self, feature: str) -> list[dict]:
        """Catalog entries for one feature with applicability verdicts."""
        column = self.dataset.column(feature)
        out = []
        for t in self.catalog:
            reason = t.why_inapplicable(column)
            entry = t.describe()
            entry["applicable"] = reason is None
            entry["reason"] = reason
            out.append(entry)
        return out

    def generate_candidates(self, sources: Sequence[str]) -> tuple[list, selection.ImportanceTable]:
        """Candidate columns for 2 or 3 sources plus the extended comparison table.

        The table appends the valid candidates (marked inactive) to the
        current active features and rescores every technique over the
        extended matrix; nothing is adopted here.
        """
        candidates = engineering.generate_candidates(self.dataset, sources)
        self.pending_candidates = candidates
        view = self.dataset.active_view()
        valid = [c for c in candidates if c.valid and c.name not in view.feature_names]
        if valid:
            X = np.column_stack([view.X] + [c.values for c in valid])
            names = list(view.feature_names) + [c.name for c in valid]
            active = [True] * view.n_features + [False] * len(valid)
            table = selection.build_table(
                X,
                view.y,
                names,
                self.state.params,
                self.budget,
                train_seed=self.state.train_seed,
                active=active,
            )
        else:
            table = self.table
        return candidates, table

    # -- persistence ------------------------------------------------------

    def export_best(self, out_dir) -> tuple[Path, Path]:
        """Write the best snapshot's active columns + target as CSV with a JSON sidecar."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / "best_dataset.csv"
        sidecar_path = out_dir / "best_dataset.json"

        ds = self.best.dataset
        names = ds.active_names
        cols = [ds.column(n) for n in names]
        lines = [",".join(list(names) + [self.config.target_column])]
        for i in range(ds.n_rows):
            cells = [repr(float(c[i])) for c in cols]
            cells.append(str(int(ds.target[i])))
            lines.append(",".join(cells))
        csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

        sidecar = {
            "version": SESSION_FILE_VERSION,
            "config": self.config.to_dict(),
            "class_names": list(ds.class_names),
            "target_encoding": "class index into class_names",
            "thresholds": self.thresholds.to_dict(),
            "best_ordinal": self.best.ordinal,
            "combined": combined_score(self.best.report),
            "best_params": self.best.params.to_dict(),
            "actions": [a.request for a in self.actions[: self.best.ordinal]],
            "features": [
                {
                    "name": n,
                    "kind": ds.descriptor(n).kind,
                    "lineage": _lineage_dict(ds.descriptor(n)),
                }
                for n in names
            ],
        }
        sidecar_path.write_text(jsonio.dumps(sidecar), encoding="utf-8")
        return csv_path, sidecar_path

    def save(self, path) -> Path:
        """Persist config + log; engineered values are rebuilt by replay on load."""
        path = Path(path)
        doc = {
            "version": SESSION_FILE_VERSION,
            "config": self.config.to_dict(),
            "thresholds": self.thresholds.to_dict(),
            "actions": [a.request for a in self.actions],
            "final_combined": combined_score(self.state.report),
            "best_ordinal": self.best.ordinal,
            "best_combined": self.best.combined,
        }
        path.write_text(jsonio.dumps(doc), encoding="utf-8")
        return path


def _lineage_dict(descriptor) -> Optional[dict]:
    lineage = descriptor.lineage
    if not lineage:
        return None
    if descriptor.kind == "transformed":
        return {"source": lineage[0], "transform": lineage[1]}
    return {"sources": list(lineage[0]), "operators": list(lineage[1])}


def load_session(path) -> Session:
    """Rebuild a session by replaying its action log from the raw CSV."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SessionError(f"session file {path} is corrupt: {exc}") from exc
    if not isinstance(doc, dict) or "version" not in doc or "config" not in doc:
        raise SessionError(f"session file {path} is missing required fields")
    if doc["version"] != SESSION_FILE_VERSION:
        raise SessionError(
            f"session file version {doc['version']} unsupported; expected {SESSION_FILE_VERSION}"
        )
    session = Session.from_config(SessionConfig.from_dict(doc["config"]))
    for request in doc.get("actions", []):
        session.apply_action(request)
    thresholds = doc.get("thresholds") or {}
    if thresholds:
        session.set_thresholds(thresholds["low"], thresholds["high"])
    return session
