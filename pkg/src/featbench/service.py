"""HTTP/JSON API over a workbench session.

One session per server.  Mutations run through a depth-1 queue: while one
is in flight any further mutating call gets 409 instead of being queued.
Slow mutations (anything that retrains) return a job id by default; pass
``?wait=true`` to run inline and receive the result directly.  Every float
in a response is rounded to 12 significant digits.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from . import jsonio, stats
from .session import Session, SessionConfig, SessionError, combined_score, load_session


class ConfigBody(BaseModel):
    config: dict


class LoadBody(BaseModel):
    path: str


class ThresholdsBody(BaseModel):
    low: float
    high: float


class FeatureBody(BaseModel):
    feature: str


class TransformBody(BaseModel):
    feature: str
    transform: str


class GenerateBody(BaseModel):
    sources: list[str]


class AdoptBody(BaseModel):
    sources: list[str]
    adopt: str


class ExportBody(BaseModel):
    out_dir: str


class SaveBody(BaseModel):
    path: str


class Jobs:
    """Sequentially numbered background jobs plus the depth-1 mutation gate."""

    def __init__(self):
        self._lock = threading.Lock()
        self._records: dict[str, dict] = {}
        self._counter = 0
        self._busy = False

    def try_acquire(self) -> bool:
        with self._lock:
            if self._busy:
                return False
            self._busy = True
            return True

    def release(self):
        with self._lock:
            self._busy = False

    def submit(self, work: Callable[[], dict]) -> str:
        with self._lock:
            self._counter += 1
            job_id = f"job-{self._counter}"
            self._records[job_id] = {"id": job_id, "status": "running"}

        def run():
            try:
                result = work()
                self._records[job_id].update(status="done", result=result)
            except Exception as exc:
                self._records[job_id].update(status="failed", error=str(exc))
            finally:
                self.release()

        threading.Thread(target=run, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict:
        record = self._records.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return record


def _report_dict(session: Session) -> dict:
    return jsonio.round_floats(session.state.report.to_dict())


def _summary(session: Session) -> dict:
    ds = session.dataset
    return jsonio.round_floats(
        {
            "n_rows": ds.n_rows,
            "n_features": ds.n_features,
            "n_active": len(ds.active_names),
            "class_names": list(ds.class_names),
            "class_counts": ds.class_counts().tolist(),
            "thresholds": session.thresholds.to_dict(),
            "n_actions": len(session.actions),
            "best": {
                "ordinal": session.best.ordinal,
                "combined": session.best.combined,
            },
            "report": session.state.report.to_dict(),
        }
    )


def _features_with_state(session: Session) -> list[dict]:
    ds = session.dataset
    out = []
    for name in ds.feature_names:
        d = ds.descriptor(name)
        out.append({"name": name, "kind": d.kind, "active": d.active})
    return out


def create_app(
    session: Optional[Session] = None, static_dir: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="featbench", version="1.0")
    app.state.session = session
    app.state.jobs = Jobs()

    def current() -> Session:
        if app.state.session is None:
            raise HTTPException(status_code=400, detail="no session loaded; POST /session first")
        return app.state.session

    def mutate(work: Callable[[], dict], wait: bool):
        """Run a mutating operation through the depth-1 queue."""
        jobs: Jobs = app.state.jobs
        if not jobs.try_acquire():
            raise HTTPException(status_code=409, detail="another mutation is in flight")
        if wait:
            try:
                return work()
            except (SessionError, ValueError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            finally:
                jobs.release()
        return {"job": jobs.submit(work)}

    def guarded(fn: Callable[[], dict]) -> dict:
        try:
            return fn()
        except HTTPException:
            raise
        except (SessionError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    # -- session lifecycle ------------------------------------------------

    @app.post("/session")
    def create_session(body: ConfigBody, wait: bool = Query(default=False)):
        try:
            config = SessionConfig.from_dict(body.config)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=f"bad config: {exc}") from exc

        def work():
            app.state.session = Session.from_config(config)
            return _summary(app.state.session)

        return mutate(work, wait)

    @app.post("/session/load")
    def load_saved_session(body: LoadBody, wait: bool = Query(default=False)):
        def work():
            app.state.session = load_session(body.path)
            return _summary(app.state.session)

        return mutate(work, wait)

    @app.get("/session")
    def get_session():
        return guarded(lambda: _summary(current()))

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        return jsonio.round_floats(app.state.jobs.get(job_id))

    # -- reads ------------------------------------------------------------

    @app.get("/probabilities")
    def get_probabilities():
        def read():
            s = current()
            return jsonio.round_floats(
                {
                    "probabilities": s.state.report.probabilities.tolist(),
                    "assignment": s.partition.assignment.tolist(),
                    "counts": dict(s.partition.counts),
                    "thresholds": s.thresholds.to_dict(),
                }
            )

        return guarded(read)

    @app.get("/importance")
    def get_importance():
        def read():
            s = current()
            return jsonio.round_floats(
                {"table": s.table.to_dict(), "features": _features_with_state(s)}
            )

        return guarded(read)

    @app.get("/statistics")
    def get_statistics(slice: Optional[str] = Query(default=None)):
        def read():
            s = current()
            bundle = s.statistics()
            if slice is not None:
                if slice not in bundle:
                    raise SessionError(
                        f"unknown slice {slice!r}; expected one of "
                        f"{(stats.ALL_SLICE,) + stats.SLICE_NAMES}"
                    )
                bundle = {slice: bundle[slice]}
            payload = {
                name: (
                    None
                    if per_feature is None
                    else {f: st.to_dict() for f, st in per_feature.items()}
                )
                for name, per_feature in bundle.items()
            }
            return jsonio.round_floats(payload)

        return guarded(read)

    @app.get("/graph")
    def get_graph(
        slice: str = Query(default=stats.ALL_SLICE),
        min_cor: float = Query(default=0.6, ge=0.0, le=1.0),
    ):
        def read():
            s = current()
            edges = s.feature_graph(slice_name=slice, min_cor=min_cor)
            return jsonio.round_floats(
                {"slice": slice, "min_cor": min_cor, "edges": [list(e) for e in edges]}
            )

        return guarded(read)

    @app.get("/transforms/{feature}")
    def get_transforms(feature: str):
        def read():
            s = current()
            listing = s.list_transforms(feature)
            bundle = s.statistics()
            impact = None
            per_feature = bundle.get(stats.ALL_SLICE)
            if per_feature and feature in per_feature and per_feature[feature].impact:
                impact = per_feature[feature].impact.to_dict()
            return jsonio.round_floats(
                {"feature": feature, "transforms": listing, "impact": impact}
            )

        return guarded(read)

    @app.get("/log")
    def get_log():
        def read():
            s = current()
            return jsonio.round_floats(
                {
                    "actions": [
                        {
                            "ordinal": a.ordinal,
                            "kind": a.kind,
                            "subject": a.subject,
                            "request": a.request,
                            "became_best": a.became_best,
                        }
                        for a in s.actions
                    ],
                    "history": list(s.metrics_history),
                }
            )

        return guarded(read)

    # -- mutations --------------------------------------------------------

    def action_endpoint(request: dict, wait: bool):
        s = current()

        def work():
            report = s.apply_action(request)
            return jsonio.round_floats(
                {
                    "report": report.to_dict(),
                    "combined": combined_score(report),
                    "became_best": s.actions[-1].became_best,
                    "ordinal": s.actions[-1].ordinal,
                    "n_active": len(s.dataset.active_names),
                }
            )

        return mutate(work, wait)

    @app.post("/include")
    def post_include(body: FeatureBody, wait: bool = Query(default=False)):
        return action_endpoint({"kind": "Include", "feature": body.feature}, wait)

    @app.post("/exclude")
    def post_exclude(body: FeatureBody, wait: bool = Query(default=False)):
        return action_endpoint({"kind": "Exclude", "feature": body.feature}, wait)

    @app.post("/transform")
    def post_transform(body: TransformBody, wait: bool = Query(default=False)):
        return action_endpoint(
            {"kind": "Transform", "feature": body.feature, "transform": body.transform}, wait
        )

    @app.post("/adopt")
    def post_adopt(body: AdoptBody, wait: bool = Query(default=False)):
        return action_endpoint(
            {"kind": "Generate", "sources": body.sources, "adopt": body.adopt}, wait
        )

    @app.post("/generate")
    def post_generate(body: GenerateBody, wait: bool = Query(default=False)):
        s = current()

        def work():
            candidates, table = s.generate_candidates(body.sources)
            return jsonio.round_floats(
                {
                    "candidates": [
                        {
                            "name": c.name,
                            "sources": list(c.sources),
                            "operators": list(c.operators),
                            "valid": c.valid,
                            "reason": c.reason,
                        }
                        for c in candidates
                    ],
                    "table": table.to_dict(),
                }
            )

        return mutate(work, wait)

    @app.put("/thresholds")
    def put_thresholds(body: ThresholdsBody, wait: bool = Query(default=True)):
        s = current()

        def work():
            partition = s.set_thresholds(body.low, body.high)
            return jsonio.round_floats(
                {
                    "thresholds": s.thresholds.to_dict(),
                    "counts": dict(partition.counts),
                    "report": s.state.report.to_dict(),
                }
            )

        return mutate(work, wait)

    @app.post("/export")
    def post_export(body: ExportBody, wait: bool = Query(default=True)):
        s = current()

        def work():
            csv_path, sidecar_path = s.export_best(body.out_dir)
            return {"csv": str(csv_path), "sidecar": str(sidecar_path)}

        return mutate(work, wait)

    @app.post("/save")
    def post_save(body: SaveBody, wait: bool = Query(default=True)):
        s = current()

        def work():
            return {"path": str(s.save(body.path))}

        return mutate(work, wait)

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
