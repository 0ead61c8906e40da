"""HTTP/JSON shell: dataset uploads, per-user sessions, recommendations.

The service holds no business logic. Handlers parse requests, call the
library, and wrap results in a uniform envelope; every response body is
reproducible by direct library calls. Sessions live in memory (optionally
snapshotted to disk on shutdown) and serialize writes per session.
"""
from __future__ import annotations

import hashlib
import json
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .actions import CATEGORY_BY_KIND
from .dataset import Dataset, DatasetError, aggregate, column_stats, load_csv
from .datasets import BUILTIN_LOADERS
from .recommend import RecommendationSet, RecommenderConfig, recommend
from .specs import SpecError, VizSpec, canonicalize, spec_from_json

PROTOCOL_VERSION = "1"
MAX_CHART_POINTS = 2000


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _ok(data) -> JSONResponse:
    return JSONResponse({"ok": True, "data": data, "version": PROTOCOL_VERSION})


def _err(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        {"ok": False, "error": {"code": code, "message": message}, "version": PROTOCOL_VERSION},
        status_code=status,
    )


@dataclass
class SessionContext:
    """Per-user exploration state; all mutation goes through the lock."""

    session_id: str
    dataset_id: str
    current_view: VizSpec | None = None
    category_toggles: dict[str, bool] = field(default_factory=dict)
    starred: set[str] = field(default_factory=set)
    served: dict[str, VizSpec] = field(default_factory=dict)
    events: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def log(self, kind: str, payload, sink=None) -> None:
        event = {"ts": time.time(), "session": self.session_id, "kind": kind, "payload": payload}
        self.events.append(event)
        if sink is not None:
            sink(event)

    def snapshot(self) -> dict:
        return {
            "session_id": self.session_id,
            "dataset_id": self.dataset_id,
            "current_view": self.current_view.to_json() if self.current_view else None,
            "category_toggles": dict(self.category_toggles),
            "starred": sorted(self.starred),
            "served": {k: s.to_json() for k, s in self.served.items()},
            "events": list(self.events),
        }


class ServiceStore:
    """In-memory dataset and session registry."""

    def __init__(self):
        self.datasets: dict[str, Dataset] = {}
        self.sessions: dict[str, SessionContext] = {}
        self._lock = threading.Lock()

    def add_dataset(self, ds: Dataset, raw: bytes | None = None) -> str:
        digest = hashlib.sha256(raw if raw is not None else ds.name.encode()).hexdigest()
        dataset_id = digest[:12]
        with self._lock:
            self.datasets[dataset_id] = ds
        return dataset_id

    def dataset(self, dataset_id: str) -> Dataset:
        ds = self.datasets.get(dataset_id)
        if ds is None:
            raise ServiceError(404, "unknown_dataset", f"no dataset {dataset_id!r}")
        return ds

    def create_session(self, dataset_id: str) -> SessionContext:
        self.dataset(dataset_id)  # 404 when missing
        session = SessionContext(uuid.uuid4().hex, dataset_id)
        with self._lock:
            self.sessions[session.session_id] = session
        return session

    def session(self, session_id: str) -> SessionContext:
        session = self.sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session", f"no session {session_id!r}")
        return session

    def save_snapshot(self, path: str | Path) -> None:
        payload = {
            "sessions": [s.snapshot() for s in self.sessions.values()],
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")

    def load_snapshot(self, path: str | Path) -> None:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        for snap in payload.get("sessions", []):
            ds = self.datasets.get(snap["dataset_id"])
            if ds is None:
                continue
            session = SessionContext(snap["session_id"], snap["dataset_id"])
            schema = ds.schema
            if snap.get("current_view"):
                session.current_view = spec_from_json(snap["current_view"], schema)
            session.category_toggles = dict(snap.get("category_toggles", {}))
            session.starred = set(snap.get("starred", []))
            session.served = {
                key: spec_from_json(obj, schema) for key, obj in snap.get("served", {}).items()
            }
            session.events = list(snap.get("events", []))
            self.sessions[session.session_id] = session


def _capped_chart(ds: Dataset, spec: VizSpec) -> dict:
    agg = aggregate(ds, spec)
    out = agg.to_json()
    n = len(out["x"])
    if spec.mark == "scatter" and n > MAX_CHART_POINTS:
        step = -(-n // MAX_CHART_POINTS)  # ceil division; deterministic stride
        out["x"] = out["x"][::step]
        out["y"] = out["y"][::step]
        if out["color"] is not None:
            out["color"] = out["color"][::step]
    return out


def recommendations_payload(
    recset: RecommendationSet, ds: Dataset, include_charts: bool = True
) -> dict:
    payload = recset.to_json()
    if not include_charts:
        return payload
    if recset.mode == "baseline":
        rows = [payload["items"]]
        sources = [recset.items]
    else:
        rows = [cat["items"] for cat in payload["categories"]]
        sources = [cat.items for cat in recset.categories]
    for row, items in zip(rows, sources):
        for obj, item in zip(row, items):
            obj["chart"] = _capped_chart(ds, item.spec)
    return payload


def _config_from_query(params, toggles: dict[str, bool]) -> RecommenderConfig:
    def _int(name, default):
        raw = params.get(name)
        return default if raw is None else int(raw)

    enabled = None
    if any(v is False for v in toggles.values()):
        enabled = frozenset(k for k in CATEGORY_BY_KIND if toggles.get(k, True))
    return RecommenderConfig(
        k=_int("k", 10),
        metric=params.get("metric", "spearman"),
        cardinality_cap=_int("cardinality_cap", 50),
        similarity_direction=params.get("similarity", "similar"),
        category_order_seed=(
            int(params["category_seed"]) if params.get("category_seed") is not None else None
        ),
        baseline=params.get("mode", "categorized") == "baseline",
        baseline_seed=_int("seed", 0),
        enabled_kinds=enabled,
    )


def create_app(
    log_path: str | Path | None = None,
    preload: tuple[str, ...] = (),
    snapshot_path: str | Path | None = None,
) -> FastAPI:
    store = ServiceStore()
    log_file = open(log_path, "a", encoding="utf-8") if log_path else None
    log_lock = threading.Lock()

    def sink(event: dict) -> None:
        if log_file is None:
            return
        with log_lock:
            log_file.write(json.dumps(event, sort_keys=True) + "\n")
            log_file.flush()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        for name in preload:
            loader = BUILTIN_LOADERS.get(name)
            if loader is not None:
                ds = loader()
                store.add_dataset(ds, raw=f"builtin:{name}".encode())
        if snapshot_path and Path(snapshot_path).exists():
            store.load_snapshot(snapshot_path)
        yield
        if snapshot_path:
            store.save_snapshot(snapshot_path)
        if log_file is not None:
            log_file.close()

    app = FastAPI(title="nextviz", lifespan=lifespan)
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def _service_error(_req, exc: ServiceError):
        return _err(exc.status, exc.code, exc.message)

    @app.exception_handler(SpecError)
    async def _spec_error(_req, exc: SpecError):
        return _err(422, "invalid_spec", str(exc))

    @app.exception_handler(DatasetError)
    async def _dataset_error(_req, exc: DatasetError):
        return _err(422, "invalid_dataset", str(exc))

    def _schema_payload(ds: Dataset) -> dict:
        return {
            "name": ds.name,
            "row_count": ds.row_count,
            "columns": [
                {**meta.to_json(), "stats": column_stats(ds, meta.name)}
                for meta in ds.columns
            ],
        }

    def _view_payload(ds: Dataset, view: VizSpec | None) -> dict:
        if view is None:
            return {"view": None, "key": None, "chart": None}
        return {
            "view": view.to_json(),
            "key": canonicalize(view),
            "chart": _capped_chart(ds, view),
        }

    # -- datasets ----------------------------------------------------------
    @app.post("/datasets")
    async def upload_dataset(request: Request):
        raw = await request.body()
        name = request.query_params.get("name", "uploaded")
        ds = load_csv(raw, name=name)
        dataset_id = store.add_dataset(ds, raw)
        return _ok({"dataset_id": dataset_id, **_schema_payload(ds)})

    @app.get("/datasets")
    def list_datasets():
        return _ok(
            [
                {"dataset_id": did, "name": ds.name, "row_count": ds.row_count}
                for did, ds in sorted(store.datasets.items())
            ]
        )

    @app.get("/datasets/{dataset_id}/schema")
    def dataset_schema(dataset_id: str):
        return _ok(_schema_payload(store.dataset(dataset_id)))

    # -- sessions ------------------------------------------------------------
    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        dataset_id = body.get("dataset_id") if isinstance(body, dict) else None
        if not dataset_id:
            raise ServiceError(422, "missing_dataset_id", "body must carry dataset_id")
        session = store.create_session(dataset_id)
        session.log("session_created", {"dataset_id": dataset_id}, sink)
        return _ok({"session_id": session.session_id, "dataset_id": dataset_id})

    @app.get("/sessions/{session_id}")
    def session_state(session_id: str):
        session = store.session(session_id)
        ds = store.dataset(session.dataset_id)
        with session.lock:
            return _ok(
                {
                    "session_id": session.session_id,
                    "dataset_id": session.dataset_id,
                    "category_toggles": session.category_toggles,
                    "starred": sorted(session.starred),
                    **_view_payload(ds, session.current_view),
                }
            )

    @app.put("/sessions/{session_id}/view")
    async def put_view(session_id: str, request: Request):
        session = store.session(session_id)
        ds = store.dataset(session.dataset_id)
        raw = await request.body()
        body = json.loads(raw) if raw else None
        view = None
        if body is not None and body != {} and body.get("attrs"):
            view = spec_from_json(body, ds.schema)
        with session.lock:
            session.current_view = view
            session.log(
                "view_set", {"view": view.to_json() if view else None}, sink
            )
            return _ok(_view_payload(ds, view))

    @app.get("/sessions/{session_id}/recommendations")
    def get_recommendations(session_id: str, request: Request):
        session = store.session(session_id)
        ds = store.dataset(session.dataset_id)
        with session.lock:
            config = _config_from_query(request.query_params, session.category_toggles)
            recset = recommend(session.current_view, ds, config)
            for item in recset.all_items():
                session.served[item.key] = item.spec
            session.log(
                "recommendations",
                {"mode": recset.mode, "count": len(recset.all_items())},
                sink,
            )
            return _ok(recommendations_payload(recset, ds))

    @app.post("/sessions/{session_id}/promote")
    async def promote(session_id: str, request: Request):
        session = store.session(session_id)
        ds = store.dataset(session.dataset_id)
        body = await request.json()
        key = body.get("key") if isinstance(body, dict) else None
        with session.lock:
            spec = session.served.get(key)
            if spec is None:
                raise ServiceError(409, "never_served", f"key {key!r} was never served")
            session.current_view = spec
            session.log("promote", {"key": key}, sink)
            return _ok(_view_payload(ds, spec))

    @app.post("/sessions/{session_id}/star")
    async def star(session_id: str, request: Request):
        session = store.session(session_id)
        body = await request.json()
        key = body.get("key") if isinstance(body, dict) else None
        with session.lock:
            if key not in session.served:
                raise ServiceError(409, "never_served", f"key {key!r} was never served")
            session.starred.add(key)
            session.log("star", {"key": key}, sink)
            return _ok({"starred": sorted(session.starred)})

    @app.post("/sessions/{session_id}/toggle-category")
    async def toggle_category(session_id: str, request: Request):
        session = store.session(session_id)
        body = await request.json()
        kind = body.get("kind") if isinstance(body, dict) else None
        if kind not in CATEGORY_BY_KIND:
            raise ServiceError(422, "unknown_category", f"no category {kind!r}")
        enabled = bool(body.get("enabled", True))
        with session.lock:
            session.category_toggles[kind] = enabled
            session.log("toggle_category", {"kind": kind, "enabled": enabled}, sink)
            return _ok({"category_toggles": session.category_toggles})

    @app.get("/sessions/{session_id}/log")
    def session_log(session_id: str):
        session = store.session(session_id)
        with session.lock:
            return _ok({"events": list(session.events)})

    return app
