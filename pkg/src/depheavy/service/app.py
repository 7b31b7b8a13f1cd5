"""Read-only HTTP JSON API over a loaded snapshot.

Many concurrent readers over an immutable bundle; handlers bind the bundle
reference once per request, and POST /reload swaps it atomically.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..errors import DomainError, EdgeListFormatError, PackageNotFound
from ..exports import core_graph_doc
from ..heaviness import whatif_demote
from . import views
from .models import (
    CoreGraphResponse,
    DownstreamResponse,
    ErrorBody,
    GraphDocModel,
    KeyPathsResponse,
    PackageDetail,
    PackagesPage,
    ReloadRequest,
    ReloadResponse,
    SummaryResponse,
    UpstreamResponse,
    WhatIfRequest,
    WhatIfResponse,
)
from .state import BundleConfig, SnapshotBundle, load_bundle

SORTABLE = {
    "name", "repository", "n_strong", "k_p", "mhp", "adjusted_mhp", "mcohp",
    "k_c", "hc", "adjusted_hc", "k_d", "hd", "k_id", "hid", "adjusted_hid",
    "total_downstream", "gini_from_parents", "gini_on_children", "depth",
}
MAX_PER_PAGE = 1000


def create_app(
    bundle: SnapshotBundle | None = None,
    *,
    snapshot_path: str | None = None,
    config: BundleConfig = BundleConfig(),
    ui_dir: str | None = None,
) -> FastAPI:
    if bundle is None:
        if snapshot_path is None:
            raise ValueError("pass a bundle or a snapshot_path")
        bundle = load_bundle(snapshot_path, config)

    app = FastAPI(title="depheavy", version="0.1.0")
    app.state.bundle = bundle
    app.state.reload_lock = threading.Lock()
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )

    @app.exception_handler(PackageNotFound)
    async def _not_found(request: Request, exc: PackageNotFound):
        return JSONResponse(status_code=404,
                            content=ErrorBody(error=str(exc), package=exc.package).model_dump())

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=400, content=ErrorBody(error=str(exc)).model_dump())

    @app.exception_handler(EdgeListFormatError)
    async def _format_error(request: Request, exc: EdgeListFormatError):
        return JSONResponse(status_code=400, content=ErrorBody(error=str(exc)).model_dump())

    @app.get("/health")
    def health():
        snap: SnapshotBundle = app.state.bundle
        return {"status": "ok", "packages": len(snap.graph), "snapshot": snap.label}

    @app.get("/packages", response_model=PackagesPage)
    def packages(
        sort: str = Query("name"),
        dir: str = Query("asc", pattern="^(asc|desc)$"),
        page: int = Query(1, ge=1),
        per_page: int = Query(100, ge=1, le=MAX_PER_PAGE),
    ):
        snap: SnapshotBundle = app.state.bundle
        if sort not in SORTABLE:
            raise DomainError(f"unsortable column {sort!r}")
        records = snap.records
        if sort in ("name", "repository"):
            ordered = sorted(records, key=lambda r: (r[sort], r["name"]),
                             reverse=(dir == "desc"))
        else:
            # absent values always sort after present ones, ties by name
            present = [r for r in records if r[sort] is not None]
            absent = [r for r in records if r[sort] is None]
            present.sort(key=lambda r: (r[sort], r["name"]))
            if dir == "desc":
                present.sort(key=lambda r: (-r[sort], r["name"]))
            absent.sort(key=lambda r: r["name"])
            ordered = present + absent
        start = (page - 1) * per_page
        return PackagesPage(
            total=len(ordered), page=page, per_page=per_page, sort=sort, dir=dir,
            rows=ordered[start:start + per_page],
        )

    @app.get("/package/{name}", response_model=PackageDetail)
    def package_detail(name: str):
        snap: SnapshotBundle = app.state.bundle
        g = snap.graph
        i = snap.row_index.get(name)
        if i is None:
            raise PackageNotFound(name)
        rec = dict(snap.records[i])
        gi = g.id(name)
        rec["parents"] = [
            {"parent": g.names[q], "h": snap.edge_h[(g.names[q], name)]}
            for q in g.strong_parents[gi]
        ]
        rec["weak_parents"] = [g.names[q] for q in g.weak_parents[gi]]
        rec["children"] = [
            {"child": g.names[c], "h": snap.edge_h[(name, g.names[c])]}
            for c in g.strong_children[gi]
        ]
        rec["reducible"] = None
        return PackageDetail(**rec)

    @app.get("/package/{name}/upstream", response_model=UpstreamResponse)
    def upstream(name: str):
        snap: SnapshotBundle = app.state.bundle
        return UpstreamResponse(
            package=name,
            entries=views.upstream_paths(snap.graph, name),
            graph=views.upstream_graph(snap.graph, name, snap.edge_h))

    @app.get("/package/{name}/downstream", response_model=DownstreamResponse)
    def downstream(name: str,
                   min_depth: int | None = Query(None, ge=0),
                   max_depth: int | None = Query(None, ge=0)):
        snap: SnapshotBundle = app.state.bundle
        entries = views.downstream_entries(snap.graph, name, min_depth, max_depth)
        return DownstreamResponse(package=name, min_depth=min_depth,
                                  max_depth=max_depth, entries=entries)

    @app.get("/package/{name}/downstream-graph", response_model=GraphDocModel)
    def downstream_graph(name: str,
                         min_depth: int | None = Query(None, ge=0),
                         max_depth: int | None = Query(None, ge=0)):
        snap: SnapshotBundle = app.state.bundle
        return views.downstream_graph_grouped(
            snap.graph, name, snap.edge_h, min_depth, max_depth)

    @app.get("/core-graph", response_model=CoreGraphResponse)
    def core_graph_endpoint():
        snap: SnapshotBundle = app.state.bundle
        repos = dict(zip(snap.graph.names, snap.graph.repositories))
        return core_graph_doc(snap.core, repos, snap.keys)

    @app.get("/key-paths", response_model=KeyPathsResponse)
    def key_paths_endpoint():
        snap: SnapshotBundle = app.state.bundle
        keys = snap.keys
        doc = {
            "directed": True,
            "nodes": [{"name": n, "kind": "package"} for n in keys.graph.nodes],
            "edges": [
                {"parent": p, "child": c, "relation": "strong",
                 "h": snap.core.edge_h.get((p, c)),
                 "betweenness": round(keys.betweenness[(p, c)], 6),
                 "key_path": True}
                for p, c in keys.graph.edges()
            ],
            "h_threshold": snap.core.h_threshold,
            "bt_threshold": keys.bt_threshold,
            "flow_fraction": round(keys.flow_fraction, 6),
        }
        return doc

    @app.get("/summary", response_model=SummaryResponse)
    def summary():
        snap: SnapshotBundle = app.state.bundle
        return SummaryResponse(snapshot=snap.label, repositories=snap.summary_doc)

    @app.post("/whatif", response_model=WhatIfResponse)
    def whatif(body: WhatIfRequest):
        snap: SnapshotBundle = app.state.bundle
        g = snap.graph
        n_before = g.up[g.id(body.package)].bit_count()
        new_count, reduced = whatif_demote(g, body.package, body.demote)
        return WhatIfResponse(package=body.package, demote=sorted(body.demote),
                              n_before=n_before, new_count=new_count, reduced=reduced)

    @app.post("/reload", response_model=ReloadResponse)
    def reload(body: ReloadRequest):
        with app.state.reload_lock:
            current: SnapshotBundle = app.state.bundle
            path = body.path or current.source_path
            if not path:
                raise DomainError("no snapshot path to reload from")
            fresh = load_bundle(path, current.config)
            app.state.bundle = fresh          # atomic swap
        return ReloadResponse(status="ok", packages=len(fresh.graph),
                              snapshot=fresh.label)

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
