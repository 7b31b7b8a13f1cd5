"""Snapshot bundle: everything a request needs, loaded atomically and
swapped as a unit so no request ever observes a half-replaced snapshot."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..analytics import CoreGraph, KeyPaths, core_graph, key_paths
from ..errors import EdgeListFormatError
from ..exports import row_record, summary_record
from ..graph import DepGraph, build_graph
from ..heaviness import all_edge_heaviness
from ..ingest import PackageDatabase, load_database, load_edge_list
from ..report import StatsConfig, PackageStatsRow, compute_all_stats, ecosystem_summary


@dataclass(frozen=True)
class BundleConfig:
    h_threshold: int = 30
    bt_threshold: float = 20.0
    precision: int = 1
    stats: StatsConfig = field(default_factory=StatsConfig)


@dataclass(frozen=True)
class SnapshotBundle:
    source_path: str | None
    label: str
    db: PackageDatabase
    graph: DepGraph
    rows: list[PackageStatsRow]
    row_index: dict[str, int]
    records: list[dict]                       # row_record() at config precision
    summary_doc: dict
    edge_h: dict[tuple[str, str], int]        # keyed by names
    core: CoreGraph
    keys: KeyPaths
    config: BundleConfig


def build_bundle(db: PackageDatabase, config: BundleConfig = BundleConfig(),
                 source_path: str | None = None) -> SnapshotBundle:
    g = build_graph(db)
    edge_h_idx = all_edge_heaviness(g)
    rows = compute_all_stats(g, config.stats)
    core = core_graph(g, config.h_threshold, edge_h_idx)
    keys = key_paths(core, config.bt_threshold)
    summary_doc = (summary_record(ecosystem_summary(rows), config.precision)
                   if rows else {})
    return SnapshotBundle(
        source_path=source_path,
        label=db.snapshot_label,
        db=db,
        graph=g,
        rows=rows,
        row_index={r.name: i for i, r in enumerate(rows)},
        records=[row_record(r, config.precision) for r in rows],
        summary_doc=summary_doc,
        edge_h={(g.names[p], g.names[c]): h for (p, c), h in edge_h_idx.items()},
        core=core,
        keys=keys,
        config=config,
    )


def load_bundle(path: str, config: BundleConfig = BundleConfig()) -> SnapshotBundle:
    """Load a snapshot from a normalized database JSON or edge-list CSV."""
    if path.endswith(".csv"):
        db = load_edge_list(path)
    elif path.endswith(".json"):
        db = load_database(path)
    else:
        raise EdgeListFormatError(
            "snapshot must be a .json database or .csv edge list "
            "(run `depheavy ingest` on raw metadata first)", 1)
    return build_bundle(db, config, source_path=path)
