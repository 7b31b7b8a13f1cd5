"""Command-line interface.

Thin argument parsing over the library: batch subcommands run in-process,
`serve` hosts the HTTP API, and `whatif --server` acts as a client against
a running instance.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.request
from collections import Counter
from pathlib import Path

from . import exports
from .analytics import components, core_graph, key_paths
from .errors import DepheavyError
from .fitting import fit_power_law, fit_stretched_exponential
from .graph import build_graph
from .heaviness import all_edge_heaviness, whatif_demote
from .ingest import (
    DEFAULT_EXCLUSIONS,
    build_database,
    load_database,
    load_edge_list,
    parse_dcf,
    save_database,
)
from .report import (
    DEFAULT_TOP_THRESHOLDS,
    StatsConfig,
    compute_all_stats,
    ecosystem_summary,
    top_lists,
)


def _load_db(path: str):
    if path.endswith(".csv"):
        return load_edge_list(path)
    return load_database(path)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_ingest(args) -> int:
    repos = args.repo or ["CRAN"]
    if len(repos) == 1:
        repos = repos * len(args.sources)
    if len(repos) != len(args.sources):
        print("error: pass one --repo per source (or a single one for all)",
              file=sys.stderr)
        return 2
    records = []
    issue_count = 0
    for src, repo in zip(args.sources, repos):
        text = Path(src).read_text(encoding="utf-8", errors="replace")
        recs, issues = parse_dcf(text, repo)
        records.extend(recs)
        for issue in issues:
            print(f"warning: {src}:{issue.line}: {issue.message}", file=sys.stderr)
        issue_count += len(issues)
    exclusions = set() if args.no_default_exclusions else set(DEFAULT_EXCLUSIONS)
    exclusions.update(args.exclude or [])
    db = build_database(records, frozenset(exclusions), args.label)
    save_database(db, args.out)
    print(f"ingested {len(db)} packages from {len(args.sources)} file(s) "
          f"({issue_count} stanza issue(s)) -> {args.out}")
    return 0


def cmd_stats(args) -> int:
    db = _load_db(args.input)
    rows = compute_all_stats(build_graph(db), StatsConfig(threads=args.threads))
    if args.format == "csv":
        _emit(exports.render_stats_csv(rows, args.precision), args.out)
    else:
        _emit(exports.render_stats_json(rows, db.snapshot_label, args.precision), args.out)
    return 0


def cmd_summary(args) -> int:
    db = _load_db(args.input)
    rows = compute_all_stats(build_graph(db))
    summary = ecosystem_summary(rows)
    if args.format == "csv":
        _emit(exports.render_summary_csv(summary, args.precision), args.out)
    else:
        _emit(exports.render_summary_json(summary, args.precision), args.out)
    return 0


def cmd_top(args) -> int:
    db = _load_db(args.input)
    rows = compute_all_stats(build_graph(db))
    if args.metric:
        cutoff = (args.threshold if args.threshold is not None
                  else DEFAULT_TOP_THRESHOLDS.get(args.metric, 0.0))
        thresholds = {args.metric: cutoff}
    else:
        thresholds = None
    _emit(exports.render_top_json(top_lists(rows, thresholds), args.precision), args.out)
    return 0


def cmd_core_graph(args) -> int:
    db = _load_db(args.input)
    g = build_graph(db)
    edge_h = all_edge_heaviness(g)
    core = core_graph(g, args.h_threshold, edge_h)
    keys = key_paths(core, args.bt_threshold)
    if args.out and args.out.endswith(".dot"):
        text = exports.render_dot(core.graph, core.edge_h, set(keys.graph.edges()))
    else:
        repos = dict(zip(g.names, g.repositories))
        doc = exports.core_graph_doc(core, repos, keys)
        doc["bt_threshold"] = args.bt_threshold
        doc["key_path_flow_fraction"] = round(keys.flow_fraction, 6)
        doc["component_sizes"] = components(core)
        text = json.dumps(doc, indent=1) + "\n"
    _emit(text, args.out)
    return 0


def cmd_whatif(args) -> int:
    demote = [s for s in (args.demote or "").split(",") if s]
    if args.server:
        body = json.dumps({"package": args.package, "demote": demote}).encode()
        req = urllib.request.Request(
            args.server.rstrip("/") + "/whatif", data=body,
            headers={"Content-Type": "application/json"}, method="POST")
        with urllib.request.urlopen(req) as resp:
            _emit(resp.read().decode() + "\n", args.out)
        return 0
    db = _load_db(args.input)
    g = build_graph(db)
    n_before = g.up[g.id(args.package)].bit_count()
    new_count, reduced = whatif_demote(g, args.package, demote)
    _emit(json.dumps({
        "package": args.package, "demote": sorted(demote),
        "n_before": n_before, "new_count": new_count, "reduced": reduced,
    }, indent=1) + "\n", args.out)
    return 0


def cmd_fit(args) -> int:
    db = _load_db(args.input)
    g = build_graph(db)
    edge_h = all_edge_heaviness(g)
    if args.target == "heaviness":
        observed = Counter(edge_h.values())
        fit = fit_stretched_exponential(observed)
    else:
        sizes = components(core_graph(g, args.h_threshold, edge_h))
        observed = Counter(sizes)
        fit = fit_power_law(sizes, drop_top=args.drop_top)
    _emit(exports.render_fit_json(fit), args.out)
    if args.curve_out:
        Path(args.curve_out).write_text(
            exports.render_fit_curve_csv(fit, dict(observed)), encoding="utf-8")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import BundleConfig, create_app

    host, _, port = args.addr.rpartition(":")
    config = BundleConfig(h_threshold=args.h_threshold,
                          bt_threshold=args.bt_threshold,
                          precision=args.precision)
    ui_dir = args.ui_dir
    if ui_dir is None:
        default_ui = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        ui_dir = str(default_ui) if default_ui.is_dir() else None
    app = create_app(snapshot_path=args.input, config=config, ui_dir=ui_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depheavy",
        description="Dependency-heaviness analytics over package metadata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse DCF metadata into a database file")
    p.add_argument("sources", nargs="+")
    p.add_argument("--repo", action="append",
                   help="repository tag per source (single value applies to all)")
    p.add_argument("--out", required=True)
    p.add_argument("--label", default="")
    p.add_argument("--exclude", action="append")
    p.add_argument("--no-default-exclusions", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="per-package heaviness table")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--precision", type=int, default=1)
    p.add_argument("--threads", type=int)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("summary", help="per-repository means")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--precision", type=int, default=1)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("top", help="threshold-filtered top lists")
    p.add_argument("--input", required=True)
    p.add_argument("--metric", help="row metric to filter on (default: all four standard lists)")
    p.add_argument("--threshold", type=float)
    p.add_argument("--out")
    p.add_argument("--precision", type=int, default=1)
    p.set_defaults(func=cmd_top)

    p = sub.add_parser("core-graph", help="high-heaviness subgraph and key paths")
    p.add_argument("--input", required=True)
    p.add_argument("--h-threshold", type=int, default=30)
    p.add_argument("--bt-threshold", type=float, default=20.0)
    p.add_argument("--out", help=".json (graph document) or .dot")
    p.set_defaults(func=cmd_core_graph)

    p = sub.add_parser("whatif", help="simulate demoting strong parents")
    p.add_argument("--input")
    p.add_argument("--server", help="base URL of a running depheavy service")
    p.add_argument("--package", required=True)
    p.add_argument("--demote", default="", help="comma-separated parent names")
    p.add_argument("--out")
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("fit", help="distribution fits")
    p.add_argument("--input", required=True)
    p.add_argument("--target", choices=["heaviness", "components"], required=True)
    p.add_argument("--h-threshold", type=int, default=30)
    p.add_argument("--drop-top", type=int, default=5)
    p.add_argument("--out")
    p.add_argument("--curve-out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("serve", help="run the HTTP query service")
    p.add_argument("--input", required=True)
    p.add_argument("--addr", default="127.0.0.1:8230")
    p.add_argument("--h-threshold", type=int, default=30)
    p.add_argument("--bt-threshold", type=float, default=20.0)
    p.add_argument("--precision", type=int, default=1)
    p.add_argument("--ui-dir")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "whatif" and not args.server and not args.input:
        print("error: whatif needs --input or --server", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except DepheavyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
