"""Deterministic renderers for tables, summaries, graphs and fits.

Byte-for-byte determinism contract: rows sorted by name, fixed column
order, absent values empty (csv) / null (json), rationals rendered at a
configurable number of decimals (default 1), counts as bare integers.
"""

from __future__ import annotations

import csv
import io
import json

from .analytics import CoreGraph, DiGraphLite, KeyPaths
from .fitting import FitResult, fitted_curve
from .report import SUMMARY_METRICS, EcosystemSummary, PackageStatsRow

STATS_COLUMNS = [
    "name", "repository", "n_strong", "k_p", "mhp", "mhp_parents",
    "adjusted_mhp", "mcohp", "mcohp_pair", "k_c", "hc", "adjusted_hc",
    "k_d", "hd", "k_id", "hid", "adjusted_hid", "total_downstream",
    "gini_from_parents", "gini_on_children", "depth",
]

_RATIONAL_COLUMNS = {
    "adjusted_mhp", "hc", "adjusted_hc", "hd", "hid", "adjusted_hid",
    "gini_from_parents", "gini_on_children",
}


def _num(value, precision: int):
    if value is None:
        return None
    return round(float(value), precision)


def row_record(row: PackageStatsRow, precision: int = 1) -> dict:
    """JSON-ready mapping in fixed column order."""
    rec: dict = {}
    for col in STATS_COLUMNS:
        v = getattr(row, col)
        if col == "mhp_parents":
            rec[col] = list(v)
        elif col == "mcohp_pair":
            rec[col] = list(v) if v else None
        elif col in _RATIONAL_COLUMNS:
            rec[col] = _num(v, precision)
        else:
            rec[col] = v
    return rec


def _csv_cell(col: str, value, precision: int) -> str:
    if value is None:
        return ""
    if col == "mhp_parents":
        return ";".join(value)
    if col == "mcohp_pair":
        return ";".join(value)
    if col in _RATIONAL_COLUMNS:
        return f"{float(value):.{precision}f}"
    return str(value)


def render_stats_csv(rows: list[PackageStatsRow], precision: int = 1) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STATS_COLUMNS)
    for row in rows:
        writer.writerow([_csv_cell(c, getattr(row, c), precision) for c in STATS_COLUMNS])
    return buf.getvalue()


def render_stats_json(rows: list[PackageStatsRow], snapshot_label: str = "",
                      precision: int = 1) -> str:
    doc = {
        "schema": "depheavy/stats@1",
        "snapshot": snapshot_label,
        "rows": [row_record(r, precision) for r in rows],
    }
    return json.dumps(doc, indent=1) + "\n"


def summary_record(summary: EcosystemSummary, precision: int = 1) -> dict:
    out: dict = {}
    for repo in sorted(summary.repositories):
        rs = summary.repositories[repo]
        entry = {"package_count": rs.package_count}
        for attr, _label in SUMMARY_METRICS:
            entry[attr] = _num(getattr(rs, attr), precision)
        out[repo] = entry
    return out


def render_summary_json(summary: EcosystemSummary, precision: int = 1) -> str:
    return json.dumps({"schema": "depheavy/summary@1",
                       "repositories": summary_record(summary, precision)},
                      indent=1) + "\n"


def render_summary_csv(summary: EcosystemSummary, precision: int = 1) -> str:
    repos = sorted(summary.repositories)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric"] + repos)
    writer.writerow(["Number of packages"] +
                    [str(summary.repositories[r].package_count) for r in repos])
    for attr, label in SUMMARY_METRICS:
        cells = []
        for r in repos:
            v = getattr(summary.repositories[r], attr)
            cells.append("" if v is None else f"{float(v):.{precision}f}")
        writer.writerow([label] + cells)
    return buf.getvalue()


def render_top_json(lists: dict[str, list[PackageStatsRow]], precision: int = 1) -> str:
    doc = {
        "schema": "depheavy/top@1",
        "lists": {key: [row_record(r, precision) for r in rows]
                  for key, rows in sorted(lists.items())},
    }
    return json.dumps(doc, indent=1) + "\n"


def render_stability_csv(curve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a", "s"])
    for a, s in curve.pairs():
        writer.writerow([a, f"{float(s):.6f}"])
    return buf.getvalue()


# --- Graph documents ---

def graph_doc(
    graph: DiGraphLite,
    *,
    repositories: dict[str, str] | None = None,
    edge_h: dict[tuple[str, str], int] | None = None,
    betweenness: dict[tuple[str, str], float] | None = None,
    key_edges: set[tuple[str, str]] | None = None,
    root: str | None = None,
) -> dict:
    """JSON graph document: nodes with name/repository, edges with relation
    class and optional analytics annotations."""
    nodes = []
    for name in graph.nodes:
        node: dict = {"name": name, "kind": "package"}
        if repositories is not None:
            node["repository"] = repositories.get(name)
        nodes.append(node)
    edges = []
    for parent, child in graph.edges():
        edge: dict = {"parent": parent, "child": child, "relation": "strong"}
        if edge_h is not None:
            edge["h"] = edge_h.get((parent, child))
        if betweenness is not None:
            edge["betweenness"] = round(betweenness.get((parent, child), 0.0), 6)
        if key_edges is not None:
            edge["key_path"] = (parent, child) in key_edges
        edges.append(edge)
    doc: dict = {"directed": True, "nodes": nodes, "edges": edges}
    if root is not None:
        doc["root"] = root
    return doc


def core_graph_doc(core: CoreGraph, repositories: dict[str, str] | None = None,
                   keys: KeyPaths | None = None) -> dict:
    doc = graph_doc(
        core.graph,
        repositories=repositories,
        edge_h=core.edge_h,
        betweenness=keys.betweenness if keys else None,
        key_edges=set(keys.graph.edges()) if keys else None,
    )
    doc["h_threshold"] = core.h_threshold
    doc["retained_nodes"] = core.retained_nodes
    doc["retained_edges"] = core.retained_edges
    doc["source_nodes"] = core.source_nodes
    doc["source_edges"] = core.source_edges
    doc["flow_fraction"] = round(float(core.flow_fraction), 6)
    return doc


def render_dot(graph: DiGraphLite, edge_h: dict[tuple[str, str], int] | None = None,
               key_edges: set[tuple[str, str]] | None = None) -> str:
    lines = ["digraph deps {"]
    for name in graph.nodes:
        lines.append(f'  "{name}";')
    for parent, child in graph.edges():
        attrs = []
        if edge_h is not None and (parent, child) in edge_h:
            attrs.append(f'label="{edge_h[(parent, child)]}"')
        if key_edges is not None and (parent, child) in key_edges:
            attrs.append("color=red")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{parent}" -> "{child}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_edges_csv(graph: DiGraphLite, edge_h=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["parent", "child", "h"] if edge_h is not None else ["parent", "child"])
    for parent, child in graph.edges():
        row = [parent, child]
        if edge_h is not None:
            row.append(str(edge_h.get((parent, child), "")))
        writer.writerow(row)
    return buf.getvalue()


def graph_nodes_csv(graph: DiGraphLite, repositories: dict[str, str] | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "repository"] if repositories is not None else ["name"])
    for name in graph.nodes:
        row = [name]
        if repositories is not None:
            row.append(repositories.get(name, ""))
        writer.writerow(row)
    return buf.getvalue()


def render_fit_json(fit: FitResult) -> str:
    doc = {
        "schema": "depheavy/fit@1",
        "family": fit.family,
        "params": {k: round(v, 9) for k, v in sorted(fit.params.items())},
        "r_squared": round(fit.r_squared, 9),
        "points_used": fit.points_used,
        "points_dropped": fit.points_dropped,
    }
    return json.dumps(doc, indent=1) + "\n"


def render_fit_curve_csv(fit: FitResult, observed: dict) -> str:
    """Observed-vs-fitted CSV over the observed support."""
    points = {float(k): float(v) for k, v in observed.items()}
    values = sorted(points)
    fitted = dict(fitted_curve(fit, values))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value", "observed", "fitted"])
    total = sum(points.values())
    for v in values:
        obs = points[v]
        if fit.family == "stretched-exponential" and total > 1.0 + 1e-9:
            obs = obs / total
        writer.writerow([f"{v:g}", f"{obs:.9g}", f"{fitted[v]:.9g}"])
    return buf.getvalue()
