"""Pure query functions behind the HTTP endpoints.

Everything here is computed on demand from the immutable graph; nothing is
persisted.  Paths are deterministic: among equal-length shortest paths the
lexicographically smallest next hop wins.
"""

from __future__ import annotations

from ..analytics import DiGraphLite, edge_betweenness
from ..graph import DepGraph, iter_bits
from ..heaviness import downstream_heaviness_profile, heaviness_from_upstream


def _dist_to(g: DepGraph, target: int) -> dict[int, int]:
    """Shortest-path distance toward target for every upstream node."""
    dist = {target: 0}
    frontier = [target]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for q in g.strong_parents[x]:
                if q not in dist:
                    dist[q] = d
                    nxt.append(q)
        frontier = nxt
    return dist


def _dist_from(g: DepGraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for c in g.strong_children[x]:
                if c not in dist:
                    dist[c] = d
                    nxt.append(c)
        frontier = nxt
    return dist


def upstream_paths(g: DepGraph, name: str) -> list[dict]:
    """One entry per upstream package: a shortest path to the package and
    the upstream heaviness h_u, ordered by upstream package name."""
    p = g.id(name)
    dist = _dist_to(g, p)
    out = []
    for u in iter_bits(g.up[p]):
        path = [u]
        cur = u
        while cur != p:
            cur = min(c for c in g.strong_children[cur]
                      if dist.get(c) == dist[cur] - 1)
            path.append(cur)
        out.append({
            "package": g.names[u],
            "path": [g.names[x] for x in path],
            "distance": dist[u],
            "h_u": heaviness_from_upstream(g, g.names[u], name),
        })
    return out


def upstream_graph(g: DepGraph, name: str,
                   edge_h: dict[tuple[str, str], int]) -> dict:
    """Full upstream subgraph with per-edge heaviness; thresholding is left
    to the client."""
    p = g.id(name)
    kept = {p} | set(iter_bits(g.up[p]))
    dist = _dist_to(g, p)
    nodes = [{
        "name": g.names[x],
        "kind": "package",
        "repository": g.repositories[x],
        "depth": dist[x],
    } for x in sorted(kept)]
    edges = []
    for c in sorted(kept):
        for q in g.strong_parents[c]:
            if q in kept:
                edges.append({
                    "parent": g.names[q], "child": g.names[c],
                    "relation": "strong",
                    "h": edge_h.get((g.names[q], g.names[c])),
                })
    return {"directed": True, "root": name, "nodes": nodes, "edges": edges}


def downstream_entries(g: DepGraph, name: str,
                       min_depth: int | None = None,
                       max_depth: int | None = None) -> list[dict]:
    """One entry per downstream package within the depth range: a shortest
    path from the package and the heaviness h_u it receives."""
    p = g.id(name)
    dist = _dist_from(g, p)
    h_u = {b: h for b, h in downstream_heaviness_profile(g, p)}
    out = []
    for b in iter_bits(g.down[p]):
        d = dist[b]
        if min_depth is not None and d < min_depth:
            continue
        if max_depth is not None and d > max_depth:
            continue
        path = [b]
        cur = b
        while cur != p:
            cur = min(q for q in g.strong_parents[cur]
                      if dist.get(q) == dist[cur] - 1)
            path.append(cur)
        path.reverse()
        out.append({
            "package": g.names[b],
            "path": [g.names[x] for x in path],
            "depth": d,
            "h_u": h_u[b],
        })
    return out


def _betweenness_elbow(values: list[float]) -> float | None:
    """Cutoff at the largest drop of the descending betweenness sequence;
    None when there is no drop (nothing stands out)."""
    ordered = sorted(values, reverse=True)
    best_drop = 0.0
    cutoff = None
    for i in range(len(ordered) - 1):
        drop = ordered[i] - ordered[i + 1]
        if drop > best_drop:
            best_drop = drop
            cutoff = ordered[i]
    return cutoff


def downstream_graph_grouped(
    g: DepGraph,
    name: str,
    edge_h: dict[tuple[str, str], int],
    min_depth: int | None = None,
    max_depth: int | None = None,
) -> dict:
    """Downstream subgraph rooted at the package, with leaves sharing a
    single in-subgraph parent collapsed into group nodes and edges above
    the betweenness elbow flagged as key paths."""
    p = g.id(name)
    dist = _dist_from(g, p)
    kept = {p}
    for b in iter_bits(g.down[p]):
        d = dist[b]
        if min_depth is not None and d < min_depth:
            continue
        if max_depth is not None and d > max_depth:
            continue
        kept.add(b)
    edges = [(q, c) for c in kept for q in g.strong_parents[c] if q in kept]
    sub = DiGraphLite([g.names[x] for x in kept],
                      [(g.names[q], g.names[c]) for q, c in edges])
    bt = edge_betweenness(sub)
    cutoff = _betweenness_elbow(list(bt.values())) if bt else None
    key_edges = {e for e, b in bt.items() if cutoff is not None and b >= cutoff}

    root = g.names[p]
    leaves = [v for v in sub.nodes
              if v != root and not sub.succ[v] and len(sub.pred[v]) == 1]
    grouped: dict[str, list[str]] = {}
    for v in sorted(leaves):
        grouped.setdefault(sub.pred[v][0], []).append(v)

    group_members = {v for members in grouped.values() for v in members}
    nodes = []
    for v in sub.nodes:
        if v in group_members:
            continue
        nodes.append({
            "name": v,
            "kind": "package",
            "repository": g.repositories[g.index[v]],
            "depth": dist[g.index[v]],
        })
    out_edges = []
    for parent, child in sub.edges():
        if child in group_members:
            continue
        out_edges.append({
            "parent": parent, "child": child, "relation": "strong",
            "h": edge_h.get((parent, child)),
            "betweenness": round(bt.get((parent, child), 0.0), 6),
            "key_path": (parent, child) in key_edges,
        })
    groups = []
    for parent in sorted(grouped):
        members = grouped[parent]
        gid = f"leaves:{parent}"
        groups.append({
            "name": gid,
            "kind": "leaf-group",
            "parent": parent,
            "count": len(members),
            "members": [{"name": m, "h": edge_h.get((parent, m))} for m in members],
        })
        out_edges.append({
            "parent": parent, "child": gid, "relation": "group",
            "h": None, "betweenness": None, "key_path": False,
        })
    return {
        "directed": True,
        "root": root,
        "nodes": nodes + groups,
        "edges": out_edges,
    }
