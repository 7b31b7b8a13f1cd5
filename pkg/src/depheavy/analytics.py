"""Graph-level analyses: core graph, components, edge betweenness, key
paths, transmission length, parent-pair classification and source scoring."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PackageNotFound
from .graph import DepGraph, iter_bits
from .heaviness import (
    all_edge_heaviness,
    downstream_heaviness_profile,
    _edge_h_for_child,
)


class DiGraphLite:
    """Small directed graph over package names, used for subgraph analyses
    (core graph, key paths, per-package downstream graphs)."""

    def __init__(self, nodes=(), edges=()):
        self.nodes: list[str] = sorted(set(nodes) | {v for e in edges for v in e})
        self.succ: dict[str, list[str]] = {v: [] for v in self.nodes}
        self.pred: dict[str, list[str]] = {v: [] for v in self.nodes}
        for parent, child in sorted(set(edges)):
            self.succ[parent].append(child)
            self.pred[child].append(parent)

    @classmethod
    def from_dep_graph(cls, g: DepGraph) -> "DiGraphLite":
        return cls(g.names, [(g.names[p], g.names[c]) for p, c in g.strong_edges()])

    def edges(self):
        for parent in self.nodes:
            for child in self.succ[parent]:
                yield parent, child

    @property
    def edge_count(self) -> int:
        return sum(len(cs) for cs in self.succ.values())

    def __contains__(self, name: str) -> bool:
        return name in self.succ

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass
class CoreGraph:
    graph: DiGraphLite
    edge_h: dict[tuple[str, str], int]
    h_threshold: int
    retained_nodes: int
    retained_edges: int
    source_nodes: int
    source_edges: int
    flow_fraction: Fraction         # sum of retained h over sum of all h


def core_graph(g: DepGraph, h_threshold: int = 30,
               edge_h: dict[tuple[int, int], int] | None = None) -> CoreGraph:
    """Subgraph induced by strong edges with heaviness >= h_threshold;
    nodes with no retained incident edge are dropped."""
    if edge_h is None:
        edge_h = all_edge_heaviness(g)
    total_h = sum(edge_h.values())
    kept = {(p, c): h for (p, c), h in edge_h.items() if h >= h_threshold}
    kept_h = sum(kept.values())
    edges = [(g.names[p], g.names[c]) for p, c in kept]
    sub = DiGraphLite((), edges)
    if total_h > 0:
        fraction = Fraction(kept_h, total_h)
    else:
        fraction = Fraction(1) if len(kept) == len(edge_h) else Fraction(0)
    return CoreGraph(
        graph=sub,
        edge_h={(g.names[p], g.names[c]): h for (p, c), h in kept.items()},
        h_threshold=h_threshold,
        retained_nodes=len(sub), retained_edges=len(kept),
        source_nodes=len(g), source_edges=len(edge_h),
        flow_fraction=fraction,
    )


def components(graph: CoreGraph | DiGraphLite) -> list[int]:
    """Weakly-connected component sizes in descending order."""
    if isinstance(graph, CoreGraph):
        graph = graph.graph
    seen: set[str] = set()
    sizes: list[int] = []
    for start in graph.nodes:
        if start in seen:
            continue
        size = 0
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            size += 1
            for w in graph.succ[v] + graph.pred[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        sizes.append(size)
    return sorted(sizes, reverse=True)


def edge_betweenness(graph: DiGraphLite) -> dict[tuple[str, str], float]:
    """Directed, unweighted edge betweenness summed over ordered reachable
    pairs, with fractional credit among equal-length shortest paths
    (Brandes accumulation)."""
    bt: dict[tuple[str, str], float] = {e: 0.0 for e in graph.edges()}
    for source in graph.nodes:
        order: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in graph.nodes}
        sigma: dict[str, float] = {v: 0.0 for v in graph.nodes}
        dist: dict[str, int] = {v: -1 for v in graph.nodes}
        sigma[source] = 1.0
        dist[source] = 0
        queue = deque((source,))
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in graph.succ[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in order}
        for w in reversed(order):
            for v in preds[w]:
                credit = sigma[v] / sigma[w] * (1.0 + delta[w])
                bt[(v, w)] += credit
                delta[v] += credit
    return bt


@dataclass
class KeyPaths:
    graph: DiGraphLite
    betweenness: dict[tuple[str, str], float]
    bt_threshold: float
    flow_fraction: float            # sum of retained bt over sum of all bt


def key_paths(cg: CoreGraph | DiGraphLite, bt_threshold: float = 20.0,
              betweenness: dict[tuple[str, str], float] | None = None) -> KeyPaths:
    """Induced subgraph of edges with betweenness >= bt_threshold."""
    graph = cg.graph if isinstance(cg, CoreGraph) else cg
    if betweenness is None:
        betweenness = edge_betweenness(graph)
    total = sum(betweenness.values())
    kept = {e: b for e, b in betweenness.items() if b >= bt_threshold}
    sub = DiGraphLite((), list(kept))
    fraction = (sum(kept.values()) / total) if total > 0 else 0.0
    return KeyPaths(sub, kept, bt_threshold, fraction)


def transmission_length(graph: DiGraphLite, name: str) -> int:
    """Maximum shortest-path distance from a package to any reachable leaf
    (out-degree 0 in the analyzed graph); 0 when it is itself a leaf."""
    if name not in graph:
        raise PackageNotFound(name)
    best = 0
    dist = {name: 0}
    frontier = [name]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in graph.succ[v]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
                    if not graph.succ[w]:
                        best = d
        frontier = nxt
    return best


@dataclass(frozen=True)
class PairRelation:
    category: str                   # parent-child | upstream-downstream |
    witness: str | None = None      # common-upstream (witness) | no-clear-relation


PARENT_CHILD = "parent-child"
UPSTREAM_DOWNSTREAM = "upstream-downstream"
COMMON_UPSTREAM = "common-upstream"
NO_CLEAR_RELATION = "no-clear-relation"

COMMON_UPSTREAM_RATIO = 0.75


def classify_parent_pair(g: DepGraph, a: str, b: str, p: str) -> PairRelation:
    """Classify the relation between two strong parents of p.

    Common-upstream requires a shared upstream package whose heaviness on
    each parent exceeds 0.75 of the pair's co-heaviness; the first
    qualifying witness by name is reported.
    """
    from .heaviness import co_heaviness, heaviness_from_upstream

    ai, bi = g.id(a), g.id(b)
    co = co_heaviness(g, a, b, p)   # validates the pair
    if ai in g.strong_parents[bi] or bi in g.strong_parents[ai]:
        return PairRelation(PARENT_CHILD)
    if (g.up[bi] >> ai) & 1 or (g.up[ai] >> bi) & 1:
        return PairRelation(UPSTREAM_DOWNSTREAM)
    cutoff = COMMON_UPSTREAM_RATIO * co.h_co
    for c in iter_bits(g.up[ai] & g.up[bi]):
        cn = g.names[c]
        if heaviness_from_upstream(g, cn, a) > cutoff and \
           heaviness_from_upstream(g, cn, b) > cutoff:
            return PairRelation(COMMON_UPSTREAM, cn)
    return PairRelation(NO_CLEAR_RELATION)


@dataclass(frozen=True)
class SourceScore:
    score: int
    via_total: int                  # downstream heaviness of a routed via p
    counterpart: str | None         # a's own heaviest parent, if any


def source_score(g: DepGraph, a: str, p: str) -> SourceScore:
    """How much of a's downstream heaviness flowing through p originates at
    a itself rather than at a's own heaviest parent."""
    ai, pi = g.id(a), g.id(p)
    if ai not in g.strong_parents[pi]:
        raise DomainError(f"{a!r} is not a strong parent of {p!r}")
    via_a = _via_total(g, ai, pi)
    parents = g.strong_parents[ai]
    if not parents:
        return SourceScore(via_a, via_a, None)
    hs = _edge_h_for_child(g, ai)
    best = max(hs)
    counterpart = next(q for q, h in zip(parents, hs) if h == best)
    via_b = _via_total(g, counterpart, pi)
    return SourceScore(via_a - via_b, via_a, g.names[counterpart])


def _via_total(g: DepGraph, src: int, p: int) -> int:
    down_p = g.down[p]
    return sum(h for b, h in downstream_heaviness_profile(g, src)
               if (down_p >> b) & 1)
