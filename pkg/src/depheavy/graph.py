"""Immutable directed dependency graph with strong/weak edges.

Reachability is precomputed once per snapshot as fixed-width bit vectors
(Python ints) over the node index space; removal queries run a fresh BFS
over the adjacency with an edge filter instead of maintaining closures.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field

from .errors import DomainError, EdgeNotFound, PackageNotFound
from .ingest import PackageDatabase

QUERY_CATEGORIES = (
    "parents", "weak_parents", "strong_dependencies",
    "children", "downstream", "indirect_downstream",
)


def iter_bits(x: int):
    """Yield the set bit positions of x in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class DepGraph:
    names: list[str]                      # node index -> package name (sorted)
    index: dict[str, int]
    repositories: list[str]
    strong_parents: list[list[int]]       # child -> parents, sorted by index
    strong_children: list[list[int]]      # parent -> children
    weak_parents: list[list[int]]
    weak_children: list[list[int]]
    up: list[int] = field(default_factory=list)    # upstream closure bitsets
    down: list[int] = field(default_factory=list)  # downstream closure bitsets
    topo_rank: list[int] = field(default_factory=list)  # condensation order
    cycle_members: frozenset[int] = frozenset()
    cycle_mask: int = 0

    def __len__(self) -> int:
        return len(self.names)

    def id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise PackageNotFound(name) from None

    def has_strong_edge(self, parent: str, child: str) -> bool:
        p, c = self.index.get(parent), self.index.get(child)
        return p is not None and c is not None and p in self.strong_parents[c]

    def names_of(self, bits: int) -> set[str]:
        return {self.names[i] for i in iter_bits(bits)}

    @property
    def strong_edge_count(self) -> int:
        return sum(len(ps) for ps in self.strong_parents)

    def strong_edges(self):
        """Yield (parent_idx, child_idx) pairs in deterministic order."""
        for c in range(len(self.names)):
            for p in self.strong_parents[c]:
                yield p, c


def build_graph(db: PackageDatabase) -> DepGraph:
    """Build the dependency graph from a normalized database.

    Strong edge parent -> child for each non-external Depends/Imports/
    LinkingTo declaration; weak edge for Suggests/Enhances; if both were
    declared for a pair, strong wins.  Node indexing is deterministic by
    sorted package name.
    """
    names = sorted(db.packages)
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    strong: list[set[int]] = [set() for _ in range(n)]
    weak: list[set[int]] = [set() for _ in range(n)]
    for name, rec in db.packages.items():
        ci = index[name]
        for decl in rec.declarations:
            if db.is_external(decl.name):
                continue
            pi = index[decl.name]
            if pi == ci:
                warnings.warn(f"self-dependency ignored: {name!r}")
                continue
            (strong if decl.strong else weak)[ci].add(pi)
    strong_parents = [sorted(strong[c]) for c in range(n)]
    weak_parents = [sorted(weak[c] - strong[c]) for c in range(n)]
    strong_children: list[list[int]] = [[] for _ in range(n)]
    weak_children: list[list[int]] = [[] for _ in range(n)]
    for c in range(n):
        for p in strong_parents[c]:
            strong_children[p].append(c)
        for p in weak_parents[c]:
            weak_children[p].append(c)
    g = DepGraph(
        names=names, index=index,
        repositories=[db.packages[nm].repository for nm in names],
        strong_parents=strong_parents, strong_children=strong_children,
        weak_parents=weak_parents, weak_children=weak_children,
    )
    _build_closures(g)
    if g.cycle_members:
        warnings.warn(
            f"strong-dependency cycle(s) involving {len(g.cycle_members)} packages")
    return g


def _strongly_connected_components(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan; components are emitted in reverse topological order."""
    ids = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if ids[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                ids[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for j in range(ei, len(succ[v])):
                w = succ[v][j]
                if ids[w] == -1:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], ids[w])
            if advanced:
                continue
            work.pop()
            if low[v] == ids[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comps


def _build_closures(g: DepGraph) -> None:
    n = len(g.names)
    comps = _strongly_connected_components(n, g.strong_children)
    comps.reverse()                       # parents-first topological order
    comp_of = [0] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    topo_rank = [0] * n
    rank = 0
    for comp in comps:
        for v in sorted(comp):
            topo_rank[v] = rank
            rank += 1
    comp_bits = [0] * len(comps)
    for ci, comp in enumerate(comps):
        b = 0
        for v in comp:
            b |= 1 << v
        comp_bits[ci] = b

    # Upstream: flow closures from parent components into child components.
    up_comp = [0] * len(comps)
    for ci, comp in enumerate(comps):
        acc = 0
        for v in comp:
            for p in g.strong_parents[v]:
                pc = comp_of[p]
                if pc != ci:
                    acc |= up_comp[pc] | comp_bits[pc]
        up_comp[ci] = acc
    up = [0] * n
    for ci, comp in enumerate(comps):
        full = up_comp[ci] | (comp_bits[ci] if len(comp) > 1 else 0)
        for v in comp:
            up[v] = full & ~(1 << v)

    # Downstream: same on the reversed condensation order.
    down_comp = [0] * len(comps)
    for ci in range(len(comps) - 1, -1, -1):
        acc = 0
        for v in comps[ci]:
            for c in g.strong_children[v]:
                cc = comp_of[c]
                if cc != ci:
                    acc |= down_comp[cc] | comp_bits[cc]
        down_comp[ci] = acc
    down = [0] * n
    for ci, comp in enumerate(comps):
        full = down_comp[ci] | (comp_bits[ci] if len(comp) > 1 else 0)
        for v in comp:
            down[v] = full & ~(1 << v)

    cyc = frozenset(v for comp in comps if len(comp) > 1 for v in comp)
    mask = 0
    for v in cyc:
        mask |= 1 << v
    g.up = up
    g.down = down
    g.topo_rank = topo_rank
    g.cycle_members = cyc
    g.cycle_mask = mask


# --- Queries ---

def dependency_query(g: DepGraph, name: str, category: str) -> set[str]:
    """Return one of the dependency categories for a package."""
    i = g.id(name)
    if category == "parents":
        return {g.names[p] for p in g.strong_parents[i]}
    if category == "weak_parents":
        return {g.names[p] for p in g.weak_parents[i]}
    if category == "strong_dependencies":
        return g.names_of(g.up[i])
    if category == "children":
        return {g.names[c] for c in g.strong_children[i]}
    if category == "downstream":
        return g.names_of(g.down[i])
    if category == "indirect_downstream":
        children = 0
        for c in g.strong_children[i]:
            children |= 1 << c
        return g.names_of(g.down[i] & ~children)
    raise DomainError(f"unknown category {category!r}; expected one of {QUERY_CATEGORIES}")


def strong_dep_count(g: DepGraph, name: str) -> int:
    return g.up[g.id(name)].bit_count()


def reach_without_bits(g: DepGraph, target: int,
                       removed: frozenset[tuple[int, int]] | set[tuple[int, int]]) -> int:
    """Upstream closure of target on a virtual view of g minus removed edges.

    Runs a reverse BFS with an edge-filter predicate; g is never mutated.
    """
    seen = 1 << target
    frontier = deque((target,))
    acc = 0
    while frontier:
        x = frontier.popleft()
        for q in g.strong_parents[x]:
            qb = 1 << q
            if seen & qb or (q, x) in removed:
                continue
            seen |= qb
            acc |= qb
            frontier.append(q)
    return acc


def reach_without(g: DepGraph, name: str,
                  removed_edges: set[tuple[str, str]] | frozenset[tuple[str, str]]) -> set[str]:
    """Upstream closure of a package after virtually removing strong edges.

    Raises EdgeNotFound for any removed edge absent from the graph (guards
    against silently no-op what-ifs).
    """
    t = g.id(name)
    removed: set[tuple[int, int]] = set()
    for parent, child in removed_edges:
        p, c = g.id(parent), g.id(child)
        if p not in g.strong_parents[c]:
            raise EdgeNotFound(parent, child)
        removed.add((p, c))
    return g.names_of(reach_without_bits(g, t, removed))


def distance(g: DepGraph, a: str, b: str) -> int | None:
    """Edge count of the shortest directed path a -> ... -> b over strong
    edges; None when unreachable."""
    s, t = g.id(a), g.id(b)
    if s == t:
        return 0
    seen = 1 << s
    frontier = [s]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for c in g.strong_children[x]:
                if c == t:
                    return d
                cb = 1 << c
                if not seen & cb:
                    seen |= cb
                    nxt.append(c)
        frontier = nxt
    return None


def depth(g: DepGraph, name: str) -> int:
    """Maximal shortest-path distance from any upstream package; 0 when the
    package has no upstream."""
    return depth_by_index(g, g.id(name))


def depth_by_index(g: DepGraph, i: int) -> int:
    seen = 1 << i
    frontier = [i]
    d = 0
    while frontier:
        nxt = []
        for x in frontier:
            for q in g.strong_parents[x]:
                qb = 1 << q
                if not seen & qb:
                    seen |= qb
                    nxt.append(q)
        if nxt:
            d += 1
        frontier = nxt
    return d
