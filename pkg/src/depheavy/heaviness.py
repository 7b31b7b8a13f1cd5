"""Heaviness metrics over the strong dependency graph.

Heaviness of a parent on a child is the number of strong dependencies the
child loses when the parent edge is virtually removed (n1 - n2).  The same
removal idea generalizes to upstream packages (remove all their out-edges),
parent pairs (co-heaviness) and arbitrary demotion subsets (what-if).

Public single operations run fresh BFS reachability; the bulk engines used
by the snapshot table exploit the precomputed closures with prefix/suffix
unions and an incremental recomputation over each package's downstream set.
Both paths are exact and are cross-checked against each other in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, EdgeNotFound
from .graph import DepGraph, iter_bits, reach_without_bits


@dataclass(frozen=True)
class EdgeHeaviness:
    parent: str
    child: str
    n1: int
    n2: int

    @property
    def h(self) -> int:
        return self.n1 - self.n2


@dataclass(frozen=True)
class CoHeaviness:
    parent_a: str
    parent_b: str
    child: str
    s_a_size: int
    s_b_size: int
    s_ab_size: int
    h_co: int


@dataclass(frozen=True)
class DownstreamHeaviness:
    hd: Fraction
    hid: Fraction
    k_d: int
    k_id: int


def edge_heaviness(g: DepGraph, parent: str, child: str) -> EdgeHeaviness:
    """Heaviness of a strong parent on a child: h = n1 - n2."""
    p, c = g.id(parent), g.id(child)
    if p not in g.strong_parents[c]:
        raise EdgeNotFound(parent, child)
    n1 = g.up[c].bit_count()
    n2 = reach_without_bits(g, c, {(p, c)}).bit_count()
    return EdgeHeaviness(parent, child, n1, n2)


def weak_parent_heaviness(g: DepGraph, weak_parent: str, child: str) -> int:
    """n2 - n1 where n2 counts upstream after virtually promoting the weak
    edge to a strong one."""
    w, c = g.id(weak_parent), g.id(child)
    if w not in g.weak_parents[c]:
        raise EdgeNotFound(weak_parent, child, relation="weak")
    n1 = g.up[c].bit_count()
    n2 = ((g.up[c] | (1 << w) | g.up[w]) & ~(1 << c)).bit_count()
    return n2 - n1


def max_heaviness_from_parents(g: DepGraph, name: str) -> tuple[int, list[str]]:
    """(h_max, all tied argmax parents sorted by name); (0, []) without parents."""
    p = g.id(name)
    parents = g.strong_parents[p]
    if not parents:
        return 0, []
    hs = _edge_h_for_child(g, p)
    best = max(hs)
    return best, [g.names[q] for q, h in zip(parents, hs) if h == best]


def heaviness_from_upstream(g: DepGraph, upstream: str, name: str) -> int:
    """Heaviness of an upstream package: remove all its strong out-edges."""
    c, p = g.id(upstream), g.id(name)
    if not (g.up[p] >> c) & 1:
        raise DomainError(f"{upstream!r} is not upstream of {name!r}")
    removed = {(c, x) for x in g.strong_children[c]}
    n1 = g.up[p].bit_count()
    return n1 - reach_without_bits(g, p, removed).bit_count()


def heaviness_on_children(g: DepGraph, name: str) -> Fraction:
    """Mean heaviness over the package's children; 0 when childless (the
    snapshot table reports childless packages as absent, not 0)."""
    p = g.id(name)
    children = g.strong_children[p]
    if not children:
        return Fraction(0)
    total = 0
    for c in children:
        n1 = g.up[c].bit_count()
        total += n1 - reach_without_bits(g, c, {(p, c)}).bit_count()
    return Fraction(total, len(children))


def heaviness_on_downstream(g: DepGraph, name: str) -> DownstreamHeaviness:
    """Mean heaviness over all downstream packages and over the indirect
    subset (0 when the respective set is empty)."""
    p = g.id(name)
    profile = downstream_heaviness_profile(g, p)
    k_d = len(profile)
    children = set(g.strong_children[p])
    total = sum(h for _, h in profile)
    id_total = sum(h for b, h in profile if b not in children)
    k_id = sum(1 for b, _ in profile if b not in children)
    hd = Fraction(total, k_d) if k_d else Fraction(0)
    hid = Fraction(id_total, k_id) if k_id else Fraction(0)
    return DownstreamHeaviness(hd, hid, k_d, k_id)


def total_downstream_heaviness(g: DepGraph, name: str) -> int:
    """Sum of upstream-heaviness over all downstream packages (h_d * K_d,
    computed as the exact integer sum)."""
    return sum(h for _, h in downstream_heaviness_profile(g, g.id(name)))


def co_heaviness(g: DepGraph, a: str, b: str, p: str) -> CoHeaviness:
    """Dependencies removable only by demoting both parents together."""
    ai, bi, pi = g.id(a), g.id(b), g.id(p)
    if ai == bi:
        raise DomainError("co-heaviness requires two distinct parents")
    for q, qn in ((ai, a), (bi, b)):
        if q not in g.strong_parents[pi]:
            raise DomainError(f"{qn!r} is not a strong parent of {p!r}")
    up_p = g.up[pi]
    s_a = up_p & ~reach_without_bits(g, pi, {(ai, pi)})
    s_b = up_p & ~reach_without_bits(g, pi, {(bi, pi)})
    s_ab = up_p & ~reach_without_bits(g, pi, {(ai, pi), (bi, pi)})
    if s_a & s_b:
        raise AssertionError("reduced sets of two parents must be disjoint")
    h_co = (s_ab & ~(s_a | s_b)).bit_count()
    return CoHeaviness(a, b, p, s_a.bit_count(), s_b.bit_count(),
                       s_ab.bit_count(), h_co)


def max_co_heaviness(g: DepGraph, name: str) -> tuple[int, tuple[str, str] | None]:
    """(h_co_max, argmax pair); (0, None) for fewer than two parents.
    Ties break by lexicographic pair name."""
    p = g.id(name)
    h, pair = max_co_heaviness_by_index(g, p)
    if pair is None:
        return h, None
    return h, (g.names[pair[0]], g.names[pair[1]])


def whatif_demote(g: DepGraph, name: str, parents_subset) -> tuple[int, list[str]]:
    """Simulate demoting a subset of strong parents to weak.

    Returns (new strong-dependency count, sorted set of packages no longer
    required).  Raises DomainError listing any non-parent in the subset.
    """
    p = g.id(name)
    parents = set(g.strong_parents[p])
    subset = list(parents_subset)
    offenders = [q for q in subset
                 if g.index.get(q) is None or g.index[q] not in parents]
    if offenders:
        raise DomainError(
            f"not strong parents of {name!r}: {sorted(offenders)}")
    removed = {(g.index[q], p) for q in subset}
    remaining = reach_without_bits(g, p, removed)
    reduced = g.up[p] & ~remaining
    new_count = g.up[p].bit_count() - reduced.bit_count()
    return new_count, sorted(g.names_of(reduced))


def gini(values) -> Fraction:
    """Mean absolute difference over twice the mean: sum |xi-xj| / (2 n^2 mean).

    0 when all values are 0 or n == 1; raises DomainError on empty input.
    """
    vals = sorted(Fraction(v) for v in values)
    n = len(vals)
    if n == 0:
        raise DomainError("gini of an empty sequence")
    total = sum(vals)
    if n == 1 or total == 0:
        return Fraction(0)
    pair_sum = 2 * sum(x * (2 * k - n + 1) for k, x in enumerate(vals))
    return pair_sum / (2 * n * total)


# --- Bulk engines ---

def _edge_h_for_child(g: DepGraph, c: int) -> list[int]:
    """Heaviness of every in-edge of child c, aligned with strong_parents[c].

    Acyclic fast path: upstream-minus-one-parent is the union of the other
    parents' contributions, read off prefix/suffix unions.  When c lies on a
    strong cycle (some parent is also downstream of c) this identity fails,
    so fall back to per-edge BFS.
    """
    parents = g.strong_parents[c]
    if not parents:
        return []
    n1 = g.up[c].bit_count()
    pmask = 0
    for q in parents:
        pmask |= 1 << q
    if g.down[c] & pmask:
        return [n1 - reach_without_bits(g, c, {(q, c)}).bit_count()
                for q in parents]
    k = len(parents)
    if k == 1:
        return [n1]
    contribs = [g.up[q] | (1 << q) for q in parents]
    prefix = [0] * (k + 1)
    for i in range(k):
        prefix[i + 1] = prefix[i] | contribs[i]
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = (suffix[i + 1] if i + 1 < k else 0) | contribs[i]
    out = []
    for i in range(k):
        rest = prefix[i] | (suffix[i + 1] if i + 1 < k else 0)
        out.append(n1 - rest.bit_count())
    return out


def all_edge_heaviness(g: DepGraph) -> dict[tuple[int, int], int]:
    """Heaviness for every strong edge, keyed by (parent_idx, child_idx)."""
    out: dict[tuple[int, int], int] = {}
    for c in range(len(g)):
        for q, h in zip(g.strong_parents[c], _edge_h_for_child(g, c)):
            out[(q, c)] = h
    return out


def downstream_heaviness_profile(g: DepGraph, p: int) -> list[tuple[int, int]]:
    """(b, h_u(p->b)) for every downstream package b of p, ascending by index.

    Removing p's out-edges changes the upstream closure only for packages
    downstream of p, so those closures are recomputed incrementally in
    condensation-topological order.  Falls back to per-target BFS when the
    downstream set touches a strong cycle.
    """
    dbits = g.down[p]
    if not dbits:
        return []
    if (dbits & g.cycle_mask) or ((g.cycle_mask >> p) & 1):
        removed = {(p, c) for c in g.strong_children[p]}
        return [(b, g.up[b].bit_count() - reach_without_bits(g, b, removed).bit_count())
                for b in iter_bits(dbits)]
    rank = g.topo_rank
    affected = sorted(iter_bits(dbits), key=rank.__getitem__)
    up = g.up
    newup: dict[int, int] = {}
    out = []
    for b in affected:
        acc = 0
        for q in g.strong_parents[b]:
            if q == p:
                continue
            nu = newup.get(q)
            acc |= (up[q] if nu is None else nu) | (1 << q)
        newup[b] = acc
        out.append((b, up[b].bit_count() - acc.bit_count()))
    out.sort()
    return out


def max_co_heaviness_by_index(
    g: DepGraph, p: int, edge_h: list[int] | None = None,
) -> tuple[int, tuple[int, int] | None]:
    """Pair scan behind max_co_heaviness; edge_h may carry the precomputed
    per-parent heaviness aligned with strong_parents[p].

    Pairs whose parents' upstream contributions are disjoint cannot co-act
    (their reduced sets already partition the union), so a bitset AND test
    prunes them to h_co = 0 without the union work.
    """
    parents = g.strong_parents[p]
    k = len(parents)
    if k < 2:
        return 0, None
    pmask = 0
    for q in parents:
        pmask |= 1 << q
    n1 = g.up[p].bit_count()
    best = -1
    best_pair: tuple[int, int] | None = None
    if g.down[p] & pmask:
        up_p = g.up[p]
        lost = [up_p & ~reach_without_bits(g, p, {(q, p)}) for q in parents]
        for i in range(k - 1):
            for j in range(i + 1, k):
                s_ab = up_p & ~reach_without_bits(g, p, {(parents[i], p), (parents[j], p)})
                cand = (s_ab & ~(lost[i] | lost[j])).bit_count()
                if cand > best:
                    best, best_pair = cand, (parents[i], parents[j])
        return best, best_pair
    contribs = [g.up[q] | (1 << q) for q in parents]
    if edge_h is None:
        edge_h = _edge_h_for_child(g, p)
    prefix = [0] * (k + 1)
    for i in range(k):
        prefix[i + 1] = prefix[i] | contribs[i]
    suffix = [0] * (k + 1)
    suffix[k - 1] = contribs[k - 1]
    for i in range(k - 2, -1, -1):
        suffix[i] = suffix[i + 1] | contribs[i]
    for i in range(k - 1):
        mid = 0
        for j in range(i + 1, k):
            if j > i + 1:
                mid |= contribs[j - 1]
            if not contribs[i] & contribs[j]:
                cand = 0
            else:
                rest = prefix[i] | mid | (suffix[j + 1] if j + 1 < k else 0)
                s_ab_size = n1 - rest.bit_count()
                cand = s_ab_size - edge_h[i] - edge_h[j]
            if cand > best:
                best, best_pair = cand, (parents[i], parents[j])
    return best, best_pair
