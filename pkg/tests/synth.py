"""Synthetic scale-free dependency graph at ecosystem scale.

Preferential attachment in the parent-selection direction: each new package
declares parents among existing packages with probability proportional to
out-degree + 1, which reproduces the hub-dominated child-count distribution
of real package ecosystems while keeping upstream closures in a realistic
range.
"""

from __future__ import annotations

import random

from depheavy import DepDeclaration, PackageDatabase, RawPackageRecord
from depheavy.graph import DepGraph, build_graph


def scale_free_db(n_nodes: int = 22_000, n_edges: int = 124_000,
                  seed: int = 20_220_608) -> PackageDatabase:
    rng = random.Random(seed)
    names = [f"pkg{i:05d}" for i in range(n_nodes)]
    # attachment pool holds one entry per node plus one per out-edge
    pool = [0]
    parents_of: list[set[int]] = [set() for _ in range(n_nodes)]
    remaining = n_edges
    for i in range(1, n_nodes):
        nodes_left = n_nodes - i
        mean = remaining / nodes_left
        k = min(i, remaining, max(0, int(rng.expovariate(1.0 / mean))) if mean > 0 else 0)
        chosen = parents_of[i]
        attempts = 0
        while len(chosen) < k and attempts < 12 * k:
            cand = pool[rng.randrange(len(pool))]
            attempts += 1
            if cand != i:
                chosen.add(cand)
        remaining -= len(chosen)
        for p in chosen:
            pool.append(p)
        pool.append(i)
    # top up any unspent budget so the edge count is exact for every seed
    while remaining > 0:
        child = rng.randrange(1, n_nodes)
        cand = pool[rng.randrange(len(pool))]
        if cand < child and cand not in parents_of[child]:
            parents_of[child].add(cand)
            pool.append(cand)
            remaining -= 1
    records = []
    for i, name in enumerate(names):
        decls = tuple(DepDeclaration(names[p], "Imports")
                      for p in sorted(parents_of[i]))
        records.append(RawPackageRecord(name, decls, "CRAN"))
    packages = {rec.name: rec for rec in records}
    return PackageDatabase(packages, frozenset(), f"synthetic-{seed}")


def scale_free_graph(n_nodes: int = 22_000, n_edges: int = 124_000,
                     seed: int = 20_220_608) -> DepGraph:
    return build_graph(scale_free_db(n_nodes, n_edges, seed))
