"""Shared test helpers: fixture graph construction and random DAGs."""

from __future__ import annotations

import random
import warnings

from depheavy import DepDeclaration, RawPackageRecord, build_database, build_graph


def make_db(strong=(), weak=(), nodes=(), exclusions=frozenset(), label="test"):
    """Build a database from (parent, child) edge tuples."""
    decls: dict[str, list[DepDeclaration]] = {}
    for parent, child in strong:
        decls.setdefault(child, []).append(DepDeclaration(parent, "Imports"))
        decls.setdefault(parent, [])
    for parent, child in weak:
        decls.setdefault(child, []).append(DepDeclaration(parent, "Suggests"))
        decls.setdefault(parent, [])
    for extra in nodes:
        decls.setdefault(extra, [])
    records = [RawPackageRecord(name, tuple(ds)) for name, ds in decls.items()]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")         # short fixture names trip the grammar
        return build_database(records, exclusions, label)


def make_graph(strong=(), weak=(), nodes=()):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_graph(make_db(strong, weak, nodes))


G1_EDGES = [("A", "P"), ("B", "P"), ("C", "A"), ("D", "A"), ("C", "B"), ("E", "C")]
G2_EDGES = G1_EDGES + [("P", "Q")]


def random_dag_edges(seed: int, max_nodes: int = 40, max_edges: int = 120):
    """Random DAG: nodes n000.. with edges oriented low index -> high index,
    so name order, index order and a topological order all coincide."""
    rng = random.Random(seed)
    n = rng.randint(5, max_nodes)
    names = [f"n{i:03d}" for i in range(n)]
    possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
    count = rng.randint(0, min(max_edges, len(possible)))
    picked = rng.sample(possible, count)
    return names, [(names[i], names[j]) for i, j in picked]
