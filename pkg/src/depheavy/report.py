"""Ecosystem-wide stats table, per-repository summary and top lists."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .adjusted import HC_PENALTY, HID_PENALTY, MHP_SHIFT
from .errors import DomainError
from .graph import DepGraph, depth_by_index
from .heaviness import (
    all_edge_heaviness,
    downstream_heaviness_profile,
    gini,
    max_co_heaviness_by_index,
)

THREADS_ENV = "DEPHEAVY_THREADS"


@dataclass(frozen=True)
class StatsConfig:
    hc_penalty: int = HC_PENALTY
    hid_penalty: int = HID_PENALTY
    mhp_shift: int = MHP_SHIFT
    threads: int | None = None          # None: cpu count capped by DEPHEAVY_THREADS


def resolve_threads(requested: int | None = None) -> int:
    cap = os.environ.get(THREADS_ENV)
    limit = max(1, int(cap)) if cap else None
    threads = requested if requested else (os.cpu_count() or 1)
    if limit is not None:
        threads = min(threads, limit)
    return max(1, threads)


@dataclass
class PackageStatsRow:
    name: str
    repository: str
    n_strong: int
    k_p: int
    mhp: int
    mhp_parents: list[str]
    adjusted_mhp: Fraction
    mcohp: int
    mcohp_pair: tuple[str, str] | None
    k_c: int
    hc: Fraction | None                 # absent (None) when k_c == 0
    adjusted_hc: Fraction | None
    k_d: int
    hd: Fraction | None
    k_id: int
    hid: Fraction | None
    adjusted_hid: Fraction | None
    total_downstream: int
    gini_from_parents: Fraction | None
    gini_on_children: Fraction | None
    depth: int


def compute_all_stats(g: DepGraph, config: StatsConfig = StatsConfig()) -> list[PackageStatsRow]:
    """One row per package, sorted by name; deterministic regardless of the
    thread count (rows are computed into name-order slots)."""
    n = len(g)
    if n == 0:
        return []
    edge_h = all_edge_heaviness(g)
    n_max = max(len(ps) for ps in g.strong_parents)
    rows: list[PackageStatsRow | None] = [None] * n

    def build_row(i: int) -> PackageStatsRow:
        parents = g.strong_parents[i]
        k_p = len(parents)
        in_h = [edge_h[(q, i)] for q in parents]
        mhp = max(in_h, default=0)
        mhp_parents = [g.names[q] for q, h in zip(parents, in_h) if h == mhp] if k_p else []
        children = g.strong_children[i]
        k_c = len(children)
        out_h = [edge_h[(i, c)] for c in children]
        hc = Fraction(sum(out_h), k_c) if k_c else None
        profile = downstream_heaviness_profile(g, i)
        k_d = len(profile)
        total = sum(h for _, h in profile)
        child_set = set(children)
        id_hs = [h for b, h in profile if b not in child_set]
        k_id = len(id_hs)
        mcohp, pair_idx = max_co_heaviness_by_index(g, i, in_h or None)
        if n_max >= 1:
            adj_mhp = Fraction(mhp) * Fraction(k_p + config.mhp_shift, n_max)
        else:
            adj_mhp = Fraction(0)
        return PackageStatsRow(
            name=g.names[i],
            repository=g.repositories[i],
            n_strong=g.up[i].bit_count(),
            k_p=k_p,
            mhp=mhp,
            mhp_parents=mhp_parents,
            adjusted_mhp=adj_mhp,
            mcohp=max(mcohp, 0),
            mcohp_pair=(g.names[pair_idx[0]], g.names[pair_idx[1]]) if pair_idx else None,
            k_c=k_c,
            hc=hc,
            adjusted_hc=hc * Fraction(k_c, k_c + config.hc_penalty) if hc is not None else None,
            k_d=k_d,
            hd=Fraction(total, k_d) if k_d else None,
            k_id=k_id,
            hid=Fraction(sum(id_hs), k_id) if k_id else None,
            adjusted_hid=(Fraction(sum(id_hs), k_id) * Fraction(k_id, k_id + config.hid_penalty)
                          if k_id else None),
            total_downstream=total,
            gini_from_parents=gini(in_h) if k_p else None,
            gini_on_children=gini(out_h) if k_c else None,
            depth=depth_by_index(g, i),
        )

    threads = resolve_threads(config.threads)
    if threads <= 1 or n < 64:
        for i in range(n):
            rows[i] = build_row(i)
    else:
        def run_chunk(start: int):
            for i in range(start, n, threads):
                rows[i] = build_row(i)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_chunk, range(threads)))
    return rows  # type: ignore[return-value]


@dataclass
class RepoSummary:
    package_count: int
    strong_deps: Fraction
    parents: Fraction
    mhp: Fraction
    mcohp: Fraction
    children: Fraction
    children_nonzero: Fraction | None
    hc_nonzero: Fraction | None
    indirect: Fraction
    indirect_nonzero: Fraction | None
    hid_nonzero: Fraction | None


#: (attribute, human label) in table order.
SUMMARY_METRICS = [
    ("strong_deps", "Number of strong dependencies"),
    ("parents", "Number of parents"),
    ("mhp", "Max heaviness from parents"),
    ("mcohp", "Max co-heaviness from parents"),
    ("children", "Number of children"),
    ("children_nonzero", "Number of children (with children > 0)"),
    ("hc_nonzero", "Heaviness on child packages (with children > 0)"),
    ("indirect", "Number of indirect downstream"),
    ("indirect_nonzero", "Number of indirect downstream (with indirect > 0)"),
    ("hid_nonzero", "Heaviness on indirect downstream packages (with indirect > 0)"),
]


@dataclass
class EcosystemSummary:
    repositories: dict[str, RepoSummary] = field(default_factory=dict)


def _mean(values: list) -> Fraction | None:
    if not values:
        return None
    return Fraction(sum(Fraction(v) for v in values), len(values))


def ecosystem_summary(rows: list[PackageStatsRow]) -> EcosystemSummary:
    """Per-repository means with the conditioning of the summary table."""
    if not rows:
        raise DomainError("summary of an empty table")
    by_repo: dict[str, list[PackageStatsRow]] = {}
    for row in rows:
        by_repo.setdefault(row.repository, []).append(row)
    out = EcosystemSummary()
    for repo in sorted(by_repo):
        rs = by_repo[repo]
        with_children = [r for r in rs if r.k_c > 0]
        with_indirect = [r for r in rs if r.k_id > 0]
        out.repositories[repo] = RepoSummary(
            package_count=len(rs),
            strong_deps=_mean([r.n_strong for r in rs]),
            parents=_mean([r.k_p for r in rs]),
            mhp=_mean([r.mhp for r in rs]),
            mcohp=_mean([r.mcohp for r in rs]),
            children=_mean([r.k_c for r in rs]),
            children_nonzero=_mean([r.k_c for r in with_children]),
            hc_nonzero=_mean([r.hc for r in with_children]),
            indirect=_mean([r.k_id for r in rs]),
            indirect_nonzero=_mean([r.k_id for r in with_indirect]),
            hid_nonzero=_mean([r.hid for r in with_indirect]),
        )
    return out


#: Default top-list cutoffs: adjusted max-from-parents, adjusted heaviness
#: on children, adjusted heaviness on indirect downstream, total downstream.
DEFAULT_TOP_THRESHOLDS: dict[str, float] = {
    "adjusted_mhp": 60.0,
    "adjusted_hc": 30.0,
    "adjusted_hid": 20.0,
    "total_downstream": 5000.0,
}


def top_lists(rows: list[PackageStatsRow],
              thresholds: dict[str, float] | None = None) -> dict[str, list[PackageStatsRow]]:
    """Descending lists of rows meeting each metric's threshold; defaults to
    the four standard lists."""
    if thresholds is None:
        thresholds = DEFAULT_TOP_THRESHOLDS
    out: dict[str, list[PackageStatsRow]] = {}
    for metric in sorted(thresholds):
        cutoff = thresholds[metric]
        qualifying = [r for r in rows
                      if getattr(r, metric) is not None and getattr(r, metric) >= cutoff]
        out[metric] = sorted(qualifying, key=lambda r: (-getattr(r, metric), r.name))
    return out
