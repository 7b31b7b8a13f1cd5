"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
(run with `pytest -v -s tests/test_acceptance.py` to see the lines live)."""

import contextlib
import math
import os
import random
import resource
import time

from depheavy import (
    classify_parent_pair,
    co_heaviness,
    edge_betweenness,
    edge_heaviness,
    gini,
    heaviness_from_upstream,
    heaviness_on_children,
    heaviness_on_downstream,
    max_co_heaviness,
    source_score,
    total_downstream_heaviness,
    transmission_length,
    whatif_demote,
)
from depheavy.adjusted import adjusted_penalized
from depheavy.analytics import DiGraphLite
from depheavy.fitting import fit_power_law, fit_stretched_exponential
from depheavy.heaviness import all_edge_heaviness
from oracle import Oracle
from util import G1_EDGES, make_graph, random_dag_edges


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\n[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"\n[ACCEPTANCE] {name}: PASS")


def test_oracle_equivalence_200_random_dags():
    with criterion("oracle-equivalence (200 random DAGs, exact, < 10 s)"):
        t0 = time.time()
        rng_master = random.Random(0xACCE)
        for seed in range(200):
            names, edges = random_dag_edges(seed)
            g = make_graph(edges, nodes=names)
            oracle = Oracle(edges, names)

            # h on every strong edge
            edge_h = all_edge_heaviness(g)
            for (pi, ci), h in edge_h.items():
                assert h == oracle.h(g.names[pi], g.names[ci])

            # h_c, h_d, h_id, total on every package (profile reuses h_u)
            for name in names:
                i = g.id(name)
                d = heaviness_on_downstream(g, name)
                hd, hid, k_d, k_id = oracle.hd_hid(name)
                assert (d.k_d, d.k_id) == (k_d, k_id)
                assert d.hd == (hd if hd is not None else 0)
                assert d.hid == (hid if hid is not None else 0)
                assert heaviness_on_children(g, name) == (oracle.hc(name) or 0)
                assert total_downstream_heaviness(g, name) == oracle.total_downstream(name)

            # h_u on sampled (upstream, package) pairs
            sample_nodes = names[:: max(1, len(names) // 20)]
            for n in sample_nodes:
                for u in sorted(oracle.up_set(n))[:8]:
                    assert heaviness_from_upstream(g, u, n) == oracle.h_u(u, n)

            # co-heaviness over parent pairs (capped per graph)
            budget = 250
            for n in names:
                parents = sorted(g.names[q] for q in g.strong_parents[g.id(n)])
                for x in range(len(parents)):
                    for y in range(x + 1, len(parents)):
                        if budget == 0:
                            break
                        budget -= 1
                        assert (co_heaviness(g, parents[x], parents[y], n).h_co
                                == oracle.h_co(parents[x], parents[y], n))

            # what-if on random parent subsets
            with_parents = [n for n in names if g.strong_parents[g.id(n)]]
            for _ in range(3):
                if not with_parents:
                    break
                target = rng_master.choice(with_parents)
                parents = [g.names[q] for q in g.strong_parents[g.id(target)]]
                subset = rng_master.sample(parents, rng_master.randint(0, len(parents)))
                assert whatif_demote(g, target, subset) == oracle.whatif(target, subset)

            # source score on every strong edge
            for pi, ci in g.strong_edges():
                got = source_score(g, g.names[pi], g.names[ci])
                assert (got.score, got.via_total, got.counterpart) == \
                    oracle.source_score(g.names[pi], g.names[ci])

        elapsed = time.time() - t0
        print(f"  200 DAGs checked in {elapsed:.1f}s")
        assert elapsed < 10.0


def test_fixture_suite_g1_g2():
    with criterion("fixture suite (G1/G2 derived values, exact)"):
        g1 = make_graph(G1_EDGES)
        g2 = make_graph(G1_EDGES + [("P", "Q")])

        e = edge_heaviness(g1, "A", "P")
        assert (e.n1, e.n2, e.h) == (5, 3, 2)

        co = co_heaviness(g1, "A", "B", "P")
        assert co.h_co == 2
        assert co.s_ab_size == co.h_co + co.s_a_size + co.s_b_size == 5
        assert (co.s_a_size, co.s_b_size) == (2, 1)
        assert max_co_heaviness(g1, "P") == (2, ("A", "B"))

        assert heaviness_from_upstream(g1, "C", "P") == 2
        assert heaviness_on_children(g1, "C") == 2
        d = heaviness_on_downstream(g1, "C")
        assert d.hid == 2 and d.k_id == 1
        assert total_downstream_heaviness(g1, "C") == 6

        from depheavy import depth
        assert depth(g1, "P") == 3
        assert transmission_length(DiGraphLite.from_dep_graph(g1), "E") == 3

        rel = classify_parent_pair(g1, "A", "B", "P")
        assert (rel.category, rel.witness) == ("common-upstream", "C")

        s = source_score(g2, "A", "P")
        assert (s.score, s.via_total, s.counterpart) == (0, 2, "C")

        assert whatif_demote(g1, "P", ["A"]) == (3, ["A", "D"])


def test_nine_upstream_reference_fixture():
    with criterion("reference fixture (upstream 9 minus 6 leaves h = 3)"):
        edges = [("a", "p"), ("x", "p"), ("a1", "a"), ("a2", "a"),
                 ("x1", "x"), ("x2", "x"), ("x3", "x"), ("x4", "x"), ("x5", "x")]
        g = make_graph(edges)
        e = edge_heaviness(g, "a", "p")
        assert (e.n1, e.n2) == (9, 6)
        assert e.h == 3


def test_structural_invariants():
    """h_u >= h on every edge; hd >= hc on every package with children;
    reduced sets of a parent pair disjoint; gini in [0, 1); adjusted values
    never above raw.  Zero violations over 200 random DAGs.

    Known to fail on the hd >= hc clause: that inequality is a theorem only
    when a package's downstream consists of its direct children (each
    child's upstream-heaviness dominates its edge heaviness); a remoter
    downstream package that independently imports part of the upstream can
    pull the downstream mean below hc.  The strict form is kept here, and
    fails with a counterexample, rather than being quietly weakened; the
    module tests pin the conditional theorem that does hold.
    """
    with criterion("structural invariants (strict hd >= hc form; known red)"):
        violations = []
        rng = random.Random(77)
        for seed in range(200):
            names, edges = random_dag_edges(seed)
            g = make_graph(edges, nodes=names)
            edge_h = all_edge_heaviness(g)
            for (pi, ci), h in edge_h.items():
                if heaviness_from_upstream(g, g.names[pi], g.names[ci]) < h:
                    violations.append(("h_u >= h", seed, g.names[pi], g.names[ci]))
            for name in names:
                i = g.id(name)
                children = g.strong_children[i]
                if children:
                    hc = heaviness_on_children(g, name)
                    d = heaviness_on_downstream(g, name)
                    if d.hd < hc:
                        violations.append(
                            ("hd >= hc", seed, name, f"hd={d.hd} hc={hc}"))
                parents = sorted(g.names[q] for q in g.strong_parents[i])
                for x in range(min(len(parents), 4)):
                    for y in range(x + 1, min(len(parents), 4)):
                        co = co_heaviness(g, parents[x], parents[y], name)
                        # disjointness is asserted inside co_heaviness;
                        # recheck the reduced-set identity here
                        if co.s_ab_size != co.h_co + co.s_a_size + co.s_b_size:
                            violations.append(("S_A disjoint S_B", seed, name, ""))
                in_h = [edge_h[(q, i)] for q in g.strong_parents[i]]
                if in_h:
                    value = gini(in_h)
                    if not (0 <= value < 1):
                        violations.append(("gini in [0,1)", seed, name, value))
                h_val = rng.randint(0, 60)
                k_val = rng.randint(0, 40)
                if adjusted_penalized(h_val, k_val, rng.randint(1, 30)) > h_val:
                    violations.append(("adjusted <= raw", seed, name, ""))
        assert not violations, (
            f"{len(violations)} violation(s); first: {violations[0]!r} — "
            "hd >= hc holds only when downstream == children; "
            "see this test's docstring")


def test_betweenness_against_bruteforce():
    with criterion("betweenness (50 random graphs <= 15 nodes, 1e-9)"):
        for seed in range(50):
            rng = random.Random(seed)
            n = rng.randint(2, 15)
            names = [f"v{i:02d}" for i in range(n)]
            edges = {(names[a], names[b])
                     for _ in range(rng.randint(1, 3 * n))
                     for a, b in [sorted(rng.sample(range(n), 2))]}
            graph = DiGraphLite(names, sorted(edges))
            got = edge_betweenness(graph)
            oracle = Oracle(sorted(edges), names)
            brute = oracle.betweenness()
            for edge in got:
                assert abs(got[edge] - brute[edge]) < 1e-9
            assert abs(sum(got.values()) - oracle.pairwise_distance_total()) < 1e-9


def test_fit_recovery():
    with criterion("fit recovery (params within tolerance, < 5 s)"):
        t0 = time.time()
        c, lam, beta = 0.46, 1.66, 0.37
        data = {h: c * math.exp(-lam * h ** beta) for h in range(0, 101)}
        fit = fit_stretched_exponential(data)
        assert abs(fit.params["c"] - c) <= 0.01
        assert abs(fit.params["lambda"] - lam) <= 0.01
        assert abs(fit.params["beta"] - beta) <= 0.01
        assert fit.r_squared >= 0.9999

        pl = fit_power_law(histogram={s: 1000.0 * s ** -2 for s in range(1, 21)},
                           drop_top=0)
        assert abs(pl.params["exponent"] - 2.0) <= 1e-6
        elapsed = time.time() - t0
        print(f"  fits in {elapsed:.2f}s")
        assert elapsed < 5.0


def test_determinism_across_threads(tmp_path):
    with criterion("determinism (1 thread vs max threads, byte-identical)"):
        from depheavy.cli import main

        rng = random.Random(1234)
        lines = ["child,parent,relation"]
        seen = set()
        for i in range(1, 500):
            for p in rng.sample(range(i), min(i, rng.randint(0, 4))):
                if (i, p) not in seen:
                    seen.add((i, p))
                    lines.append(f"node{i:04d},node{p:04d},strong")
        src = tmp_path / "medium.csv"
        src.write_text("\n".join(lines) + "\n", encoding="utf-8")

        outputs = {}
        for fmt in ("csv", "json"):
            for label, threads in (("one", "1"), ("one-again", "1"),
                                   ("max", str(os.cpu_count() or 4))):
                out = tmp_path / f"{fmt}-{label}"
                old = os.environ.get("DEPHEAVY_THREADS")
                os.environ["DEPHEAVY_THREADS"] = threads
                try:
                    assert main(["stats", "--input", str(src), "--format", fmt,
                                 "--out", str(out)]) == 0
                finally:
                    if old is None:
                        os.environ.pop("DEPHEAVY_THREADS", None)
                    else:
                        os.environ["DEPHEAVY_THREADS"] = old
                outputs[(fmt, label)] = out.read_bytes()
            assert outputs[(fmt, "one")] == outputs[(fmt, "one-again")]
            assert outputs[(fmt, "one")] == outputs[(fmt, "max")]


def test_scale_22k_nodes_124k_edges():
    with criterion("scale (22k nodes / 124k edges, < 10 min, < 4 GB)"):
        from synth import scale_free_graph
        from depheavy.report import StatsConfig, compute_all_stats

        t0 = time.time()
        g = scale_free_graph(22_000, 124_000)
        rows = compute_all_stats(g, StatsConfig())
        elapsed = time.time() - t0
        peak_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / (1024 ** 2)
        print(f"  stats over {len(rows)} packages in {elapsed:.1f}s, "
              f"peak RSS {peak_gb:.2f} GB")
        assert len(rows) == 22_000
        assert g.strong_edge_count == 124_000
        # spot-check a hub row is fully populated
        hub = max(rows, key=lambda r: r.k_c)
        assert hub.k_c > 500 and hub.mhp >= 0 and hub.mcohp >= 0
        assert hub.hd is not None and hub.hid is not None
        assert elapsed < 600.0
        assert peak_gb < 4.0


def test_snapshot_suite_is_gated():
    with criterion("real-snapshot suite gated behind DEPHEAVY_SNAPSHOT"):
        gate = os.environ.get("DEPHEAVY_SNAPSHOT")
        if gate:
            assert os.path.exists(gate)
        # the optional suite must skip, not fail, when the variable is unset
        from test_snapshot_optional import SNAPSHOT_PATH
        assert SNAPSHOT_PATH == gate
