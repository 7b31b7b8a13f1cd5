"""Optional checks against a real ecosystem snapshot.

Enable by pointing DEPHEAVY_SNAPSHOT at a snapshot in one of the documented
formats (normalized database JSON or edge-list CSV; see README).  The
pipeline is deterministic, so on the 2022-06-08 CRAN/Bioconductor snapshot
these reproduce the reference ecosystem numbers.
"""

import os

import pytest

SNAPSHOT_PATH = os.environ.get("DEPHEAVY_SNAPSHOT")

pytestmark = pytest.mark.skipif(
    not SNAPSHOT_PATH, reason="set DEPHEAVY_SNAPSHOT to a snapshot file to enable")

#: Reference per-repository means (CRAN, Bioconductor), checked to +-0.1
#: after rounding.
EXPECTED_TABLE1 = {
    "strong_deps": (30.8, 66.1),
    "parents": (5.1, 8.4),
    "mhp": (13.3, 24.6),
    "mcohp": (4.5, 12.2),
    "children": (4.7, 3.5),
    "children_nonzero": (18.2, 15.2),
    "hc_nonzero": (7.8, 14.8),
    "indirect": (29.0, 11.5),
    "indirect_nonzero": (256.8, 136.5),
    "hid_nonzero": (4.4, 8.3),
}

#: Reference top rows by heaviness on children: (n_strong, k_c, hc).
EXPECTED_TOP_HC = {
    "ecospat": (232, 3, 151.0),
    "RTCGA": (127, 9, 128.0),
    "lumi": (162, 13, 114.2),
    "Rcmdr": (135, 45, 101.2),
    "Deducer": (107, 5, 94.6),
    "caret": (81, 180, 41.0),
    "car": (87, 183, 40.6),
}


@pytest.fixture(scope="module")
def snapshot_rows():
    from depheavy import build_graph, compute_all_stats, load_database, load_edge_list

    assert SNAPSHOT_PATH is not None
    if SNAPSHOT_PATH.endswith(".csv"):
        db = load_edge_list(SNAPSHOT_PATH)
    else:
        db = load_database(SNAPSHOT_PATH)
    graph = build_graph(db)
    return db, graph, compute_all_stats(graph)


def test_snapshot_scale(snapshot_rows):
    db, graph, rows = snapshot_rows
    repos = {}
    for rec in db.packages.values():
        repos[rec.repository] = repos.get(rec.repository, 0) + 1
    assert repos.get("CRAN") == 18_638
    assert repos.get("Bioconductor") == 3_438
    assert graph.strong_edge_count == 124_251
    assert len(rows) == 22_076


def test_table1_means(snapshot_rows):
    from depheavy import ecosystem_summary

    _, _, rows = snapshot_rows
    summary = ecosystem_summary(rows)
    for attr, (cran, bioc) in EXPECTED_TABLE1.items():
        got_cran = round(float(getattr(summary.repositories["CRAN"], attr)), 1)
        got_bioc = round(float(getattr(summary.repositories["Bioconductor"], attr)), 1)
        assert abs(got_cran - cran) <= 0.1, (attr, got_cran, cran)
        assert abs(got_bioc - bioc) <= 0.1, (attr, got_bioc, bioc)


def test_table2_hc_rows(snapshot_rows):
    _, _, rows = snapshot_rows
    by_name = {r.name: r for r in rows}
    for name, (n_strong, k_c, hc) in EXPECTED_TOP_HC.items():
        row = by_name[name]
        assert row.n_strong == n_strong
        assert row.k_c == k_c
        assert round(float(row.hc), 1) == hc


def test_core_graph_counts(snapshot_rows):
    from depheavy import core_graph

    _, graph, _ = snapshot_rows
    core = core_graph(graph, 30)
    assert core.retained_nodes == 4_302
    assert core.retained_edges == 3_950
    assert round(float(core.flow_fraction) * 100, 1) == 44.2


def test_heaviest_parent_of_minbar(snapshot_rows):
    from depheavy import max_heaviness_from_parents

    _, graph, _ = snapshot_rows
    h_max, parents = max_heaviness_from_parents(graph, "MinBAR")
    assert h_max == 206
    assert parents == ["ecospat"]


def test_total_downstream_of_ggplot2(snapshot_rows):
    from depheavy import heaviness_on_downstream, total_downstream_heaviness

    _, graph, _ = snapshot_rows
    assert total_downstream_heaviness(graph, "ggplot2") == 82_830
    assert heaviness_on_downstream(graph, "ggplot2").k_d == 5_622
