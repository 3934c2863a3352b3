import random

import pytest

from conftest import random_graph
from rtspan.cover import CoverParams
from rtspan.graph import Graph
from rtspan.linfty import linfty_merge_tree
from rtspan.spanner import SpannerResult, swrt_spanner, swrt_spanner_weighted
from rtspan.verify import check_stretch, stretch_bound


def cycle_graph(n, w=1.0):
    return Graph(n, [(i, (i + 1) % n, w) for i in range(n)])


class TestScaleSpanner:
    def test_cycle_needs_every_edge(self):
        g = cycle_graph(8)
        res = swrt_spanner(g, 2, [0], rng=random.Random(0))
        assert res.edges == tuple(range(8))
        rep = check_stretch(g, res.edges, [0], stretch_bound(2, g.n))
        assert rep.passed and rep.worst_ratio == 1.0

    def test_dag_is_empty(self):
        g = Graph(5, [(0, 1, 1.0), (1, 2, 2.0), (0, 3, 1.5), (3, 4, 1.0)])
        res = swrt_spanner(g, 2, [0, 3], rng=random.Random(1))
        assert res.edges == ()
        assert res.stats["scales"] == []
        assert res.stats["bottleneck_edges"] == 0

    def test_two_cycle_exact(self):
        g = Graph(2, [(0, 1, 3.0), (1, 0, 5.0)])
        res = swrt_spanner(g, 2, [0], rng=random.Random(2))
        assert res.edges == (0, 1)
        assert res.provenance == {0: "bottleneck", 1: "bottleneck"}
        rep = check_stretch(g, res.edges, [0], stretch_bound(2, g.n))
        assert rep.worst_ratio == 1.0

    def test_subgraph_and_provenance_shape(self):
        g = random_graph("sp1", 30, 120, strongly_connected=True)
        res = swrt_spanner(g, 2, [0, 7, 19], rng=random.Random(3))
        assert res.edges == tuple(sorted(set(res.edges)))
        assert all(0 <= e < g.m for e in res.edges)
        assert set(res.provenance) == set(res.edges)
        _, h1 = linfty_merge_tree(g)
        for e in h1:
            assert res.provenance[e] == "bottleneck"
        valid = {"bottleneck"} | {f"scale:{r['t']}" for r in res.stats["scales"]}
        assert set(res.provenance.values()) <= valid

    def test_stats_counters_consistent(self):
        g = random_graph("sp2", 25, 100, strongly_connected=True)
        res = swrt_spanner(g, 3, [2, 11], rng=random.Random(4))
        st = res.stats
        assert st["mode"] == "scales"
        assert (st["n"], st["m"], st["k"], st["sources"]) == (25, 100, 3, 2)
        assert st["total_edges"] == len(res.edges)
        assert st["failures"] == sum(r["failures"] for r in st["scales"])
        new = sum(r["new_edges"] for r in st["scales"])
        assert st["bottleneck_edges"] + new == st["total_edges"]
        for r in st["scales"]:
            if r["skipped"]:
                assert r["trials"] == 0 and r["new_edges"] == 0

    def test_deterministic_under_seed(self):
        g = random_graph("sp3", 20, 80, strongly_connected=True)
        a = swrt_spanner(g, 2, [0, 9], rng=random.Random(7))
        b = swrt_spanner(g, 2, [0, 9], rng=random.Random(7))
        assert a.edges == b.edges
        assert a.provenance == b.provenance
        assert a.stats == b.stats

    def test_stretch_holds_on_random_graph(self):
        g = random_graph("sp4", 30, 140, strongly_connected=True)
        src = [1, 8, 22]
        res = swrt_spanner(g, 2, src, rng=random.Random(11))
        rep = check_stretch(g, res.edges, src, stretch_bound(2, g.n))
        assert res.stats["failures"] == 0
        assert rep.passed
        assert rep.infinite_violations == 0

    def test_validation(self):
        g = cycle_graph(4)
        rng = random.Random(0)
        for bad_k in (1, 0, True, 2.5):
            with pytest.raises(ValueError, match="k must"):
                swrt_spanner(g, bad_k, [0], rng=rng)
        with pytest.raises(ValueError, match="rng"):
            swrt_spanner(g, 2, [0])
        with pytest.raises(ValueError, match="non-empty"):
            swrt_spanner(g, 2, [], rng=rng)
        with pytest.raises(ValueError, match="not a vertex"):
            swrt_spanner(g, 2, [5], rng=rng)


class TestWeightedSpanner:
    def test_dag_is_empty(self):
        g = Graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])
        res = swrt_spanner_weighted(g, 2, [0], rng=random.Random(0))
        assert res.edges == ()
        assert res.stats["mode"] == "weighted"
        assert all(r["balls"] >= 1 for r in res.stats["scales"])

    def test_cycle_needs_every_edge(self):
        g = cycle_graph(6)
        res = swrt_spanner_weighted(g, 2, [0], rng=random.Random(1))
        assert res.edges == tuple(range(6))
        assert set(res.provenance.values()) <= {f"wscale:{r['i']}"
                                                for r in res.stats["scales"]}

    def test_edgeless_graph(self):
        g = Graph(3, [])
        res = swrt_spanner_weighted(g, 2, [0], rng=random.Random(2))
        assert res.edges == () and res.stats["scales"] == []

    def test_both_variants_meet_bound(self):
        g = random_graph("spw", 30, 120, strongly_connected=True)
        src = [3, 17]
        bound = stretch_bound(2, g.n)
        a = swrt_spanner(g, 2, src, rng=random.Random(5))
        b = swrt_spanner_weighted(g, 2, src, rng=random.Random(5))
        for res in (a, b):
            rep = check_stretch(g, res.edges, src, bound)
            assert rep.passed and rep.infinite_violations == 0

    def test_validation_shared(self):
        g = cycle_graph(3)
        with pytest.raises(ValueError, match="k must"):
            swrt_spanner_weighted(g, 1, [0], rng=random.Random(0))
