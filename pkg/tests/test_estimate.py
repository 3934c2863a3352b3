import math
import random

import pytest

from conftest import random_graph
from rtspan.estimate import FractionEstimates, estimate_ball_fractions, sample_count
from rtspan.graph import IN, OUT, UNREACHABLE, Graph, sssp


class TestSampleCount:
    def test_reference_value(self):
        assert sample_count(256, 0.125) == 1775

    def test_single_vertex_floor(self):
        assert sample_count(1, 0.5) == 1

    def test_monotone_in_epsilon(self):
        assert sample_count(100, 0.25) > sample_count(100, 0.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            sample_count(0, 0.5)
        for eps in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                sample_count(16, eps)


class FixedSequence:
    """rng stub whose randrange walks a preset index list."""

    def __init__(self, seq):
        self.seq = list(seq)
        self.pos = 0

    def randrange(self, n):
        v = self.seq[self.pos % len(self.seq)]
        self.pos += 1
        assert 0 <= v < n
        return v


def recount(g, restrict, r, u, sample):
    """Per-sample hit recount straight from two single-source searches."""
    d_out = sssp(g, restrict, u, OUT).dist
    d_in = sssp(g, restrict, u, IN).dist
    fo = sum(1 for v in sample if d_out[v] is not UNREACHABLE and d_out[v] <= r)
    fi = sum(1 for v in sample if d_in[v] is not UNREACHABLE and d_in[v] <= r)
    return fo, fi


class TestEstimate:
    def test_complete_graph_all_ones(self):
        n = 6
        edges = [(u, v, 1.0) for u in range(n) for v in range(n) if u != v]
        g = Graph(n, edges)
        est = estimate_ball_fractions(g, None, 1.0, 0.5, range(n), random.Random(1))
        for u in range(n):
            assert est.f_out(u) == 1.0 and est.f_in(u) == 1.0

    def test_edgeless_graph_near_uniform(self):
        g = Graph(16, [])
        est = estimate_ball_fractions(g, None, 1.0, 0.125, range(16),
                                      random.Random(42))
        assert est.t == sample_count(16, 0.125)
        for u in range(16):
            assert abs(est.f_out(u) - 1 / 16) <= est.epsilon
            assert est.f_out(u) == est.f_in(u)   # only the vertex itself is in reach

    def test_counts_are_exact_sample_hits(self):
        g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
        rng = FixedSequence([0, 1, 2, 2])
        est = estimate_ball_fractions(g, None, 1.0, 0.9, [0, 1, 2], rng)
        # t = ceil(5 * (10/9)^2 * ln 3) = 7, sample cycles 0,1,2,2,0,1,2
        assert est.t == 7
        assert est.sample == (0, 1, 2, 2, 0, 1, 2)
        # within distance 1: out of 0 -> {0,1}; in of 0 -> {0}
        assert est.out_counts[0] == 4 and est.in_counts[0] == 2
        assert est.out_counts[1] == 5 and est.in_counts[1] == 4
        assert est.out_counts[2] == 3 and est.in_counts[2] == 5
        for u in range(3):
            assert isinstance(est.out_counts[u], int)
            assert est.f_out(u) * est.t == est.out_counts[u]

    def test_query_side_branch_matches_recount(self):
        g = random_graph("est-q", 30, 110)
        rng = random.Random(9)
        est = estimate_ball_fractions(g, None, 1.5, 0.5, [7], rng)
        fo, fi = recount(g, None, 1.5, 7, est.sample)
        assert est.out_counts[7] == fo and est.in_counts[7] == fi

    def test_sample_side_branch_matches_recount(self):
        g = random_graph("est-s", 40, 150)
        rng = FixedSequence([0, 3, 5])          # 3 distinct draws, 40 queries
        est = estimate_ball_fractions(g, None, 2.0, 0.5, range(40), rng)
        assert len(set(est.sample)) == 3
        for u in range(40):
            fo, fi = recount(g, None, 2.0, u, est.sample)
            assert est.out_counts[u] == fo, u
            assert est.in_counts[u] == fi, u

    def test_restrict_hides_outside_vertices(self):
        g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
        rng = FixedSequence([0, 1])
        est = estimate_ball_fractions(g, [0, 1], 5.0, 0.9, [0], rng)
        assert set(est.sample) <= {0, 1}
        # 2 is cut away, so nothing comes back into 0
        assert est.in_counts[0] == est.sample.count(0)
        assert est.out_counts[0] == est.t

    def test_deterministic_under_seed(self):
        g = random_graph("est-d", 25, 90)
        a = estimate_ball_fractions(g, None, 1.25, 0.5, range(25), random.Random(3))
        b = estimate_ball_fractions(g, None, 1.25, 0.5, range(25), random.Random(3))
        assert a == b

    def test_validation(self):
        g = Graph(4, [(0, 1, 1.0)])
        rng = random.Random(0)
        with pytest.raises(ValueError, match="r must"):
            estimate_ball_fractions(g, None, 0.0, 0.5, [0], rng)
        with pytest.raises(ValueError, match="epsilon"):
            estimate_ball_fractions(g, None, 1.0, 1.0, [0], rng)
        with pytest.raises(ValueError, match="restrict"):
            estimate_ball_fractions(g, [], 1.0, 0.5, [], rng)
        with pytest.raises(ValueError, match="not inside"):
            estimate_ball_fractions(g, [0, 1], 1.0, 0.5, [2], rng)
