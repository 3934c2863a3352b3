"""Sampled estimation of in-/out-ball size fractions.

For each queried vertex u the estimator reports which fraction of the
working vertex set lies within one-way distance r of u, outward and
inward, from t = ceil(5 * eps^-2 * ln n) uniform samples drawn with
replacement.  Distances between the query side and the sample side come
from one batched Dijkstra over whichever side is smaller.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .graph import IN, OUT, Graph, distance_matrix, vertex_ids


def sample_count(n: int, epsilon: float) -> int:
    """t = ceil(5 * eps^-2 * ln n), floored at one sample for n = 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    return max(1, math.ceil(5.0 * epsilon ** -2 * math.log(n)))


@dataclass(frozen=True)
class FractionEstimates:
    """Ball-fraction estimates for one radius.

    out_counts/in_counts hold raw sample hits per queried vertex, so every
    reported fraction is exactly a multiple of 1/t.  sample records the
    drawn vertex ids with multiplicity (length t).
    """

    r: float
    epsilon: float
    t: int
    sample: tuple
    out_counts: dict
    in_counts: dict

    def f_out(self, u) -> float:
        return self.out_counts[u] / self.t

    def f_in(self, u) -> float:
        return self.in_counts[u] / self.t


def estimate_ball_fractions(g: Graph, restrict, r: float, epsilon: float,
                            centers, rng: random.Random) -> FractionEstimates:
    """Estimate out- and in-ball fractions at radius r for every vertex in
    centers, within G(restrict).  centers must be a subset of restrict."""
    if r <= 0:
        raise ValueError("r must be positive")
    verts = vertex_ids(g, restrict)
    n = len(verts)
    if n == 0:
        raise ValueError("restrict must be non-empty")
    vset = set(verts)
    U = sorted(set(centers))
    for u in U:
        if u not in vset:
            raise ValueError(f"queried vertex {u} not inside restrict")
    t = sample_count(n, epsilon)
    sample = [verts[rng.randrange(n)] for _ in range(t)]

    pos = {v: i for i, v in enumerate(verts)}
    mult = np.bincount([pos[v] for v in sample], minlength=n).astype(np.int64)
    distinct = sorted(set(sample))

    out_counts = {}
    in_counts = {}
    if len(U) <= len(distinct):
        # search from the query side: row u gives d(u, .) then d(., u)
        d_from = distance_matrix(g, restrict, sources=U, direction=OUT)
        d_to = distance_matrix(g, restrict, sources=U, direction=IN)
        for i, u in enumerate(U):
            out_counts[u] = int(mult[d_from[i] <= r].sum())
            in_counts[u] = int(mult[d_to[i] <= r].sum())
    else:
        # search from the sample side: row v gives d(v, .) then d(., v)
        d_from = distance_matrix(g, restrict, sources=distinct, direction=OUT)
        d_to = distance_matrix(g, restrict, sources=distinct, direction=IN)
        cols = np.asarray([pos[u] for u in U], dtype=np.int64)
        w = np.asarray([mult[pos[v]] for v in distinct], dtype=np.int64)
        # d(v, u) <= r accumulates toward f_in(u); d(u, v) <= r toward f_out(u)
        in_hits = w @ (d_from[:, cols] <= r)
        out_hits = w @ (d_to[:, cols] <= r)
        for j, u in enumerate(U):
            out_counts[u] = int(out_hits[j])
            in_counts[u] = int(in_hits[j])

    return FractionEstimates(float(r), float(epsilon), t, tuple(sample),
                             out_counts, in_counts)
