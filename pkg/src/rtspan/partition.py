"""Randomized digraph partitioning with exponential-clock radii.

Each center draws a radius from Exp(ln(s)/r); a vertex joins the center
whose clock reaches it first, measured by r_u - d(u, v) (or the reverse
distance for inward clustering).  Vertices no clock reaches form a
residual part.  One multi-source Dijkstra from a virtual root realizes
all assignments at once.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from heapq import heappop, heappush

from .graph import IN, OUT, Graph, membership, vertex_ids


def exp_inverse_transform(u: float, beta: float) -> float:
    """Map uniform u in (0,1] to Exponential(beta) by inversion: -ln(u)/beta."""
    if beta <= 0:
        raise ValueError("rate must be positive")
    if not 0.0 < u <= 1.0:
        raise ValueError("u must lie in (0, 1]")
    return -math.log(u) / beta


@dataclass
class RadiusSampler:
    """Exponential radius stream with rate beta over an injected rng."""

    beta: float
    rng: random.Random

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("rate must be positive")

    def sample(self) -> float:
        # 1 - random() lies in (0, 1], keeping the inverse transform defined
        return exp_inverse_transform(1.0 - self.rng.random(), self.beta)


def sample_exponential(sampler: RadiusSampler) -> float:
    return sampler.sample()


@dataclass(frozen=True)
class Cluster:
    """One part of a Partition.

    radius is the sampled clock value r_u.  reach is the largest observed
    center-to-member distance (member-to-center for inward runs); it is
    recovered from the search labels, so it carries their float rounding.
    """

    center: int
    radius: float
    members: frozenset
    reach: float


@dataclass(frozen=True)
class Partition:
    """Clusters ordered by center id, plus the residual of unclaimed vertices."""

    clusters: tuple
    residual: frozenset

    def parts(self):
        out = [c.members for c in self.clusters]
        if self.residual:
            out.append(self.residual)
        return out

    def same_part(self, u, v) -> bool:
        for c in self.clusters:
            if u in c.members:
                return v in c.members
        return u in self.residual and v in self.residual


def cluster(g: Graph, restrict, centers, r: float, s: int, direction: str = OUT,
            rng: random.Random | None = None, radii=None) -> Partition:
    """Partition G(restrict) around `centers` with clock rate ln(s)/r.

    A vertex v is claimed by the center u maximizing r_u - d(u, v)
    (direction IN uses d(v, u)) when that maximum is positive; ties go to
    the smallest center id.  Unclaimed vertices form the residual, which
    never exceeds |restrict| - |centers|.

    radii, a {center: radius} mapping, bypasses sampling for deterministic
    tests; otherwise rng drives the exponential draws.
    """
    if not isinstance(s, int) or s < 2:
        raise ValueError("s must be an integer >= 2")
    if r <= 0:
        raise ValueError("r must be positive")
    member = membership(g, restrict)
    U = sorted(set(centers))
    for u in U:
        if not (0 <= u < g.n) or not member[u]:
            raise ValueError(f"center {u} not inside restrict")
    if not U:
        return Partition((), frozenset(vertex_ids(g, restrict)))

    if radii is None:
        if rng is None:
            raise ValueError("rng is required when radii are not injected")
        sampler = RadiusSampler(math.log(s) / r, rng)
        rad = {u: sampler.sample() for u in U}
    else:
        rad = {}
        for u in U:
            ru = float(radii[u])
            if ru < 0:
                raise ValueError("injected radius must be non-negative")
            rad[u] = ru

    maxr = max(rad.values())
    adj = g.adjacency(direction)

    # Virtual root: seed every center at offset maxr - r_u, then one
    # Dijkstra.  Heap keys order by (distance, claiming center), which
    # makes the smallest-center tie-break exact.
    nokey = (math.inf, g.n)
    best = [nokey] * g.n
    done = [False] * g.n
    heap = []
    for u in U:
        key = (maxr - rad[u], u)
        if key < best[u]:
            best[u] = key
            heappush(heap, (key[0], u, u))
    while heap:
        d, c, v = heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for nxt, w, _ in adj[v]:
            if done[nxt] or not member[nxt]:
                continue
            cand = (d + w, c)
            if cand < best[nxt]:
                best[nxt] = cand
                heappush(heap, (d + w, c, nxt))

    claimed = {u: [] for u in U}
    residual = []
    for v in vertex_ids(g, restrict):
        d, c = best[v]
        if d < maxr:
            claimed[c].append(v)
        else:
            residual.append(v)

    clusters = []
    for u in U:
        if not claimed[u]:
            continue
        offset = maxr - rad[u]
        reach = max(best[v][0] - offset for v in claimed[u])
        clusters.append(Cluster(u, rad[u], frozenset(claimed[u]), reach))
    return Partition(tuple(clusters), frozenset(residual))
