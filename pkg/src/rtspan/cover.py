"""Source-wise round-trip covers by recursive carve-or-partition.

One recursion works on a shrinking vertex set: when a quarter of it sits
in everyone's estimated in/out neighborhood, a single ball around the
smallest such vertex is carved off; otherwise an exponential-clock
partition splits the set and the recursion descends into each part.
Repeating the recursion with independent randomness and unioning the
balls amplifies the per-run success probability into a cover.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .estimate import estimate_ball_fractions
from .graph import IN, OUT, Graph, round_trip_ball, vertex_ids
from .partition import cluster


@dataclass(frozen=True)
class CoverParams:
    """Tuning constants: ball/estimation constant c >= 1, estimation
    tolerance, and an extra multiplier on the amplification trial count."""

    c: int = 4
    epsilon: float = 0.125
    trial_mult: int = 1

    def __post_init__(self):
        if not isinstance(self.c, int) or self.c < 1:
            raise ValueError("c must be an integer >= 1")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if not isinstance(self.trial_mult, int) or self.trial_mult < 1:
            raise ValueError("trial_mult must be an integer >= 1")


@dataclass(frozen=True)
class Cover:
    """Balls collected over one or more recursion runs.

    failure_parts records whole working sets returned by a bail-out exit
    (no radius guarantee; expected never in practice).  Within a single
    run, ball member sets and failure parts are pairwise disjoint; across
    trials they may overlap.
    """

    balls: tuple
    failure_parts: tuple
    r: float
    params: CoverParams
    k: int | None = None
    R: float | None = None
    trials: int = 1
    max_depth: int = 0

    def vertex_ball_counts(self) -> dict:
        counts = {}
        for b in self.balls:
            for v in b.members:
                counts[v] = counts.get(v, 0) + 1
        return counts


def _ceil_root(s: int, k: int) -> int:
    """Smallest integer a with a**k >= s, computed without float error."""
    a = 1
    while a ** k < s:
        a += 1
    return a


def recursive_cover(g: Graph, restrict, r: float, sources, params: CoverParams | None = None,
                    rng: random.Random | None = None) -> Cover:
    """One randomized carve-or-partition run over G(restrict).

    Emits disjoint balls of round-trip radius at most 2(c+1)*r such that,
    with the guaranteed probability, every source stays together with its
    near vertices in some ball.  sources must be a subset of restrict.
    """
    if params is None:
        params = CoverParams()
    if rng is None:
        raise ValueError("rng is required")
    if r <= 0:
        raise ValueError("r must be positive")
    base = frozenset(vertex_ids(g, restrict)) if restrict is not None else frozenset(range(g.n))
    S0 = frozenset(sources)
    if not S0 <= base:
        raise ValueError("sources must be a subset of restrict")
    c = params.c

    balls = []
    failures = []
    deepest = [0]

    def rec(verts, S, depth):
        if depth > deepest[0]:
            deepest[0] = depth
        if not verts or not S:
            return
        if len(S) == 1:
            (u,) = S
            balls.append(round_trip_ball(g, verts, u, r))
            return
        est = estimate_ball_fractions(g, verts, c * r, params.epsilon, verts, rng)
        u_out = {u for u in verts if est.f_out(u) >= 0.75}
        u_in = {u for u in verts if est.f_in(u) >= 0.75}
        core = u_out & u_in
        nv = len(verts)
        if core:
            if len(core) < nv / 4:
                # estimates disagree with themselves; bail out with one
                # unguaranteed part rather than mis-carve
                failures.append(frozenset(verts))
                return
            u = min(core)
            ru = rng.uniform(2 * c * r, 2 * (c + 1) * r)
            b = round_trip_ball(g, verts, u, ru)
            balls.append(b)
            rec(verts - b.members, S - b.members, depth + 1)
            return
        if len(u_out) <= nv / 2:
            part = cluster(g, verts, sorted(verts - u_out), r, len(S), OUT, rng)
        else:
            part = cluster(g, verts, sorted(verts - u_in), r, len(S), IN, rng)
        pieces = part.parts()
        if max(len(p) for p in pieces) > 7 * nv / 8:
            failures.append(frozenset(verts))
            return
        for p in pieces:
            rec(frozenset(p), S & p, depth + 1)

    rec(base, S0, 1)

    total = sum(len(b.members) for b in balls) + sum(len(f) for f in failures)
    seen = set()
    for b in balls:
        seen |= b.members
    for f in failures:
        seen |= f
    assert len(seen) == total, "carved parts must be disjoint within one run"

    return Cover(tuple(balls), tuple(failures), float(r), params,
                 max_depth=deepest[0])


def swrt_cover(g: Graph, k: int, R: float, sources, params: CoverParams | None = None,
               rng: random.Random | None = None) -> Cover:
    """Source-wise round-trip cover at target distance R.

    Sets the carve radius r = 6*R*k*ln(n) and unions the balls of
    trial_mult * c * ceil(s^(1/k)) * ceil(ln n) independent recursion
    runs, each seeded from its own child stream so the trial count can
    change without disturbing earlier trials.
    """
    if params is None:
        params = CoverParams()
    if rng is None:
        raise ValueError("rng is required")
    if not isinstance(k, int) or k <= 1:
        raise ValueError("k must be an integer > 1")
    if R <= 0:
        raise ValueError("R must be positive")
    S = frozenset(sources)
    if not S:
        raise ValueError("sources must be non-empty")
    allv = frozenset(range(g.n))
    if not S <= allv:
        raise ValueError("sources must be vertices of g")

    n = g.n
    r = 6.0 * R * k * math.log(n) if n >= 2 else float(R)
    s = len(S)
    trials = params.trial_mult * params.c * _ceil_root(s, k) * max(1, math.ceil(math.log(n)))

    base = rng.getrandbits(64)
    balls = []
    failures = []
    deepest = 0
    for i in range(trials):
        sub = random.Random(f"{base}:{i}")
        one = recursive_cover(g, allv, r, S, params, sub)
        balls.extend(one.balls)
        failures.extend(one.failure_parts)
        if one.max_depth > deepest:
            deepest = one.max_depth
    return Cover(tuple(balls), tuple(failures), r, params, k=k, R=float(R),
                 trials=trials, max_depth=deepest)
