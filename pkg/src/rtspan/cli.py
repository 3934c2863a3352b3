"""Command line front door.

Subcommands: gen (seeded random digraphs), spanner, cover, partition
(thin wrappers over the library), verify (re-check a spanner file against
its graph), bench (sweep a parameter grid and tabulate).

Output convention: --format edgelist writes the primary artifact as an
edge list, with a stats document in <output>.stats.json (or on stderr
when writing to stdout); --format json-stats writes one JSON document
instead.  Every stats document records the seed.  Exit codes: 0 when all
requested checks pass, 1 when one fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field

from .cover import CoverParams, swrt_cover
from .graph import Graph, EdgeListError, parse_edge_list, write_edge_list
from .partition import cluster
from .spanner import swrt_spanner, swrt_spanner_weighted
from .verify import check_cover, check_stretch, stretch_bound

SCHEMA = "rtspan.stats.v1"


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    k: int = 2
    sources: str | None = None
    seed: int = 0
    c: int = 4
    epsilon: float | None = None
    trials_mult: int = 1
    weighted_variant: bool = False
    verify: bool = False
    fmt: str = "edgelist"
    extra: dict = field(default_factory=dict)


def generate_graph(n, m, rng, w_min=1.0, w_max=2.0, strongly_connected=False,
                   quantum=0.0625) -> Graph:
    """Seeded Erdős–Rényi digraph on distinct ordered pairs.

    strongly_connected first lays a random Hamiltonian cycle so every
    round-trip distance is finite (needs m >= n).  Weights default to a
    1/16 grid so independently computed path sums agree bit for bit;
    quantum=0 draws continuous uniforms instead.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if m < 0 or m > n * (n - 1):
        raise ValueError("m must fit in distinct ordered pairs")
    if strongly_connected and n > 1 and m < n:
        raise ValueError("strongly-connected mode needs m >= n")
    if not (0 < w_min <= w_max):
        raise ValueError("need 0 < w_min <= w_max")

    if quantum:
        lo = math.ceil(w_min / quantum)
        hi = math.floor(w_max / quantum)
        if lo > hi:
            raise ValueError("weight range contains no grid point")
        draw = lambda: rng.randint(lo, hi) * quantum
    else:
        draw = lambda: rng.uniform(w_min, w_max)

    edges = []
    used = set()
    if strongly_connected and n > 1:
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(n):
            u, v = perm[i], perm[(i + 1) % n]
            used.add((u, v))
            edges.append((u, v, draw()))
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or (u, v) in used:
            continue
        used.add((u, v))
        edges.append((u, v, draw()))
    return Graph(n, edges)


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _resolve_vertices(spec, g, seed, stream, allow_empty=False):
    """A bare integer samples that many distinct ids from a seeded stream;
    anything else is read as a file of whitespace-separated vertex ids."""
    if spec is None:
        raise ValueError(f"--{stream} is required")
    try:
        count = int(spec)
    except ValueError:
        with open(spec, "r", encoding="utf-8") as fh:
            toks = fh.read().split()
        ids = sorted({int(t) for t in toks})
        for v in ids:
            if not (0 <= v < g.n):
                raise ValueError(f"vertex id {v} out of range in {spec}")
        if not ids and not allow_empty:
            raise ValueError(f"{spec} lists no vertex ids")
        return ids
    if count == 0 and allow_empty:
        return []
    if not (1 <= count <= g.n):
        raise ValueError(f"--{stream} count must be in 1..{g.n}")
    rng = random.Random(f"{seed}:{stream}")
    return sorted(rng.sample(range(g.n), count))


def _params(cfg: RunConfig) -> CoverParams:
    eps = 0.125 if cfg.epsilon is None else cfg.epsilon
    return CoverParams(c=cfg.c, epsilon=eps, trial_mult=cfg.trials_mult)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_text(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(cfg: RunConfig, primary_text: str | None, stats: dict):
    """edgelist: primary artifact to --output/stdout, stats to a sidecar
    file or stderr.  json-stats: the stats document is the only output."""
    if cfg.fmt == "json-stats" or primary_text is None:
        _write_text(_dumps(stats), cfg.output)
        return
    _write_text(primary_text, cfg.output)
    if cfg.output is None:
        sys.stderr.write(_dumps(stats))
    else:
        _write_text(_dumps(stats), cfg.output + ".stats.json")


def _stretch_dict(rep) -> dict:
    return {
        "bound": rep.bound,
        "qualifying_pairs": rep.qualifying_pairs,
        "finite_violations": rep.finite_violations,
        "infinite_violations": rep.infinite_violations,
        "worst_ratio": rep.worst_ratio,
        "worst_pair": list(rep.worst_pair) if rep.worst_pair else None,
        "passed": rep.passed,
    }


def cmd_gen(cfg: RunConfig) -> int:
    x = cfg.extra
    rng = random.Random(f"{cfg.seed}:gen")
    g = generate_graph(x["n"], x["m"], rng, w_min=x["w_min"], w_max=x["w_max"],
                       strongly_connected=x["strongly_connected"], quantum=x["quantum"])
    text = write_edge_list(g)
    stats = {
        "schema": SCHEMA, "command": "gen", "seed": cfg.seed,
        "n": g.n, "m": g.m, "w_min": x["w_min"], "w_max": x["w_max"],
        "strongly_connected": x["strongly_connected"], "quantum": x["quantum"],
    }
    if cfg.fmt == "json-stats":
        stats["edge_list"] = text
        _write_text(_dumps(stats), cfg.output)
    else:
        _emit(cfg, text, stats)
    return 0


def cmd_spanner(cfg: RunConfig) -> int:
    g = _load_graph(cfg.input)
    sources = _resolve_vertices(cfg.sources, g, cfg.seed, "sources")
    params = _params(cfg)
    scale = 1.0
    gb = g
    if cfg.weighted_variant and g.m > 0:
        w_min = min(w for _, _, w in g.edges)
        if w_min < 1.0:
            # weighted construction needs weights >= 1; stretch is scale-free
            scale = 1.0 / w_min
            gb = Graph(g.n, [(u, v, w * scale) for u, v, w in g.edges])
    rng = random.Random(f"{cfg.seed}:spanner")
    build = swrt_spanner_weighted if cfg.weighted_variant else swrt_spanner
    result = build(gb, cfg.k, sources, params=params, rng=rng)
    stats = {
        "schema": SCHEMA, "command": "spanner", "seed": cfg.seed,
        "weight_scale": scale, "sources_resolved": sources,
    }
    stats.update(result.stats)
    ok = True
    if cfg.verify:
        rep = check_stretch(g, result.edges, sources, stretch_bound(cfg.k, g.n, params.c))
        stats["stretch"] = _stretch_dict(rep)
        ok = rep.passed
    text = write_edge_list(Graph(g.n, [g.edges[i] for i in result.edges]))
    _emit(cfg, text, stats)
    return 0 if ok else 1


def cmd_cover(cfg: RunConfig) -> int:
    g = _load_graph(cfg.input)
    radius = cfg.extra["radius"]
    sources = _resolve_vertices(cfg.sources, g, cfg.seed, "sources")
    rng = random.Random(f"{cfg.seed}:cover")
    cov = swrt_cover(g, cfg.k, radius, sources, params=_params(cfg), rng=rng)
    counts = cov.vertex_ball_counts()
    stats = {
        "schema": SCHEMA, "command": "cover", "seed": cfg.seed,
        "k": cfg.k, "radius": radius, "inner_radius": cov.r,
        "trials": cov.trials, "max_depth": cov.max_depth,
        "sources_resolved": sources,
        "balls": [{"center": b.center, "radius": b.radius, "size": len(b.members)}
                  for b in cov.balls],
        "failure_parts": [len(p) for p in cov.failure_parts],
        "max_vertex_ball_count": max(counts.values()) if counts else 0,
    }
    ok = True
    if cfg.verify:
        rep = check_cover(g, cov, sources)
        stats["cover_check"] = {
            "qualifying_pairs": rep.qualifying_pairs,
            "uncovered_count": rep.uncovered_count,
            "max_ball_radius": rep.max_ball_radius,
            "radius_bound": rep.radius_bound,
            "radius_ok": rep.radius_ok,
            "failure_count": rep.failure_count,
            "passed": rep.passed,
        }
        ok = rep.passed
    edge_ids = sorted({e for b in cov.balls for e in b.rt_tree_edges})
    text = write_edge_list(Graph(g.n, [g.edges[i] for i in edge_ids]))
    _emit(cfg, text, stats)
    return 0 if ok else 1


def cmd_partition(cfg: RunConfig) -> int:
    g = _load_graph(cfg.input)
    x = cfg.extra
    centers = _resolve_vertices(x["centers"], g, cfg.seed, "centers", allow_empty=True)
    rng = random.Random(f"{cfg.seed}:partition")
    part = cluster(g, None, centers, x["radius"], x["s"], direction=x["direction"], rng=rng)
    stats = {
        "schema": SCHEMA, "command": "partition", "seed": cfg.seed,
        "radius": x["radius"], "s": x["s"], "direction": x["direction"],
        "centers_resolved": centers,
        "clusters": [{"center": c.center, "radius": c.radius,
                      "members": sorted(c.members)} for c in part.clusters],
        "residual": sorted(part.residual),
    }
    _write_text(_dumps(stats), cfg.output)
    return 0


def _match_edge_indexes(g: Graph, h: Graph):
    """Map each subgraph edge to a distinct input edge with identical
    endpoints and weight; weights round-trip exactly through repr."""
    pool = {}
    for idx, (u, v, w) in enumerate(g.edges):
        pool.setdefault((u, v, w), []).append(idx)
    out = []
    for u, v, w in h.edges:
        bucket = pool.get((u, v, w))
        if not bucket:
            raise ValueError(f"spanner edge {u}->{v} w={w!r} is not an input edge")
        out.append(bucket.pop())
    return out


def cmd_verify(cfg: RunConfig) -> int:
    g = _load_graph(cfg.input)
    h = _load_graph(cfg.extra["spanner"])
    if h.n != g.n:
        raise ValueError("spanner file must keep the input vertex count")
    if cfg.k <= 1:
        raise ValueError("k must be an integer greater than 1")
    edge_ids = _match_edge_indexes(g, h)
    sources = _resolve_vertices(cfg.sources, g, cfg.seed, "sources")
    bound = cfg.extra["bound"]
    if bound is None:
        bound = stretch_bound(cfg.k, g.n, cfg.c)
    rep = check_stretch(g, edge_ids, sources, bound)
    stats = {
        "schema": SCHEMA, "command": "verify", "seed": cfg.seed,
        "k": cfg.k, "c": cfg.c, "spanner_edges": h.m,
        "sources_resolved": sources, "stretch": _stretch_dict(rep),
    }
    _write_text(_dumps(stats), cfg.output)
    return 0 if rep.passed else 1


def cmd_bench(cfg: RunConfig) -> int:
    x = cfg.extra
    params = _params(cfg)
    rows = []
    ok = True
    for n in x["ns"]:
        for s in x["ss"]:
            for k in x["ks"]:
                if k <= 1:
                    raise ValueError("k must be an integer greater than 1")
                cell = f"{cfg.seed}:bench:{n}:{s}:{k}"
                m = min(n * (n - 1), x["m_mult"] * n)
                g = generate_graph(n, m, random.Random(cell + ":gen"),
                                   strongly_connected=True)
                src = sorted(random.Random(cell + ":sources")
                             .sample(range(n), min(s, n)))
                t0 = time.perf_counter()
                res = swrt_spanner(g, k, src, params=params,
                                   rng=random.Random(cell + ":spanner"))
                dt = time.perf_counter() - t0
                rep = check_stretch(g, res.edges, src, stretch_bound(k, n, params.c))
                ok = ok and rep.passed
                rows.append({
                    "n": n, "s": s, "k": k, "m": m,
                    "edges": len(res.edges), "stretch": round(rep.worst_ratio, 4),
                    "failures": res.stats["failures"],
                    "passed": rep.passed, "seconds": round(dt, 4),
                })
    header = f"{'n':>6} {'s':>5} {'k':>3} {'m':>7} {'edges':>7} {'stretch':>9} {'failures':>9} {'passed':>7} {'seconds':>9}"
    lines = [header]
    for r in rows:
        lines.append(f"{r['n']:>6} {r['s']:>5} {r['k']:>3} {r['m']:>7} "
                     f"{r['edges']:>7} {r['stretch']:>9} {r['failures']:>9} "
                     f"{str(r['passed']):>7} {r['seconds']:>9}")
    table = "\n".join(lines) + "\n"
    stats = {"schema": SCHEMA, "command": "bench", "seed": cfg.seed, "rows": rows}
    _emit(cfg, table, stats)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rtspan",
        description="Source-wise round-trip spanners and covers of weighted digraphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, *, input_required=True):
        if input_required:
            p.add_argument("--input", required=True, help="edge list file")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="fmt", choices=("edgelist", "json-stats"),
                       default="edgelist")

    def cover_knobs(p):
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--sources", required=True,
                       help="vertex id file, or a count sampled from the seed")
        p.add_argument("--c", type=int, default=4)
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--trials-mult", type=int, default=1)
        p.add_argument("--verify", action="store_true")

    p = sub.add_parser("gen", help="generate a seeded random digraph")
    common(p, input_required=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--w-min", type=float, default=1.0)
    p.add_argument("--w-max", type=float, default=2.0)
    p.add_argument("--strongly-connected", action="store_true")
    p.add_argument("--quantum", type=float, default=0.0625,
                   help="weight grid step; 0 for continuous uniforms")

    p = sub.add_parser("spanner", help="build a source-wise round-trip spanner")
    common(p)
    cover_knobs(p)
    p.add_argument("--weighted-variant", action="store_true")

    p = sub.add_parser("cover", help="build a source-wise round-trip cover")
    common(p)
    cover_knobs(p)
    p.add_argument("--radius", type=float, required=True)

    p = sub.add_parser("partition", help="one randomized clustering pass")
    common(p)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--centers", required=True,
                   help="vertex id file, or a count (0 for none)")
    p.add_argument("--direction", choices=("out", "in"), default="out")

    p = sub.add_parser("verify", help="re-check a spanner file against its graph")
    common(p)
    p.add_argument("--spanner", required=True, help="spanner edge list file")
    p.add_argument("--sources", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--c", type=int, default=4)
    p.add_argument("--bound", type=float, default=None,
                   help="stretch bound override (default derived from k, n, c)")

    p = sub.add_parser("bench", help="sweep an (n, s, k) grid")
    common(p, input_required=False)
    p.add_argument("--bench-n", required=True, help="comma list of n values")
    p.add_argument("--bench-s", required=True, help="comma list of source counts")
    p.add_argument("--bench-k", required=True, help="comma list of k values")
    p.add_argument("--m-mult", type=int, default=4, help="edges per vertex")
    p.add_argument("--c", type=int, default=4)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--trials-mult", type=int, default=1)
    return ap


def _int_list(text: str):
    vals = [int(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise ValueError("empty value list")
    return vals


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("input", "output", "k", "sources", "seed", "c", "epsilon",
                 "trials_mult", "weighted_variant", "verify", "fmt"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if args.command == "gen":
        cfg.extra = {"n": args.n, "m": args.m, "w_min": args.w_min,
                     "w_max": args.w_max, "strongly_connected": args.strongly_connected,
                     "quantum": args.quantum}
    elif args.command == "cover":
        cfg.extra = {"radius": args.radius}
    elif args.command == "partition":
        cfg.extra = {"radius": args.radius, "s": args.s, "centers": args.centers,
                     "direction": args.direction}
    elif args.command == "verify":
        cfg.extra = {"spanner": args.spanner, "bound": args.bound}
    elif args.command == "bench":
        cfg.extra = {"ns": _int_list(args.bench_n), "ss": _int_list(args.bench_s),
                     "ks": _int_list(args.bench_k), "m_mult": args.m_mult}
    return cfg


_COMMANDS = {
    "gen": cmd_gen,
    "spanner": cmd_spanner,
    "cover": cmd_cover,
    "partition": cmd_partition,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except (ValueError, EdgeListError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
