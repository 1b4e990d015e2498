"""Command-line front end.

Subcommands: ``approx`` (absolute-error estimates), ``topk`` (ranking),
``exact`` (full dependency-accumulation pass), ``gen`` (random graphs),
``bench`` (traversal-cost scaling). All outputs are TSV with a header;
floats carry 9 significant digits. Exit codes: 0 success, 1 I/O or parse
failure, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import __version__
from .engine import RunConfig, run_absolute, run_topk
from .exact import brandes
from .graph import Graph, GraphError, load_edge_list
from .randgraph import KERNELS, bench_scaling, generate, make_weights

WORKERS_ENV = "BCSAMPLER_WORKERS"
EXACT_WARN_NODES = 2000

_MODELS = ["cm"] + sorted(KERNELS)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcsampler", description=__doc__)
    parser.add_argument("--version", action="version", version=f"bcsampler {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, with_directed=True):
        p.add_argument("input", help="edge-list file (one 'u v' arc per line; # and % are comments)")
        if with_directed:
            p.add_argument("--directed", action="store_true", help="treat arcs as directed")
        p.add_argument("--out", help="output path (default: stdout)")

    def add_sampling(p):
        p.add_argument("--lambda", dest="lam", type=float, required=True, help="absolute error target in (0, 1)")
        p.add_argument("--delta", type=float, default=0.1, help="failure probability in (0, 1)")
        p.add_argument("--c", type=float, default=0.5, help="sample-budget constant")
        p.add_argument("--seed", type=int, default=None, help="rng seed; fixes the output")
        p.add_argument("--workers", type=int, default=_default_workers(), help=f"parallel samplers (default ${WORKERS_ENV} or 1)")
        p.add_argument("--vd-samples", type=int, default=20, help="sources for the vertex-diameter estimate")

    p_approx = sub.add_parser("approx", help="estimate all betweenness values")
    add_io(p_approx)
    add_sampling(p_approx)
    p_approx.set_defaults(func=cmd_approx)

    p_topk = sub.add_parser("topk", help="rank the k most central nodes")
    add_io(p_topk)
    add_sampling(p_topk)
    p_topk.add_argument("--k", type=int, required=True, help="number of top nodes to rank")
    p_topk.set_defaults(func=cmd_topk)

    p_exact = sub.add_parser("exact", help="exact betweenness (quadratic-ish; small graphs)")
    add_io(p_exact)
    p_exact.set_defaults(func=cmd_exact)

    p_gen = sub.add_parser("gen", help="generate a random graph as an edge list")
    p_gen.add_argument("--model", choices=_MODELS, required=True)
    p_gen.add_argument("--n", type=int, required=True, help="number of nodes")
    p_gen.add_argument("--beta", type=float, default=None, help="power-law weight exponent (> 2); constant weights if omitted")
    p_gen.add_argument("--const-weight", type=float, default=10.0, help="weight when --beta is omitted")
    p_gen.add_argument("--w-min", type=float, default=1.0, help="minimum power-law weight")
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--out", help="output path (default: stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="traversal-cost scaling over a size ladder")
    p_bench.add_argument("--model", choices=_MODELS, default="cm")
    p_bench.add_argument("--sizes", default="4096,8192,16384,32768,65536", help="comma-separated node counts, increasing")
    p_bench.add_argument("--pairs", type=int, default=500, help="sampled pairs per size")
    p_bench.add_argument("--beta", type=float, default=None)
    p_bench.add_argument("--const-weight", type=float, default=10.0)
    p_bench.add_argument("--w-min", type=float, default=1.0)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--out", help="output path (default: stdout)")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def _arg_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _write_out(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_graph(args) -> Graph:
    return load_edge_list(args.input, directed=getattr(args, "directed", False))


def _check_sampling_args(args) -> str | None:
    if not 0.0 < args.lam < 1.0:
        return "--lambda must be in (0, 1)"
    if not 0.0 < args.delta < 1.0:
        return "--delta must be in (0, 1)"
    if args.c <= 0.0:
        return "--c must be positive"
    if args.workers < 1:
        return "--workers must be at least 1"
    if args.vd_samples < 1:
        return "--vd-samples must be at least 1"
    return None


def _run_config(args) -> RunConfig:
    return RunConfig(
        lam=args.lam,
        delta=args.delta,
        k=getattr(args, "k", None),
        c=args.c,
        seed=args.seed,
        workers=args.workers,
        vd_samples=args.vd_samples,
    )


def cmd_approx(args) -> int:
    problem = _check_sampling_args(args)
    if problem:
        return _arg_error(problem)
    g = _load_graph(args)
    start = time.perf_counter()
    est = run_absolute(g, _run_config(args))
    wall = time.perf_counter() - start
    order = np.lexsort((np.arange(g.n), -est.btilde))
    lines = ["node\tbtilde\tlower\tupper"]
    for v in order:
        lines.append(f"{g.labels[v]}\t{_fmt(est.btilde[v])}\t{_fmt(est.lower[v])}\t{_fmt(est.upper[v])}")
    _write_out(args, "\n".join(lines) + "\n")
    print(
        f"tau={est.tau} omega={est.omega} stopped_early={est.stopped_early} "
        f"vd={est.vd} wall={wall:.3f}s",
        file=sys.stderr,
    )
    return 0


def cmd_topk(args) -> int:
    problem = _check_sampling_args(args)
    if problem:
        return _arg_error(problem)
    if args.k < 1:
        return _arg_error("--k must be at least 1")
    g = _load_graph(args)
    if args.k >= g.n:
        return _arg_error(f"--k must be smaller than the node count ({g.n})")
    start = time.perf_counter()
    est, report = run_topk(g, _run_config(args))
    wall = time.perf_counter() - start
    order = np.lexsort((np.arange(g.n), -est.btilde))
    lines = ["node\tbtilde\tlower\tupper\tcategory\trank_low\trank_high"]
    for v in order:
        lines.append(
            f"{g.labels[v]}\t{_fmt(est.btilde[v])}\t{_fmt(est.lower[v])}\t{_fmt(est.upper[v])}"
            f"\t{report.categories[v]}\t{report.rank_low[v]}\t{report.rank_high[v]}"
        )
    _write_out(args, "\n".join(lines) + "\n")
    print(
        f"tau={est.tau} omega={est.omega} stopped_early={est.stopped_early} "
        f"candidates={report.candidates.size} wall={wall:.3f}s",
        file=sys.stderr,
    )
    return 0


def cmd_exact(args) -> int:
    g = _load_graph(args)
    if g.n > EXACT_WARN_NODES:
        print(
            f"warning: exact pass is O(n*m); n={g.n} may take a while",
            file=sys.stderr,
        )
    start = time.perf_counter()
    scores = brandes(g)
    wall = time.perf_counter() - start
    order = np.lexsort((np.arange(g.n), -scores))
    lines = ["node\tbetweenness"]
    for v in order:
        lines.append(f"{g.labels[v]}\t{_fmt(scores[v])}")
    _write_out(args, "\n".join(lines) + "\n")
    print(f"n={g.n} edges={g.num_edges} wall={wall:.3f}s", file=sys.stderr)
    return 0


def cmd_gen(args) -> int:
    if args.n < 2:
        return _arg_error("--n must be at least 2")
    if args.beta is not None and args.beta <= 2.0:
        return _arg_error("--beta must exceed 2")
    rng = np.random.default_rng(args.seed)
    weights = make_weights(args.n, rng, beta=args.beta, weight=args.const_weight, w_min=args.w_min)
    g = generate(args.model, weights, rng)
    import io

    buf = io.StringIO()
    g.dump_edge_list(buf)
    _write_out(args, buf.getvalue())
    print(
        f"n={g.n} edges={g.num_edges} dropped_self_loops={g.dropped_self_loops} "
        f"dropped_duplicates={g.dropped_duplicates}",
        file=sys.stderr,
    )
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        return _arg_error("--sizes must be a comma-separated list of integers")
    if not sizes or sizes != sorted(sizes):
        return _arg_error("--sizes must be increasing")
    if args.pairs < 1:
        return _arg_error("--pairs must be positive")
    if args.beta is not None and args.beta <= 2.0:
        return _arg_error("--beta must exceed 2")
    result = bench_scaling(
        args.model,
        sizes,
        args.pairs,
        rng=args.seed,
        beta=args.beta,
        weight=args.const_weight,
        w_min=args.w_min,
    )
    _write_out(args, result.to_tsv())
    print(f"model={result.model} fitted_alpha={result.alpha:.6f}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (OSError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
