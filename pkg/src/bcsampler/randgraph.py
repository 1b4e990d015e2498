"""Random-graph generators and the traversal-cost scaling benchmark.

Two families are supported, both driven by per-node weights:

* configuration model: each node gets round(weight) stubs and a uniform
  perfect matching of all stubs forms the (multi)graph, which ingestion
  projects to a simple graph;
* rank-1 inhomogeneous random graphs: each pair (u, v) is connected
  independently with probability kernel(w_u * w_v / M).

The benchmark generates a ladder of sizes, samples node pairs, and
measures how many adjacency entries the bidirectional search scans per
sampled path, fitting the growth exponent against the stored arc count.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .sampler import PathSampler


@dataclass
class WeightSequence:
    """Positive per-node weights for the generators."""

    weights: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.size == 0:
            raise ValueError("need at least one weight")
        if np.any(self.weights <= 0.0):
            raise ValueError("weights must be positive")

    @property
    def n(self) -> int:
        return int(self.weights.size)

    @property
    def total(self) -> float:
        return float(self.weights.sum())


def constant_weights(n: int, value: float) -> WeightSequence:
    return WeightSequence(np.full(n, float(value)))


def powerlaw_weights(n: int, beta: float, w_min: float = 1.0, rng=None) -> WeightSequence:
    """I.i.d. Pareto weights with tail Pr(W >= d) = (w_min / d)^(beta - 1)."""
    if beta <= 2.0:
        raise ValueError("beta must exceed 2 (finite-mean regime)")
    if w_min < 1.0:
        raise ValueError("w_min must be at least 1")
    rng = np.random.default_rng(rng)
    u = rng.random(n)
    return WeightSequence(w_min * (1.0 - u) ** (-1.0 / (beta - 1.0)))


def gen_configuration_model(w: WeightSequence, rng=None) -> Graph:
    """Uniform stub matching; multi-edges and self-loops are dropped at
    ingestion and show up in the graph's dropped counters."""
    rng = np.random.default_rng(rng)
    stubs_per_node = np.rint(w.weights).astype(np.int64)
    total = int(stubs_per_node.sum())
    if total % 2 == 1:
        stubs_per_node[int(rng.integers(w.n))] += 1
    stubs = np.repeat(np.arange(w.n, dtype=np.int64), stubs_per_node)
    rng.shuffle(stubs)
    return Graph.from_arrays(w.n, stubs[0::2], stubs[1::2], directed=False)


KERNELS = {
    "chung_lu": lambda x: np.minimum(x, 1.0),
    "norros_reittu": lambda x: -np.expm1(-x),
    "grg": lambda x: x / (1.0 + x),
}

_FAST_THRESHOLD = 2048


def gen_irg(w: WeightSequence, kernel: str = "chung_lu", rng=None, method: str = "auto") -> Graph:
    """Independent edges with probability kernel(w_u * w_v / M), undirected.

    ``method`` picks the pair sweep: "naive" enumerates all pairs and is
    quadratic, "fast" uses geometric skipping under the min(x, 1) envelope
    with rejection for the other kernels. "auto" switches on size.
    """
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}; choose from {sorted(KERNELS)}")
    if w.n < 2:
        raise ValueError("need at least 2 nodes")
    if method == "auto":
        method = "naive" if w.n <= _FAST_THRESHOLD else "fast"
    if method == "naive":
        us, vs = _irg_pairs_naive(w, kernel, np.random.default_rng(rng))
    elif method == "fast":
        us, vs = _irg_pairs_fast(w, kernel, np.random.default_rng(rng))
    else:
        raise ValueError(f"unknown method {method!r}")
    return Graph.from_arrays(w.n, us, vs, directed=False)


def _irg_pairs_naive(w: WeightSequence, kernel: str, rng):
    f = KERNELS[kernel]
    weights = w.weights
    total = w.total
    us: list = []
    vs: list = []
    for i in range(w.n - 1):
        probs = f(weights[i] * weights[i + 1 :] / total)
        hits = np.flatnonzero(rng.random(w.n - 1 - i) < probs)
        us.extend([i] * hits.size)
        vs.extend((hits + i + 1).tolist())
    return np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)


def _irg_pairs_fast(w: WeightSequence, kernel: str, rng):
    # Skip ahead geometrically under the Chung-Lu envelope min(x, 1),
    # which dominates every supported kernel, then thin to the target
    # kernel. Weights are visited in decreasing order so the envelope is
    # nonincreasing along each row.
    f = KERNELS[kernel]
    order = np.argsort(-w.weights, kind="stable")
    ws = w.weights[order].tolist()
    total = w.total
    n = w.n
    us: list = []
    vs: list = []
    rand = rng.random
    for i in range(n - 1):
        wi = ws[i]
        j = i + 1
        envelope = wi * ws[j] / total
        if envelope > 1.0:
            envelope = 1.0
        while j < n:
            if envelope <= 0.0:
                break
            if envelope < 1.0:
                r = 1.0 - rand()
                j += int(math.log(r) / math.log1p(-envelope))
                if j >= n:
                    break
            x = wi * ws[j] / total
            accept = float(f(x)) / envelope
            if accept >= 1.0 or rand() < accept:
                us.append(i)
                vs.append(j)
            envelope = x if x < 1.0 else 1.0
            j += 1
    us = order[np.asarray(us, dtype=np.int64)] if us else np.empty(0, dtype=np.int64)
    vs = order[np.asarray(vs, dtype=np.int64)] if vs else np.empty(0, dtype=np.int64)
    return us, vs


@dataclass
class SizePoint:
    n: int
    m: int
    pairs: int
    m_avg: float
    alpha_pointwise: float


@dataclass
class ScalingResult:
    """Per-size traversal costs and the fitted growth exponent."""

    model: str
    points: list
    alpha: float

    def to_tsv(self) -> str:
        lines = ["n\tm\tpairs\tm_avg\talpha_pointwise"]
        for p in self.points:
            lines.append(f"{p.n}\t{p.m}\t{p.pairs}\t{p.m_avg:.9g}\t{p.alpha_pointwise:.9g}")
        lines.append(f"# fitted_alpha\t{self.alpha:.9g}")
        return "\n".join(lines) + "\n"


def make_weights(n: int, rng, beta: float | None = None, weight: float = 10.0, w_min: float = 1.0) -> WeightSequence:
    if beta is not None:
        return powerlaw_weights(n, beta, w_min=w_min, rng=rng)
    return constant_weights(n, weight)


def generate(model: str, weights: WeightSequence, rng) -> Graph:
    if model == "cm":
        return gen_configuration_model(weights, rng)
    return gen_irg(weights, kernel=model, rng=rng)


def bench_scaling(
    model: str,
    sizes,
    pairs_per_size: int,
    rng=None,
    *,
    beta: float | None = None,
    weight: float = 10.0,
    w_min: float = 1.0,
) -> ScalingResult:
    """Average adjacency entries scanned per sampled path on a size ladder.

    Disconnected pairs are included; their cost is the exhausted smaller
    side. ``m`` is the stored arc-entry count, which also caps the scan
    count of any single sample. The fitted alpha is the least-squares
    slope of log(m_avg) against log(m).
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be increasing")
    if pairs_per_size < 1:
        raise ValueError("pairs_per_size must be positive")
    if model != "cm" and model not in KERNELS:
        raise ValueError(f"unknown model {model!r}")
    rng = np.random.default_rng(rng)
    points = []
    for n in sizes:
        gen_rng = np.random.default_rng(rng.integers(2**63))
        pair_rng = random.Random(int(rng.integers(2**63)))
        weights = make_weights(n, gen_rng, beta=beta, weight=weight, w_min=w_min)
        g = generate(model, weights, gen_rng)
        sampler = PathSampler(g, pair_rng)
        scanned = 0
        for _ in range(pairs_per_size):
            scanned += sampler.sample().edges_visited
        m_avg = scanned / pairs_per_size
        m = g.num_arcs
        alpha_pt = math.log(m_avg) / math.log(m) if m_avg > 0 and m > 1 else 0.0
        points.append(SizePoint(n=n, m=m, pairs=pairs_per_size, m_avg=m_avg, alpha_pointwise=alpha_pt))
    if len(points) > 1:
        xs = np.log([p.m for p in points])
        ys = np.log([max(p.m_avg, 1e-12) for p in points])
        alpha = float(np.polyfit(xs, ys, 1)[0])
    else:
        alpha = points[0].alpha_pointwise
    return ScalingResult(model=model, points=points, alpha=alpha)
