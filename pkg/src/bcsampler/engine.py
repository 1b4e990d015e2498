"""Adaptive sampling engine.

``run_absolute`` estimates every node's betweenness to within ``lam`` with
probability at least ``1 - delta``; ``run_topk`` instead targets the k
highest-ranked nodes, separating nodes whose confidence intervals allow it
and tightening the rest to ``lam`` precision.

Both draw path samples until either the fixed budget ``omega`` is
exhausted or the mode's stopping condition is met. Disconnected pairs
count toward tau with an all-zero contribution; dropping them would bias
every estimate upward.

Workers own independent rng streams derived from (seed, worker index) and
private tallies; the coordinator merges tallies at batch boundaries and
evaluates the stopping condition on the merged snapshot. Merging is
addition, so results depend only on (seed, worker count), not on
scheduling order.
"""

from __future__ import annotations

import multiprocessing
import random
from dataclasses import dataclass, field

import numpy as np

from .allocator import DEFAULT_EPSILON, DeltaBudgets, compute_deltas, warmup_estimates
from .bounds import ErrorParams, compute_omega, estimate_vertex_diameter, f_lower, g_upper
from .graph import Graph
from .sampler import PathSampler

EXACT_RANK = "exact_rank"
NOT_IN_TOPK = "not_in_topk"
APPROX = "approx_within_lambda"

_STREAM_VD = 0
_STREAM_WARMUP = 1
_STREAM_WORKER = 2


@dataclass
class RunConfig:
    """Knobs for one estimation run."""

    lam: float = 0.05
    delta: float = 0.1
    k: int | None = None
    c: float = 0.5
    seed: int | None = None
    workers: int = 1
    check_batch: int | None = None
    vd_samples: int = 20
    epsilon: float = DEFAULT_EPSILON
    mode: str = "absolute"


@dataclass
class Estimates:
    """Merged counters and the intervals they imply."""

    counts: np.ndarray
    tau: int
    btilde: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    omega: int
    stopped_early: bool
    vd: int
    delta_l: np.ndarray
    delta_u: np.ndarray


@dataclass
class TopkReport:
    """Per-node ranking classification with rank bounds.

    ``categories[v]`` is one of ``exact_rank`` (rank known exactly, equal
    to ``rank_low[v]``), ``not_in_topk`` (at least k nodes are certainly
    above v), or ``approx_within_lambda``. ``candidates`` holds the ids
    whose rank may still be within the top k; it always has at least k
    members and contains the true top k with the run's confidence.
    """

    k: int
    categories: list = field(default_factory=list)
    rank_low: np.ndarray | None = None
    rank_high: np.ndarray | None = None
    candidates: np.ndarray | None = None


def derive_seed(root, *key: int) -> int:
    """Deterministic child seed for stream ``key`` under ``root``."""
    ss = np.random.SeedSequence(entropy=root, spawn_key=tuple(key))
    a, b = ss.generate_state(2, np.uint64)
    return (int(a) << 64) | int(b)


def assign_topk_lambdas(btilde_sorted, k: int, lam: float):
    """Per-node error targets from warm-up estimates sorted descending.

    Nodes inside the top k get targets that separate them from their
    sorted neighbours (half the gap on each side); nodes outside get an
    upper target that separates them from the k-th node. Gaps too small to
    resolve collapse both nodes' targets to ``lam``, and every target is
    floored at ``lam`` and capped at 1.
    """
    bt = np.asarray(btilde_sorted, dtype=float)
    n = bt.size
    if not 1 <= k < n:
        raise ValueError("k must satisfy 1 <= k < n")
    if np.any(np.diff(bt) > 0):
        raise ValueError("estimates must be sorted in decreasing order")
    lam_l = np.ones(n)
    lam_u = np.ones(n)
    lam_l[:k] = (bt[:k] - bt[1 : k + 1]) / 2.0
    if k > 1:
        lam_u[1:k] = (bt[: k - 1] - bt[1:k]) / 2.0
        lam_u[1:k] = np.clip(lam_u[1:k], lam, 1.0)
    lam_l[:k] = np.clip(lam_l[:k], lam, 1.0)
    lam_u[k:] = np.clip(bt[k - 1] - lam_l[k - 1] - bt[k:], lam, 1.0)
    for i in range(k):
        if (bt[i] - bt[i + 1]) / 2.0 < lam:
            lam_l[i] = lam_u[i] = lam_l[i + 1] = lam_u[i + 1] = lam
    return lam_l, lam_u


def run_absolute(g: Graph, cfg: RunConfig) -> Estimates:
    """Estimate all betweenness values with absolute error at most ``cfg.lam``."""
    params, budgets, seed = _prepare_run(g, cfg, topk=False)

    lam = cfg.lam
    dl = budgets.delta_l
    du = budgets.delta_u

    def stop(btilde: np.ndarray, tau: int) -> bool:
        f = f_lower(btilde, dl, params.omega, tau)
        gg = g_upper(btilde, du, params.omega, tau)
        return bool((f <= lam).all() and (gg <= lam).all())

    counts, tau, stopped_early = _sample_until(g, cfg, seed, params.omega, stop)
    return _finalize(counts, tau, stopped_early, params, budgets)


def run_topk(g: Graph, cfg: RunConfig):
    """Rank the top ``cfg.k`` nodes; returns ``(Estimates, TopkReport)``."""
    k = cfg.k
    if k is None or not 1 <= k < g.n:
        raise ValueError("topk mode needs 1 <= k < n")
    params, budgets, seed = _prepare_run(g, cfg, topk=True)

    lam = cfg.lam
    dl = budgets.delta_l
    du = budgets.delta_u

    def stop(btilde: np.ndarray, tau: int) -> bool:
        return _topk_stop(btilde, dl, du, params.omega, tau, lam, k)

    counts, tau, stopped_early = _sample_until(g, cfg, seed, params.omega, stop)
    est = _finalize(counts, tau, stopped_early, params, budgets)
    report = _classify_topk(est, k)
    return est, report


def _prepare_run(g: Graph, cfg: RunConfig, topk: bool):
    if g.n < 2:
        raise ValueError("need at least 2 nodes")
    if not 0.0 < cfg.lam < 1.0:
        raise ValueError("lam must be in (0, 1)")
    if not 0.0 < cfg.delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if cfg.workers < 1:
        raise ValueError("workers must be at least 1")

    seed = cfg.seed if cfg.seed is not None else int(np.random.SeedSequence().entropy)
    vd_rng = np.random.default_rng(derive_seed(seed, _STREAM_VD))
    vd = estimate_vertex_diameter(g, cfg.vd_samples, vd_rng)
    omega = compute_omega(cfg.lam, cfg.delta, cfg.c, vd)
    params = ErrorParams(lam=cfg.lam, delta=cfg.delta, c=cfg.c, omega=omega, vd=vd)

    warm_rng = random.Random(derive_seed(seed, _STREAM_WARMUP))
    if not topk:
        lam_targets = np.full(g.n, cfg.lam)
        budgets = compute_deltas(
            g, lam_targets, lam_targets, omega, cfg.delta, cfg.epsilon, rng=warm_rng
        )
    else:
        # One warm-up phase feeds both the target assignment and the budgets.
        alpha = max(1, omega // 100)
        btw = warmup_estimates(g, alpha, warm_rng)
        order = np.argsort(-btw, kind="stable")
        lam_l_sorted, lam_u_sorted = assign_topk_lambdas(btw[order], cfg.k, cfg.lam)
        lam_l = np.empty(g.n)
        lam_u = np.empty(g.n)
        lam_l[order] = lam_l_sorted
        lam_u[order] = lam_u_sorted
        budgets = compute_deltas(
            g, lam_l, lam_u, omega, cfg.delta, cfg.epsilon, warmup=(btw, alpha)
        )
    return params, budgets, seed


def _sample_until(g: Graph, cfg: RunConfig, seed: int, omega: int, stop) -> tuple[np.ndarray, int, bool]:
    check = cfg.check_batch if cfg.check_batch is not None else max(1, omega // 1000)
    if check < 1:
        raise ValueError("check_batch must be at least 1")
    if cfg.workers == 1:
        return _sample_inline(g, seed, omega, check, stop)
    return _sample_parallel(g, seed, cfg.workers, omega, check, stop)


def _sample_inline(g: Graph, seed: int, omega: int, check: int, stop):
    sampler = PathSampler(g, random.Random(derive_seed(seed, _STREAM_WORKER, 0)))
    counts = [0] * g.n
    tau = 0
    stopped_early = False
    while tau < omega:
        batch = min(check, omega - tau)
        for _ in range(batch):
            smp = sampler.sample()
            for v in smp.internal_nodes:
                counts[v] += 1
        tau += batch
        if tau < omega and stop(np.asarray(counts, dtype=float) / tau, tau):
            stopped_early = True
            break
    return np.asarray(counts, dtype=np.int64), tau, stopped_early


def _worker_loop(g: Graph, seed: int, index: int, conn) -> None:
    sampler = PathSampler(g, random.Random(derive_seed(seed, _STREAM_WORKER, index)))
    n = g.n
    while True:
        quota = conn.recv()
        if quota is None:
            break
        counts = [0] * n
        for _ in range(quota):
            smp = sampler.sample()
            for v in smp.internal_nodes:
                counts[v] += 1
        conn.send(np.asarray(counts, dtype=np.int64))


def _sample_parallel(g: Graph, seed: int, workers: int, omega: int, check: int, stop):
    ctx = multiprocessing.get_context("fork")
    conns = []
    procs = []
    try:
        for i in range(workers):
            parent, child = ctx.Pipe()
            proc = ctx.Process(target=_worker_loop, args=(g, seed, i, child), daemon=True)
            proc.start()
            child.close()
            conns.append(parent)
            procs.append(proc)

        counts = np.zeros(g.n, dtype=np.int64)
        tau = 0
        stopped_early = False
        per_round = max(1, check // workers)
        while tau < omega:
            remaining = omega - tau
            quotas = [min(per_round, max(0, remaining - i * per_round)) for i in range(workers)]
            for conn, q in zip(conns, quotas):
                if q > 0:
                    conn.send(q)
            for conn, q in zip(conns, quotas):
                if q > 0:
                    counts += conn.recv()
            tau += sum(quotas)
            if tau < omega and stop(counts.astype(float) / tau, tau):
                stopped_early = True
                break
        return counts, tau, stopped_early
    finally:
        for conn in conns:
            try:
                conn.send(None)
            except (BrokenPipeError, OSError):
                pass
        for proc in procs:
            proc.join(timeout=10)
            if proc.is_alive():
                proc.terminate()


def _finalize(counts: np.ndarray, tau: int, stopped_early: bool, params: ErrorParams, budgets: DeltaBudgets) -> Estimates:
    btilde = counts.astype(float) / tau
    f = f_lower(btilde, budgets.delta_l, params.omega, tau)
    gg = g_upper(btilde, budgets.delta_u, params.omega, tau)
    return Estimates(
        counts=counts,
        tau=tau,
        btilde=btilde,
        lower=btilde - f,
        upper=btilde + gg,
        omega=params.omega,
        stopped_early=stopped_early,
        vd=params.vd,
        delta_l=budgets.delta_l,
        delta_u=budgets.delta_u,
    )


def _rank_bounds(lower: np.ndarray, upper: np.ndarray):
    """Smallest and largest rank each node can still hold.

    ``rank_low[v] - 1`` nodes are certainly above v (their lower bounds
    beat v's upper bound); ``n - rank_high[v]`` are certainly below.
    """
    n = lower.size
    lows_sorted = np.sort(lower)
    ups_sorted = np.sort(upper)
    above = n - np.searchsorted(lows_sorted, upper, side="right")
    below = np.searchsorted(ups_sorted, lower, side="left")
    return above + 1, n - below


def _topk_stop(btilde, dl, du, omega, tau, lam, k) -> bool:
    f = f_lower(btilde, dl, omega, tau)
    gg = g_upper(btilde, du, omega, tau)
    ok = (f <= lam) & (gg <= lam)
    if ok.all():
        return True
    # Imprecise nodes may pass through interval separation alone: a node
    # still competing for the top k needs its rank pinned exactly, one
    # already pushed below rank k needs nothing more. Full separation
    # (not just from the sorted neighbours) keeps the final
    # classification consistent with what the stop promised.
    rank_low, rank_high = _rank_bounds(btilde - f, btilde + gg)
    order = np.argsort(-btilde, kind="stable")
    top = order[:k]
    rest = order[k:]
    ok[top] |= rank_low[top] == rank_high[top]
    ok[rest] |= rank_low[rest] > k
    return bool(ok.all())


def _classify_topk(est: Estimates, k: int) -> TopkReport:
    n = est.btilde.size
    rank_low, rank_high = _rank_bounds(est.lower, est.upper)

    categories = []
    for v in range(n):
        if rank_low[v] == rank_high[v]:
            categories.append(EXACT_RANK)
        elif rank_low[v] > k:
            categories.append(NOT_IN_TOPK)
        else:
            categories.append(APPROX)
    candidates = np.flatnonzero(rank_low <= k)
    return TopkReport(
        k=k,
        categories=categories,
        rank_low=rank_low.astype(np.int64),
        rank_high=rank_high.astype(np.int64),
        candidates=candidates,
    )
