"""Per-node failure-budget allocation.

The adaptive loop needs, for every node, a lower and an upper failure
budget whose grand total stays below delta/2. Splitting that total well
matters: nodes that warm-up sampling shows to be central need most of the
budget, nodes never seen can make do with a sliver. A short preliminary
sampling phase estimates each node's centrality, the estimates are turned
into per-node cost factors c = 2 * btilde * omega / lambda_target^2, and a
binary search finds the constant C that makes

    sum_v exp(-C / c_L(v)) + exp(-C / c_U(v)) = delta/2 - eps*delta

(zero-cost nodes contribute nothing for C > 0). Each budget then gets an
additional eps*delta/(2n) so no node ends up with exactly zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .sampler import PathSampler

DEFAULT_EPSILON = 0.0001


@dataclass
class DeltaBudgets:
    """Per-node failure budgets plus the warm-up data that produced them."""

    delta_l: np.ndarray
    delta_u: np.ndarray
    preliminary_btilde: np.ndarray
    alpha: int
    bisect_c: float | None = None
    note: str | None = None

    def total(self) -> float:
        return float(self.delta_l.sum() + self.delta_u.sum())


def warmup_estimates(g: Graph, alpha: int, rng: random.Random) -> np.ndarray:
    """Visit frequencies over ``alpha`` sampled paths."""
    sampler = PathSampler(g, rng)
    counts = [0] * g.n
    for _ in range(alpha):
        smp = sampler.sample()
        for v in smp.internal_nodes:
            counts[v] += 1
    return np.asarray(counts, dtype=float) / alpha


def compute_deltas(
    g: Graph,
    lambda_l,
    lambda_u,
    omega: int,
    delta: float,
    epsilon: float = DEFAULT_EPSILON,
    rng: random.Random | None = None,
    warmup: tuple[np.ndarray, int] | None = None,
) -> DeltaBudgets:
    """Allocate per-node budgets for the given per-node error targets.

    ``warmup`` may carry ``(btilde, alpha)`` from an earlier sampling phase
    so the estimates are not drawn twice; otherwise ``rng`` drives a fresh
    phase of ``max(1, omega // 100)`` samples. Warm-up paths never enter
    the main run's counters: the budgets must be fixed before the counted
    samples begin, or the stopped-estimate guarantee breaks down.
    """
    n = g.n
    lam_l = np.asarray(lambda_l, dtype=float)
    lam_u = np.asarray(lambda_u, dtype=float)
    if lam_l.shape != (n,) or lam_u.shape != (n,):
        raise ValueError("need one lower and one upper target per node")
    if np.any(lam_l <= 0.0) or np.any(lam_u <= 0.0):
        raise ValueError("error targets must be positive")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must be in (0, 1/2)")
    if omega < 1:
        raise ValueError("omega must be at least 1")

    if warmup is not None:
        btilde, alpha = warmup
        btilde = np.asarray(btilde, dtype=float)
    else:
        if rng is None:
            raise ValueError("need an rng when no warm-up estimates are supplied")
        alpha = max(1, omega // 100)
        btilde = warmup_estimates(g, alpha, rng)

    cost_l = 2.0 * btilde * omega / lam_l**2
    cost_u = 2.0 * btilde * omega / lam_u**2
    target = delta / 2.0 - epsilon * delta
    smoothing = epsilon * delta / (2.0 * n)

    costs = np.concatenate([cost_l[cost_l > 0.0], cost_u[cost_u > 0.0]])
    if costs.size == 0:
        # Warm-up hit nobody: every exponential term is zero regardless of C.
        base = np.zeros(n)
        budgets = DeltaBudgets(base + smoothing, base + smoothing, btilde, alpha, None, "degenerate-costs")
        _check_budget(budgets, delta)
        return budgets

    def remaining(c_val: float) -> float:
        return float(np.exp(-c_val / costs).sum())

    if remaining(0.0) < target:
        # Unreachable for delta < 1 (the sum at C=0 counts whole terms),
        # kept as a defensive uniform split.
        share = smoothing + target / (2.0 * n)
        budgets = DeltaBudgets(
            np.full(n, share), np.full(n, share), btilde, alpha, None, "uniform-fallback"
        )
        _check_budget(budgets, delta)
        return budgets

    hi = 1.0
    while remaining(hi) > target:
        hi *= 2.0
    lo = 0.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if remaining(mid) > target:
            lo = mid
        else:
            hi = mid
    c_const = hi  # the side where the sum is at or below target

    with np.errstate(divide="ignore"):
        delta_l = np.where(cost_l > 0.0, np.exp(-c_const / np.where(cost_l > 0.0, cost_l, 1.0)), 0.0)
        delta_u = np.where(cost_u > 0.0, np.exp(-c_const / np.where(cost_u > 0.0, cost_u, 1.0)), 0.0)
    budgets = DeltaBudgets(delta_l + smoothing, delta_u + smoothing, btilde, alpha, c_const)
    _check_budget(budgets, delta)
    return budgets


def _check_budget(budgets: DeltaBudgets, delta: float) -> None:
    total = budgets.total()
    if total > delta / 2.0 + 1e-12:
        raise RuntimeError(f"budget allocation exceeded delta/2: {total} > {delta / 2}")
