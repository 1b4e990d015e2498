"""Sample budgets and data-dependent confidence half-widths.

The sampler stops either after a fixed budget ``omega`` (which alone
guarantees lambda-accuracy with probability 1 - delta/2) or earlier, when
the per-node half-widths ``f_lower`` / ``g_upper`` drop below the target.
The half-widths come from an exponential tail bound applied to the
stopped estimate, which is why they depend on omega as well as on the
current sample count tau and stay valid at any stopping time tau <= omega.

For a node with estimate ``b`` after ``tau`` of at most ``omega`` samples
and per-side budgets ``dL``, ``dU`` (writing L = ln(1/d)):

    f(b, dL, omega, tau) = (L/tau) * (1/3 - omega/tau
                             + sqrt((1/3 - omega/tau)^2 + 2*b*omega/L))
    g(b, dU, omega, tau) = (L/tau) * (1/3 + omega/tau
                             + sqrt((1/3 + omega/tau)^2 + 2*b*omega/L))

and the true value lies in [b - f, b + g] outside probability dL + dU.
``f`` is evaluated through its conjugate form to avoid cancellation, so
the defining quadratic is reproduced to near machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass
class ErrorParams:
    """Validated statistical configuration for one run."""

    lam: float
    delta: float
    c: float
    omega: int
    vd: int

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise ValueError("lam must be in (0, 1)")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must be in (0, 1)")
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        if self.omega < 1:
            raise ValueError("omega must be at least 1")
        if self.vd < 2:
            raise ValueError("vertex diameter must be at least 2")


def compute_omega(lam: float, delta: float, c: float, vd: int) -> int:
    """Deterministic sample cap: ceil(c/lam^2 * (floor(log2(vd-2)) + 1 + ln(2/delta))).

    The log2 term clamps to zero when vd <= 3.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must be in (0, 1)")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if c <= 0.0:
        raise ValueError("c must be positive")
    vd = int(vd)
    if vd < 2:
        raise ValueError("vertex diameter must be at least 2")
    log_term = max(vd - 2, 1).bit_length() - 1
    return math.ceil((c / lam**2) * (log_term + 1 + math.log(2.0 / delta)))


def estimate_vertex_diameter(g: Graph, num_samples: int = 20, rng=None) -> int:
    """Heuristic upper-bound estimate of the vertex diameter.

    Runs a BFS from each sampled source (both directions when directed)
    restricted to reachable nodes. Undirected: 2 * max eccentricity + 1;
    directed: max forward + max backward eccentricity + 1. Overestimation
    is safe, it only enlarges the sample budget.
    """
    if g.n == 0:
        raise ValueError("graph is empty")
    if num_samples < 1:
        raise ValueError("num_samples must be at least 1")
    rng = np.random.default_rng(rng)
    k = min(num_samples, g.n)
    sources = rng.choice(g.n, size=k, replace=False)
    fo, ftg, ro, rtg = g.adjacency_lists()
    if g.directed:
        ecc_f = max(_eccentricity(g.n, fo, ftg, int(s)) for s in sources)
        ecc_b = max(_eccentricity(g.n, ro, rtg, int(s)) for s in sources)
        vd = ecc_f + ecc_b + 1
    else:
        ecc = max(_eccentricity(g.n, fo, ftg, int(s)) for s in sources)
        vd = 2 * ecc + 1
    return max(vd, 2)


def _eccentricity(n: int, off: list, tgt: list, s: int) -> int:
    dist = [-1] * n
    dist[s] = 0
    frontier = [s]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in tgt[off[v] : off[v + 1]]:
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return d - 1 if d > 0 else 0


def _check_tail_args(omega, tau) -> None:
    if tau < 1:
        raise ValueError("tau must be at least 1")
    if tau > omega:
        raise ValueError("tau cannot exceed omega")


def _prepare(b_tilde, delta):
    b = np.asarray(b_tilde, dtype=float)
    d = np.asarray(delta, dtype=float)
    if np.any(b < 0.0) or np.any(b > 1.0):
        raise ValueError("estimates must lie in [0, 1]")
    if np.any(d < 0.0) or np.any(d > 1.0):
        raise ValueError("failure budgets must lie in [0, 1]")
    with np.errstate(divide="ignore"):
        log_inv = np.log(1.0 / d)  # 0 -> inf sentinel, 1 -> 0
    return b, log_inv


def f_lower(b_tilde, delta_l, omega, tau):
    """Lower confidence half-width; zero when the estimate is zero.

    A budget of exactly 0 yields +inf, meaning no bound is claimed on
    that side. Accepts scalars or arrays for ``b_tilde``/``delta_l``.
    """
    _check_tail_args(omega, tau)
    b, log_inv = _prepare(b_tilde, delta_l)
    q = log_inv * (1.0 / 3.0 - omega / tau)  # <= 0 since tau <= omega
    r = 2.0 * b * omega * log_inv
    with np.errstate(invalid="ignore", over="ignore"):
        denom = np.sqrt(q * q + r) - q
        out = np.where(denom > 0.0, r / (tau * denom), 0.0)
    out = np.where(np.isinf(log_inv), np.inf, out)
    if out.ndim == 0:
        return float(out)
    return out


def g_upper(b_tilde, delta_u, omega, tau):
    """Upper confidence half-width; positive for any budget below 1."""
    _check_tail_args(omega, tau)
    b, log_inv = _prepare(b_tilde, delta_u)
    q = log_inv * (1.0 / 3.0 + omega / tau)
    r = 2.0 * b * omega * log_inv
    with np.errstate(invalid="ignore", over="ignore"):
        out = (q + np.sqrt(q * q + r)) / tau
    out = np.where(np.isinf(log_inv), np.inf, out)
    if out.ndim == 0:
        return float(out)
    return out
