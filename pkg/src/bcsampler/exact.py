"""Exact betweenness oracles: the standard dependency-accumulation pass
and a brute-force path enumerator for tiny graphs.

Both return normalized scores: the fraction of the n*(n-1) ordered node
pairs whose uniformly chosen shortest path passes through each node as an
internal node. Unreachable pairs contribute zero.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph

BRUTE_FORCE_MAX_NODES = 12


def brandes(g: Graph) -> np.ndarray:
    """Exact normalized betweenness via per-source dependency accumulation."""
    n = g.n
    scores = [0.0] * n
    if n < 2:
        return np.zeros(n)
    fo, ftg, _, _ = g.adjacency_lists()
    for s in range(n):
        if fo[s + 1] == fo[s]:
            continue
        dist = [-1] * n
        sig = [0.0] * n
        preds: list = [None] * n
        order = []
        dist[s] = 0
        sig[s] = 1.0
        frontier = [s]
        d = 0
        while frontier:
            order.extend(frontier)
            d += 1
            nxt = []
            for v in frontier:
                sv = sig[v]
                for w in ftg[fo[v] : fo[v + 1]]:
                    if dist[w] < 0:
                        dist[w] = d
                        sig[w] = sv
                        preds[w] = [v]
                        nxt.append(w)
                    elif dist[w] == d:
                        sig[w] += sv
                        preds[w].append(v)
            frontier = nxt
        delta = [0.0] * n
        for w in reversed(order):
            pw = preds[w]
            if pw is not None:
                coef = (1.0 + delta[w]) / sig[w]
                for v in pw:
                    delta[v] += sig[v] * coef
            if w != s:
                scores[w] += delta[w]
    return np.asarray(scores) / (n * (n - 1))


def enumerate_shortest_paths(g: Graph, s: int, t: int) -> list:
    """All shortest s-t paths as node sequences; empty if unreachable."""
    n = g.n
    if s == t:
        return [[s]]
    fo, ftg, _, _ = g.adjacency_lists()
    dist = [-1] * n
    preds: list = [None] * n
    dist[s] = 0
    frontier = [s]
    d = 0
    while frontier and dist[t] < 0:
        d += 1
        nxt = []
        for v in frontier:
            for w in ftg[fo[v] : fo[v + 1]]:
                if dist[w] < 0:
                    dist[w] = d
                    preds[w] = [v]
                    nxt.append(w)
                elif dist[w] == d:
                    preds[w].append(v)
        frontier = nxt
    if dist[t] < 0:
        return []
    paths = []
    stack = [t]

    def expand(v):
        if v == s:
            paths.append(list(reversed(stack)))
            return
        for u in preds[v]:
            stack.append(u)
            expand(u)
            stack.pop()

    expand(t)
    return paths


def brute_force_bc(g: Graph) -> np.ndarray:
    """Normalized betweenness from first principles by enumerating every
    shortest path of every ordered pair. Only for graphs with at most
    ``BRUTE_FORCE_MAX_NODES`` nodes."""
    n = g.n
    if n > BRUTE_FORCE_MAX_NODES:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_NODES}, got {n}")
    scores = np.zeros(n)
    if n < 2:
        return scores
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            paths = enumerate_shortest_paths(g, s, t)
            if not paths:
                continue
            share = 1.0 / len(paths)
            for path in paths:
                for v in path[1:-1]:
                    scores[v] += share
    return scores / (n * (n - 1))
