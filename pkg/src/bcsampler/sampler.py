"""Uniform random shortest paths via a balanced bidirectional BFS.

One sample grows a forward frontier from ``s`` and a backward frontier
from ``t`` (reverse arcs on directed graphs), always expanding the side
whose current frontier has the smaller total degree, and stops at the
first completed level that produced bridge edges between the two regions.
While expanding, each side counts shortest paths from its endpoint
(``sigma_s`` from ``s``, ``sigma_t`` into ``t``). Choosing a bridge edge
``(v, w)`` with probability proportional to ``sigma_s(v) * sigma_t(w)``
and backtracking both halves with path-count-proportional steps yields a
path that is uniform over all shortest s-t paths.

Expanding a node means scanning its full adjacency slice; every scanned
entry counts toward ``edges_visited``, which is the traversal cost the
scaling benchmark measures.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .graph import Graph


@dataclass
class PathSample:
    """One sampled shortest path.

    ``internal_nodes`` lists the nodes strictly between ``s`` and ``t`` in
    path order; it is empty when the endpoints are adjacent or not
    connected. ``path_length`` is the hop count (-1 if not connected).
    """

    s: int
    t: int
    internal_nodes: list = field(default_factory=list)
    connected: bool = False
    path_length: int = -1
    edges_visited: int = 0


def sample_pair(rng: random.Random, n: int) -> tuple[int, int]:
    """Uniform ordered pair (s, t) with s != t over n*(n-1) possibilities."""
    if n < 2:
        raise ValueError("need at least 2 nodes to sample a pair")
    s = rng.randrange(n)
    t = rng.randrange(n - 1)
    if t >= s:
        t += 1
    return s, t


class PathSampler:
    """Reusable sampler holding per-worker scratch state for one graph.

    Visited marks are epoch counters, so repeated calls avoid an O(n)
    reset. Instances are not thread-safe; give each worker its own.
    """

    def __init__(self, graph: Graph, rng: random.Random | None = None):
        self.graph = graph
        self.n = graph.n
        self.rng = rng if rng is not None else random.Random()
        self._fo, self._ftg, self._ro, self._rtg = graph.adjacency_lists()
        n = graph.n
        self._mark_s = [0] * n
        self._mark_t = [0] * n
        self._dist_s = [0] * n
        self._dist_t = [0] * n
        self._sig_s = [0.0] * n
        self._sig_t = [0.0] * n
        self._epoch = 0

    def sample(self) -> PathSample:
        """Draw a uniform ordered pair, then a uniform shortest path for it."""
        s, t = sample_pair(self.rng, self.n)
        return self.sample_st(s, t)

    def sample_st(self, s: int, t: int) -> PathSample:
        """Sample one uniform shortest s-t path (fixed endpoints)."""
        connected, dist, pool, edges = self._search(s, t)
        if not connected:
            return PathSample(s, t, [], False, -1, edges)
        rng = self.rng
        sig_s = self._sig_s
        sig_t = self._sig_t

        total = 0.0
        weights = []
        for x, y in pool:
            w = sig_s[x] * sig_t[y]
            weights.append(w)
            total += w
        if not math.isfinite(total):
            raise OverflowError("shortest-path counts exceeded double precision range")
        pick = rng.random() * total
        x, y = pool[-1]
        for (px, py), w in zip(pool, weights):
            pick -= w
            if pick <= 0.0:
                x, y = px, py
                break

        internal = self._backtrack_to_source(x)
        internal.reverse()
        self._walk_to_target(y, internal)
        return PathSample(s, t, internal, True, dist, edges)

    def bridge_edges(self, s: int, t: int):
        """Candidate bridge edges with their path-count weights.

        Returns ``(connected, dist, [(v, w, sigma_s(v) * sigma_t(w)), ...],
        edges_visited)``. The weights sum to the total number of shortest
        s-t paths, which is what the conservation tests check.
        """
        connected, dist, pool, edges = self._search(s, t)
        sig_s = self._sig_s
        sig_t = self._sig_t
        weighted = [(x, y, sig_s[x] * sig_t[y]) for x, y in pool]
        return connected, dist, weighted, edges

    def _search(self, s: int, t: int):
        n = self.n
        if not 0 <= s < n:
            raise IndexError(f"node id {s} out of range [0, {n})")
        if not 0 <= t < n:
            raise IndexError(f"node id {t} out of range [0, {n})")
        if s == t:
            raise ValueError("endpoints of a path sample must be distinct")

        epoch = self._epoch + 1
        self._epoch = epoch
        mark_s = self._mark_s
        mark_t = self._mark_t
        dist_s = self._dist_s
        dist_t = self._dist_t
        sig_s = self._sig_s
        sig_t = self._sig_t
        fo, ftg, ro, rtg = self._fo, self._ftg, self._ro, self._rtg

        mark_s[s] = epoch
        dist_s[s] = 0
        sig_s[s] = 1.0
        mark_t[t] = epoch
        dist_t[t] = 0
        sig_t[t] = 1.0
        frontier_s = [s]
        frontier_t = [t]
        depth_s = 0
        depth_t = 0
        edges = 0
        cands: list = []

        while True:
            work_s = 0
            for v in frontier_s:
                work_s += fo[v + 1] - fo[v]
            work_t = 0
            for v in frontier_t:
                work_t += ro[v + 1] - ro[v]
            if work_s <= work_t:
                depth_s += 1
                d = depth_s
                nxt = []
                for v in frontier_s:
                    sv = sig_s[v]
                    b0 = fo[v]
                    b1 = fo[v + 1]
                    edges += b1 - b0
                    for w in ftg[b0:b1]:
                        if mark_t[w] == epoch:
                            cands.append((d + dist_t[w], v, w))
                        elif mark_s[w] == epoch:
                            if dist_s[w] == d:
                                sig_s[w] += sv
                        else:
                            mark_s[w] = epoch
                            dist_s[w] = d
                            sig_s[w] = sv
                            nxt.append(w)
                frontier_s = nxt
            else:
                depth_t += 1
                d = depth_t
                nxt = []
                for v in frontier_t:
                    sv = sig_t[v]
                    b0 = ro[v]
                    b1 = ro[v + 1]
                    edges += b1 - b0
                    for w in rtg[b0:b1]:
                        if mark_s[w] == epoch:
                            cands.append((dist_s[w] + d, w, v))
                        elif mark_t[w] == epoch:
                            if dist_t[w] == d:
                                sig_t[w] += sv
                        else:
                            mark_t[w] = epoch
                            dist_t[w] = d
                            sig_t[w] = sv
                            nxt.append(w)
                frontier_t = nxt
            if cands:
                # Bridge edges can in principle witness different totals
                # within one level; keep only those on true shortest paths.
                dmin = min(c[0] for c in cands)
                pool = [(x, y) for (length, x, y) in cands if length == dmin]
                return True, dmin, pool, edges
            if not frontier_s or not frontier_t:
                return False, -1, [], edges

    def _backtrack_to_source(self, x: int) -> list:
        """Walk from x down to the source, sampling predecessors; excludes the source."""
        epoch = self._epoch
        mark_s = self._mark_s
        dist_s = self._dist_s
        sig_s = self._sig_s
        ro, rtg = self._ro, self._rtg
        rng = self.rng
        out = []
        cur = x
        while dist_s[cur] > 0:
            out.append(cur)
            want = dist_s[cur] - 1
            pick = rng.random() * sig_s[cur]
            nxt = cur
            for u in rtg[ro[cur] : ro[cur + 1]]:
                if mark_s[u] == epoch and dist_s[u] == want:
                    pick -= sig_s[u]
                    nxt = u
                    if pick <= 0.0:
                        break
            cur = nxt
        return out

    def _walk_to_target(self, y: int, out: list) -> None:
        """Walk from y toward the target, sampling successors; excludes the target."""
        epoch = self._epoch
        mark_t = self._mark_t
        dist_t = self._dist_t
        sig_t = self._sig_t
        fo, ftg = self._fo, self._ftg
        rng = self.rng
        cur = y
        while dist_t[cur] > 0:
            out.append(cur)
            want = dist_t[cur] - 1
            pick = rng.random() * sig_t[cur]
            nxt = cur
            for w in ftg[fo[cur] : fo[cur + 1]]:
                if mark_t[w] == epoch and dist_t[w] == want:
                    pick -= sig_t[w]
                    nxt = w
                    if pick <= 0.0:
                        break
            cur = nxt


def balanced_bidirectional_bfs(g: Graph, s: int, t: int, rng: random.Random) -> PathSample:
    """One-shot convenience wrapper around :class:`PathSampler`."""
    return PathSampler(g, rng).sample_st(s, t)


def shortest_path_count(g: Graph, s: int, t: int):
    """Exact ``(distance, sigma_st)`` by a full forward BFS with path counting.

    Returns ``(inf, 0.0)`` when t is unreachable. This is the reference
    the bidirectional sampler is validated against.
    """
    n = g.n
    if not 0 <= s < n:
        raise IndexError(f"node id {s} out of range [0, {n})")
    if not 0 <= t < n:
        raise IndexError(f"node id {t} out of range [0, {n})")
    if s == t:
        return 0, 1.0
    fo, ftg, _, _ = g.adjacency_lists()
    dist = [-1] * n
    sig = [0.0] * n
    dist[s] = 0
    sig[s] = 1.0
    frontier = [s]
    d = 0
    while frontier:
        if dist[t] >= 0:
            # t's sigma is final once the level before it has been fully expanded
            break
        d += 1
        nxt = []
        for v in frontier:
            sv = sig[v]
            for w in ftg[fo[v] : fo[v + 1]]:
                if dist[w] < 0:
                    dist[w] = d
                    sig[w] = sv
                    nxt.append(w)
                elif dist[w] == d:
                    sig[w] += sv
        frontier = nxt
    if dist[t] < 0:
        return math.inf, 0.0
    return dist[t], sig[t]
