"""Immutable adjacency-array graph with edge-list I/O.

Nodes carry arbitrary tokens that are mapped to dense integer ids in
first-appearance order. Forward and reverse adjacency are stored as
offset/target arrays with targets sorted per node, so iteration order is
deterministic. Self-loops and duplicate arcs are dropped at construction
and counted; for undirected graphs a duplicate includes the reversed copy
of an already-seen edge.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO, Iterable

import numpy as np


class GraphError(ValueError):
    """Invalid graph input."""


class EdgeListParseError(GraphError):
    """Malformed edge-list line; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Graph:
    """Read-only graph over dense node ids ``0..n-1``.

    Immutable after construction, so instances can be shared freely
    across concurrent workers.
    """

    __slots__ = (
        "n",
        "directed",
        "fwd_offsets",
        "fwd_targets",
        "rev_offsets",
        "rev_targets",
        "labels",
        "dropped_self_loops",
        "dropped_duplicates",
        "_label_map",
        "_lists",
    )

    def __init__(
        self,
        n: int,
        directed: bool,
        fwd_offsets: np.ndarray,
        fwd_targets: np.ndarray,
        rev_offsets: np.ndarray,
        rev_targets: np.ndarray,
        labels: list,
        dropped_self_loops: int,
        dropped_duplicates: int,
    ):
        self.n = n
        self.directed = directed
        self.fwd_offsets = fwd_offsets
        self.fwd_targets = fwd_targets
        self.rev_offsets = rev_offsets
        self.rev_targets = rev_targets
        self.labels = labels
        self.dropped_self_loops = dropped_self_loops
        self.dropped_duplicates = dropped_duplicates
        self._label_map = None
        self._lists = None

    @property
    def label_map(self) -> dict:
        """Original node token -> dense id."""
        if self._label_map is None:
            self._label_map = {tok: i for i, tok in enumerate(self.labels)}
        return self._label_map

    @property
    def num_arcs(self) -> int:
        """Stored arc endpoints; for undirected graphs this is twice the edge count."""
        return int(self.fwd_targets.size)

    @property
    def num_edges(self) -> int:
        return self.num_arcs if self.directed else self.num_arcs // 2

    def out_degree(self, v: int) -> int:
        self._check_id(v)
        return int(self.fwd_offsets[v + 1] - self.fwd_offsets[v])

    def in_degree(self, v: int) -> int:
        self._check_id(v)
        return int(self.rev_offsets[v + 1] - self.rev_offsets[v])

    def out_neighbors(self, v: int) -> np.ndarray:
        self._check_id(v)
        return self.fwd_targets[self.fwd_offsets[v] : self.fwd_offsets[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        self._check_id(v)
        return self.rev_targets[self.rev_offsets[v] : self.rev_offsets[v + 1]]

    def has_arc(self, u: int, v: int) -> bool:
        nbrs = self.out_neighbors(u)
        i = int(np.searchsorted(nbrs, v))
        return i < nbrs.size and int(nbrs[i]) == v

    def _check_id(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"node id {v} out of range [0, {self.n})")

    def adjacency_lists(self):
        """Adjacency as plain Python lists ``(fwd_off, fwd_tgt, rev_off, rev_tgt)``.

        Cached; used by the traversal hot loops where list indexing beats
        numpy scalar access.
        """
        if self._lists is None:
            fo = self.fwd_offsets.tolist()
            ftg = self.fwd_targets.tolist()
            if self.directed:
                ro = self.rev_offsets.tolist()
                rtg = self.rev_targets.tolist()
            else:
                ro, rtg = fo, ftg
            self._lists = (fo, ftg, ro, rtg)
        return self._lists

    def dump_edge_list(self, out: IO[str]) -> None:
        """Write one arc per line (undirected edges once, smaller id first)."""
        labels = self.labels
        off = self.fwd_offsets
        tgt = self.fwd_targets
        for u in range(self.n):
            for j in range(int(off[u]), int(off[u + 1])):
                w = int(tgt[j])
                if self.directed or u < w:
                    out.write(f"{labels[u]} {labels[w]}\n")

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, edges={self.num_edges}, {kind})"

    @classmethod
    def from_edges(cls, pairs: Iterable, directed: bool = False, num_nodes: int | None = None) -> "Graph":
        """Build from an iterable of ``(u, v)`` token pairs.

        With ``num_nodes`` the tokens must already be integer ids in
        ``[0, num_nodes)`` and isolated nodes are kept; otherwise dense ids
        are assigned in first-appearance order.
        """
        if num_nodes is not None:
            us, vs = [], []
            for u, v in pairs:
                us.append(u)
                vs.append(v)
            us = np.asarray(us, dtype=np.int64) if us else np.empty(0, dtype=np.int64)
            vs = np.asarray(vs, dtype=np.int64) if vs else np.empty(0, dtype=np.int64)
            return cls.from_arrays(num_nodes, us, vs, directed=directed)
        ids: dict = {}
        labels: list = []
        us, vs = [], []
        for u, v in pairs:
            iu = ids.get(u)
            if iu is None:
                iu = ids[u] = len(labels)
                labels.append(u)
            iv = ids.get(v)
            if iv is None:
                iv = ids[v] = len(labels)
                labels.append(v)
            us.append(iu)
            vs.append(iv)
        if not labels:
            raise GraphError("empty graph: no nodes found")
        return cls._build(
            len(labels),
            np.asarray(us, dtype=np.int64),
            np.asarray(vs, dtype=np.int64),
            directed,
            labels,
        )

    @classmethod
    def from_arrays(cls, num_nodes: int, us: np.ndarray, vs: np.ndarray, directed: bool = False) -> "Graph":
        """Build from integer id arrays; keeps isolated nodes in ``[0, num_nodes)``."""
        if num_nodes <= 0:
            raise GraphError("empty graph: num_nodes must be positive")
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size and (us.min() < 0 or vs.min() < 0 or us.max() >= num_nodes or vs.max() >= num_nodes):
            raise GraphError("edge endpoint outside [0, num_nodes)")
        return cls._build(num_nodes, us, vs, directed, list(range(num_nodes)))

    @staticmethod
    def _build(n: int, us: np.ndarray, vs: np.ndarray, directed: bool, labels: list) -> "Graph":
        keep = us != vs
        dropped_self = int(us.size - keep.sum())
        us, vs = us[keep], vs[keep]
        if not directed and us.size:
            lo = np.minimum(us, vs)
            hi = np.maximum(us, vs)
            us, vs = lo, hi
        if us.size:
            keys = np.unique(us * n + vs)
            dropped_dup = int(us.size - keys.size)
            us, vs = keys // n, keys % n
        else:
            dropped_dup = 0
        if directed:
            f_off, f_tgt = _csr(n, us, vs)
            r_off, r_tgt = _csr(n, vs, us)
        else:
            both_u = np.concatenate([us, vs])
            both_v = np.concatenate([vs, us])
            f_off, f_tgt = _csr(n, both_u, both_v)
            r_off, r_tgt = f_off, f_tgt
        return Graph(n, directed, f_off, f_tgt, r_off, r_tgt, labels, dropped_self, dropped_dup)


def _csr(n: int, srcs: np.ndarray, tgts: np.ndarray):
    keys = np.sort(srcs * n + tgts)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(keys // n, minlength=n), out=offsets[1:])
    return offsets, keys % n


def load_edge_list(source: str | Path | IO[str], directed: bool = False) -> Graph:
    """Parse a whitespace-separated edge list into a :class:`Graph`.

    ``source`` is a path or an open text stream. Lines starting with ``#``
    or ``%`` and blank lines are ignored; every other line must hold
    exactly two node tokens.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_edge_list(fh, directed=directed)
    return Graph.from_edges(_parse_lines(source), directed=directed)


def _parse_lines(stream: Iterable[str]):
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(lineno, f"expected 2 tokens, found {len(tokens)}")
        yield tokens[0], tokens[1]
