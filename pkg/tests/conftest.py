"""Shared graph builders for the test suite."""

import numpy as np

from bcsampler import Graph


def path_graph(k, directed=False):
    return Graph.from_edges([(i, i + 1) for i in range(k - 1)], directed=directed, num_nodes=k)


def cycle_graph(k, directed=False):
    return Graph.from_edges([(i, (i + 1) % k) for i in range(k)], directed=directed, num_nodes=k)


def star_graph(n):
    """Center is node 0."""
    return Graph.from_edges([(0, i) for i in range(1, n)], num_nodes=n)


def complete_graph(k):
    return Graph.from_edges([(i, j) for i in range(k) for j in range(i + 1, k)], num_nodes=k)


def grid_graph(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(edges, num_nodes=rows * cols)


def two_hubs(leaves=8):
    """Two stars whose centers are joined through a middle node."""
    h1, mid, h2 = 0, 1, 2
    edges = [(h1, mid), (mid, h2)]
    nxt = 3
    for _ in range(leaves):
        edges.append((h1, nxt))
        nxt += 1
    for _ in range(leaves):
        edges.append((h2, nxt))
        nxt += 1
    return Graph.from_edges(edges, num_nodes=nxt)


def gnp_graph(n, p, seed, directed=False):
    rng = np.random.default_rng(seed)
    draws = rng.random((n, n))
    if directed:
        mask = draws < p
        np.fill_diagonal(mask, False)
    else:
        mask = np.triu(draws < p, 1)
    us, vs = np.nonzero(mask)
    return Graph.from_arrays(n, us, vs, directed=directed)
