import math
import random

import numpy as np
import pytest

from bcsampler import compute_deltas
from bcsampler.allocator import warmup_estimates
from conftest import gnp_graph, path_graph, star_graph


def test_degenerate_warmup_smoothing_only():
    g = path_graph(6)
    n = g.n
    delta, eps = 0.1, 0.0001
    bud = compute_deltas(
        g, np.full(n, 0.1), np.full(n, 0.1), 1000, delta, eps, warmup=(np.zeros(n), 10)
    )
    assert bud.note == "degenerate-costs"
    assert np.allclose(bud.delta_l, eps * delta / (2 * n))
    assert np.allclose(bud.delta_u, eps * delta / (2 * n))
    assert bud.total() == pytest.approx(eps * delta, abs=1e-15)


def test_symmetric_case_matches_quarter_split():
    # identical warm-up estimates and targets make every budget delta/(4n)
    g = path_graph(10)
    n, delta = g.n, 0.1
    bud = compute_deltas(
        g, np.full(n, 0.1), np.full(n, 0.1), 500, delta, 0.0001, warmup=(np.full(n, 0.02), 5)
    )
    assert bud.delta_l == pytest.approx(np.full(n, delta / (4 * n)), abs=1e-10)
    assert bud.delta_u == pytest.approx(np.full(n, delta / (4 * n)), abs=1e-10)


def test_two_cost_bisection_matches_independent_root():
    brentq = pytest.importorskip("scipy.optimize").brentq
    g = path_graph(2)
    omega, delta, eps = 100, 0.1, 0.001
    # arrange lambda targets so the cost factors are exactly {1, 2}
    btilde = np.array([0.00005, 0.0001])
    lam = np.full(2, 0.1)  # c = 2 * b * omega / lam^2 -> 1 and 2
    bud = compute_deltas(g, lam, lam, omega, delta, eps, warmup=(btilde, 10))
    costs = 2.0 * btilde * omega / lam**2
    assert costs == pytest.approx([1.0, 2.0])
    target = delta / 2 - eps * delta

    def h(c):
        return 2 * (math.exp(-c / 1.0) + math.exp(-c / 2.0)) - target

    root = brentq(h, 0.0, 100.0, xtol=1e-14)
    assert bud.bisect_c == pytest.approx(root, abs=1e-10)


def test_budget_invariant_random_configs():
    rng = random.Random(0)
    nprng = np.random.default_rng(0)
    for seed in range(10):
        g = gnp_graph(40, 0.1, seed=seed)
        lam_l = nprng.uniform(0.02, 0.9, g.n)
        lam_u = nprng.uniform(0.02, 0.9, g.n)
        delta = float(nprng.uniform(0.01, 0.5))
        bud = compute_deltas(g, lam_l, lam_u, 800, delta, rng=rng)
        assert bud.total() <= delta / 2 + 1e-12
        assert np.all(bud.delta_l > 0) and np.all(bud.delta_u > 0)
        assert np.all(bud.delta_l < 1) and np.all(bud.delta_u < 1)


def test_remaining_sum_is_monotone_in_c():
    costs = np.array([0.5, 1.0, 3.0, 7.0])
    vals = [float(np.exp(-c / costs).sum()) for c in np.linspace(0, 50, 40)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_deterministic_under_seed():
    g = star_graph(12)
    lam = np.full(g.n, 0.1)
    a = compute_deltas(g, lam, lam, 400, 0.1, rng=random.Random(5))
    b = compute_deltas(g, lam, lam, 400, 0.1, rng=random.Random(5))
    assert np.array_equal(a.delta_l, b.delta_l)
    assert np.array_equal(a.delta_u, b.delta_u)
    assert np.array_equal(a.preliminary_btilde, b.preliminary_btilde)


def test_warmup_estimates_are_frequencies():
    g = star_graph(8)
    bt = warmup_estimates(g, 200, random.Random(3))
    assert bt.shape == (8,)
    assert np.all(bt >= 0) and np.all(bt <= 1)
    assert bt[0] > 0.5  # the hub is on most sampled paths
    assert np.allclose(bt[1:], 0.0)  # leaves are never internal


def test_alpha_is_one_hundredth_of_omega():
    g = path_graph(4)
    bud = compute_deltas(
        g, np.full(4, 0.1), np.full(4, 0.1), 2500, 0.1, rng=random.Random(1)
    )
    assert bud.alpha == 25
    bud = compute_deltas(g, np.full(4, 0.1), np.full(4, 0.1), 50, 0.1, rng=random.Random(1))
    assert bud.alpha == 1


def test_parameter_validation():
    g = path_graph(4)
    lam = np.full(4, 0.1)
    with pytest.raises(ValueError):
        compute_deltas(g, lam, lam, 100, 1.5, rng=random.Random(0))
    with pytest.raises(ValueError):
        compute_deltas(g, np.zeros(4), lam, 100, 0.1, rng=random.Random(0))
    with pytest.raises(ValueError):
        compute_deltas(g, lam, lam, 100, 0.1, epsilon=0.7, rng=random.Random(0))
    with pytest.raises(ValueError):
        compute_deltas(g, lam[:2], lam, 100, 0.1, rng=random.Random(0))
    with pytest.raises(ValueError):
        compute_deltas(g, lam, lam, 100, 0.1)  # no rng, no warmup
