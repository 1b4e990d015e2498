import math

import numpy as np
import pytest

from bcsampler import (
    ErrorParams,
    compute_omega,
    estimate_vertex_diameter,
    f_lower,
    g_upper,
)
from conftest import complete_graph, path_graph


def test_omega_reference_values():
    assert compute_omega(0.05, 0.1, 0.5, 10) == 1400
    assert compute_omega(0.1, 0.5, 0.5, 3) == 120


def test_omega_quadruples_when_lambda_halves():
    base = (0.5 / 0.1**2) * (3 + 1 + math.log(2 / 0.1))
    half = (0.5 / 0.05**2) * (3 + 1 + math.log(2 / 0.1))
    assert half == pytest.approx(4 * base, rel=1e-12)
    assert compute_omega(0.05, 0.1, 0.5, 10) >= 4 * compute_omega(0.1, 0.1, 0.5, 10) - 4


def test_omega_log_term_clamps_below_vd4():
    # vd 2 and 3 share the clamped log term
    assert compute_omega(0.1, 0.1, 0.5, 2) == compute_omega(0.1, 0.1, 0.5, 3)
    assert compute_omega(0.1, 0.1, 0.5, 4) > compute_omega(0.1, 0.1, 0.5, 3)


def test_omega_parameter_errors():
    with pytest.raises(ValueError):
        compute_omega(0.0, 0.1, 0.5, 10)
    with pytest.raises(ValueError):
        compute_omega(0.05, 1.0, 0.5, 10)
    with pytest.raises(ValueError):
        compute_omega(0.05, 0.1, 0.5, 1)


def test_error_params_validation():
    ErrorParams(lam=0.1, delta=0.1, c=0.5, omega=100, vd=5)
    with pytest.raises(ValueError):
        ErrorParams(lam=1.5, delta=0.1, c=0.5, omega=100, vd=5)
    with pytest.raises(ValueError):
        ErrorParams(lam=0.1, delta=0.1, c=0.5, omega=0, vd=5)


def test_vd_path5_bracket():
    g = path_graph(5)
    # sampling every node: max eccentricity 4 -> estimate 9; never below true value 5
    assert estimate_vertex_diameter(g, num_samples=5, rng=0) == 9
    for seed in range(10):
        vd = estimate_vertex_diameter(g, num_samples=1, rng=seed)
        assert 5 <= vd <= 9 or vd == 5  # middle source gives 2*2+1 = 5
        assert vd in (5, 7, 9)


def test_vd_complete_graph():
    assert estimate_vertex_diameter(complete_graph(4), num_samples=4, rng=1) == 3


def test_vd_single_edge():
    assert estimate_vertex_diameter(path_graph(2), num_samples=2, rng=0) == 3


def test_vd_directed_uses_both_directions():
    from bcsampler import Graph

    g = Graph.from_edges([(0, 1), (1, 2), (2, 3)], directed=True, num_nodes=4)
    vd = estimate_vertex_diameter(g, num_samples=4, rng=0)
    assert vd == 3 + 3 + 1  # forward ecc 3 (from 0), backward ecc 3 (from 3)


def test_f_zero_estimate_is_exactly_zero():
    for tau, omega in [(1, 1), (10, 100), (500, 1000)]:
        assert f_lower(0.0, 0.05, omega, tau) == 0.0


def test_f_reference_value():
    assert f_lower(0.1, 0.01, 1000, 1000) == pytest.approx(0.02743, abs=5e-6)


def test_g_closed_form_at_zero_estimate():
    omega = 1000
    val = g_upper(0.0, 0.01, omega, omega)
    assert val == pytest.approx(math.log(100.0) / omega * (8 / 3), rel=1e-12)


def test_g_vanishes_as_budget_approaches_one():
    # decays like sqrt(ln(1/d)) for d near 1
    assert g_upper(0.3, 1.0, 100, 50) == 0.0
    assert g_upper(0.3, 1.0 - 1e-6, 100, 50) < 1e-3
    assert g_upper(0.3, 1.0 - 1e-12, 100, 50) < 1e-6


def test_zero_budget_sentinel():
    assert f_lower(0.2, 0.0, 100, 50) == math.inf
    assert g_upper(0.2, 0.0, 100, 50) == math.inf


def test_halfwidth_argument_errors():
    with pytest.raises(ValueError):
        f_lower(0.1, 0.05, 100, 0)
    with pytest.raises(ValueError):
        f_lower(0.1, 0.05, 100, 101)
    with pytest.raises(ValueError):
        g_upper(1.5, 0.05, 100, 50)
    with pytest.raises(ValueError):
        g_upper(0.5, 1.5, 100, 50)


def test_g_dominates_f():
    rng = np.random.default_rng(0)
    for _ in range(200):
        omega = int(rng.integers(10, 10000))
        tau = int(rng.integers(1, omega + 1))
        b = float(rng.random())
        d = float(rng.uniform(1e-6, 0.5))
        assert g_upper(b, d, omega, tau) >= f_lower(b, d, omega, tau)


def test_monotone_in_estimate_and_budget():
    omega, tau = 2000, 900
    bs = np.linspace(0, 1, 25)
    fv = f_lower(bs, 0.01, omega, tau)
    gv = g_upper(bs, 0.01, omega, tau)
    assert np.all(np.diff(fv) >= -1e-15)
    assert np.all(np.diff(gv) >= -1e-15)
    ds = np.linspace(0.001, 0.5, 25)
    fv = f_lower(0.3, ds, omega, tau)
    assert np.all(np.diff(fv) <= 1e-15)  # shrinks as the budget loosens


def test_halfwidths_shrink_as_tau_grows():
    omega = 5000
    taus = np.arange(100, omega + 1, 100)
    fs = [f_lower(0.2, 0.01, omega, int(t)) for t in taus]
    gs = [g_upper(0.2, 0.01, omega, int(t)) for t in taus]
    assert all(a >= b for a, b in zip(fs, fs[1:]))
    assert all(a >= b for a, b in zip(gs, gs[1:]))


def _residual_f(b, d, omega, tau):
    f = f_lower(b, d, omega, tau)
    lam_star = tau * f
    b_true = b - f
    lhs = lam_star**2
    rhs = 2 * math.log(1 / d) * (omega * b_true + lam_star / 3)
    return lhs, rhs, b_true


def _residual_g(b, d, omega, tau):
    g = g_upper(b, d, omega, tau)
    lam_star = tau * g
    b_true = b + g
    lhs = lam_star**2
    rhs = 2 * math.log(1 / d) * (omega * b_true + lam_star / 3)
    return lhs, rhs


def test_quadratic_residuals_spot():
    for b in (0.01, 0.1, 0.5, 0.9):
        for d in (1e-6, 1e-3, 0.2):
            for omega, tau in [(1000, 1000), (5000, 700), (100, 7)]:
                lhs, rhs, b_true = _residual_f(b, d, omega, tau)
                if b_true >= 0:
                    assert lhs == pytest.approx(rhs, rel=1e-9)
                lhs, rhs = _residual_g(b, d, omega, tau)
                assert lhs == pytest.approx(rhs, rel=1e-9)


def test_scalar_and_array_agree():
    bs = np.array([0.0, 0.2, 0.9])
    ds = np.array([0.1, 0.01, 0.3])
    arr = f_lower(bs, ds, 500, 200)
    for i in range(3):
        assert arr[i] == f_lower(float(bs[i]), float(ds[i]), 500, 200)
