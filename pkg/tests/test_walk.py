import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwjoin import (
    alpha,
    decompose,
    family,
    graph_matrix,
    in_T,
    join,
    join_entry_A,
    join_entry_L,
    join_params,
    transition_matrix,
    unitary_exp,
)
from qwjoin.walk import transition_entries

from conftest import oracle_transition, random_circulant, random_simple, random_weighted


def test_transition_matches_scipy_fixed_cases():
    for name, args, matrix in [
        ("C", (4,), "laplacian"),
        ("P", (3,), "adjacency"),
        ("K", (5,), "laplacian"),
        ("CP", (6,), "adjacency"),
    ]:
        g = family(name, *args)
        m = graph_matrix(g, matrix)
        for t in (0.0, 0.3, math.pi / 2, 2.7):
            got = transition_matrix(decompose(m), t)
            assert np.allclose(got, oracle_transition(m, t), atol=1e-9)


@given(st.integers(min_value=0, max_value=10**6), st.floats(-8.0, 8.0))
@settings(max_examples=50, deadline=None)
def test_transition_matches_scipy_random(seed, t):
    rng = np.random.default_rng(seed)
    g = random_weighted(rng, int(rng.integers(2, 7)))
    m = graph_matrix(g, "laplacian")
    assert np.allclose(
        transition_matrix(decompose(m), t), oracle_transition(m, t), atol=1e-8
    )


@given(st.integers(min_value=0, max_value=10**6), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
@settings(max_examples=60, deadline=None)
def test_unitarity_and_group_law(seed, s, t):
    rng = np.random.default_rng(seed)
    g = random_simple(rng, int(rng.integers(2, 7)))
    d = decompose(graph_matrix(g, "laplacian"))
    us, ut = transition_matrix(d, s), transition_matrix(d, t)
    assert np.allclose(us @ us.conj().T, np.eye(g.order), atol=1e-9)
    assert np.allclose(us @ ut, transition_matrix(d, s + t), atol=1e-9)


def test_transition_entries_vectorized():
    d = decompose(graph_matrix(family("C", 5), "laplacian"))
    times = np.linspace(0.0, 3.0, 17)
    entries = transition_entries(d, 0, 2, times)
    singles = [transition_matrix(d, t)[0, 2] for t in times]
    assert np.allclose(entries, singles, atol=1e-10)


def test_unitary_exp_independent_route():
    rng = np.random.default_rng(3)
    for _ in range(10):
        g = random_weighted(rng, int(rng.integers(2, 7)))
        m = graph_matrix(g, "adjacency")
        t = float(rng.uniform(-4, 4))
        assert np.allclose(unitary_exp(m, t), oracle_transition(m, t), atol=1e-9)
        assert np.allclose(
            unitary_exp(m, t), transition_matrix(decompose(m), t), atol=1e-9
        )


def test_join_entry_laplacian_closed_form():
    rng = np.random.default_rng(17)
    for _ in range(25):
        x = random_weighted(rng, int(rng.integers(1, 6)))
        y = random_weighted(rng, int(rng.integers(1, 6)))
        jm = graph_matrix(join(x, y), "laplacian")
        dx = decompose(graph_matrix(x, "laplacian"))
        dy = decompose(graph_matrix(y, "laplacian"))
        t = float(rng.uniform(0, 6))
        u_full = oracle_transition(jm, t)
        for u in range(x.order):
            for v in range(x.order):
                got = join_entry_L(x, y, u, v, t, dx, dy)
                assert abs(got - u_full[u, v]) <= 1e-9
        got_cross = join_entry_L(x, y, 0, x.order, t, dx, dy)
        assert abs(got_cross - u_full[0, x.order]) <= 1e-9


def test_join_entry_adjacency_closed_form():
    rng = np.random.default_rng(19)
    for _ in range(25):
        x = random_circulant(rng, int(rng.integers(1, 6)))
        y = random_circulant(rng, int(rng.integers(1, 6)))
        jm = graph_matrix(join(x, y), "adjacency")
        dx = decompose(graph_matrix(x, "adjacency"))
        dy = decompose(graph_matrix(y, "adjacency"))
        t = float(rng.uniform(0, 6))
        u_full = oracle_transition(jm, t)
        for u in range(x.order):
            for v in range(x.order):
                got = join_entry_A(x, y, u, v, t, dx, dy)
                assert abs(got - u_full[u, v]) <= 1e-9
        got_cross = join_entry_A(x, y, 0, x.order, t, dx, dy)
        assert abs(got_cross - u_full[0, x.order]) <= 1e-9


def test_alpha_fixed_value():
    params = join_params(family("C", 6), family("O", 2), "laplacian")
    # m=6, n=2 at t=pi/2: (6 e^{-2it} + 2 e^{6it} - 8)/48 = -1/3
    assert alpha(params, math.pi / 2) == pytest.approx(-1.0 / 3.0)
    assert abs(alpha(params, 0.0)) <= 1e-12


def test_alpha_broadcasts_and_bound():
    params = join_params(family("C", 6), family("O", 2), "laplacian")
    ts = np.linspace(0.0, 4 * math.pi, 999)
    vals = alpha(params, ts)
    assert vals.shape == ts.shape
    assert np.max(np.abs(vals)) <= 2.0 / params.m + 1e-12


def test_lattice_membership():
    params = join_params(family("C", 6), family("O", 2), "laplacian")
    # gcd(m, n) = 2, so the revival lattice is spaced pi
    assert in_T(params, math.pi)
    assert in_T(params, 3 * math.pi)
    assert not in_T(params, math.pi / 2)
    vals = alpha(params, np.array([math.pi, 2 * math.pi, 3 * math.pi]))
    assert np.allclose(vals, 0.0, atol=1e-12)


def test_regular_graph_walks_agree_up_to_modulus():
    rng = np.random.default_rng(29)
    graphs = [family("C", 4), family("K", 4), family("CP", 6)]
    graphs += [random_circulant(rng, int(rng.integers(2, 8))) for _ in range(10)]
    for g in graphs:
        dl = decompose(graph_matrix(g, "laplacian"))
        da = decompose(graph_matrix(g, "adjacency"))
        for t in (0.4, 1.1, math.pi / 2):
            ul = transition_matrix(dl, t)
            ua = transition_matrix(da, t)
            assert np.allclose(np.abs(ul), np.abs(ua), atol=1e-9)
