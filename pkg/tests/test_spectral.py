import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwjoin import (
    WeightedGraph,
    decompose,
    disjoint_union,
    eigenvalue_support,
    family,
    graph_matrix,
    join,
    join_params,
    join_support,
    parse_iterated_spec,
    iterated_join,
    iterated_join_support,
    iterated_vertex,
)
from qwjoin.errors import PreconditionError

from conftest import (
    oracle_support,
    random_circulant,
    random_simple,
    random_weighted,
    sets_close,
)


def symmetric(entries):
    a = np.array(entries, dtype=float)
    return (a + a.T) / 2.0


@given(st.lists(st.floats(-5, 5), min_size=4, max_size=16))
@settings(max_examples=60, deadline=None)
def test_decompose_matches_eigh(flat):
    n = int(np.sqrt(len(flat)))
    if n < 2:
        return
    a = symmetric(np.resize(flat, (n, n)))
    d = decompose(a)
    w = np.sort(np.linalg.eigvalsh(a))[::-1]
    expanded = np.repeat(d.eigenvalues, d.multiplicities)
    assert np.allclose(expanded, w, atol=1e-7)


@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=40, deadline=None)
def test_projector_algebra(order, seed):
    rng = np.random.default_rng(seed)
    a = symmetric(rng.normal(size=(order, order)))
    d = decompose(a)
    total = np.zeros_like(a)
    rebuilt = np.zeros_like(a)
    for lam, proj in zip(d.eigenvalues, d.projectors):
        assert np.allclose(proj @ proj, proj, atol=1e-8)
        total += proj
        rebuilt += lam * proj
    for p1 in d.projectors:
        for p2 in d.projectors:
            if p1 is not p2:
                assert np.allclose(p1 @ p2, 0.0, atol=1e-8)
    assert np.allclose(total, np.eye(order), atol=1e-8)
    assert np.allclose(rebuilt, a, atol=1e-7)


def test_cycle_laplacian_decomposition():
    d = decompose(graph_matrix(family("C", 4), "laplacian"))
    assert np.allclose(d.eigenvalues, [4.0, 2.0, 0.0], atol=1e-9)
    assert d.multiplicities == [1, 2, 1]


def test_eigenvalue_support_path():
    d = decompose(graph_matrix(family("P", 3), "laplacian"))
    # the middle vertex misses the antisymmetric eigenvector at 1
    assert sets_close(eigenvalue_support(d, 0), [3.0, 1.0, 0.0])
    assert sets_close(eigenvalue_support(d, 1), [3.0, 0.0])


def test_support_matches_oracle_on_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(40):
        g = random_weighted(rng, int(rng.integers(2, 8)))
        for matrix in ("laplacian", "adjacency"):
            m = graph_matrix(g, matrix)
            d = decompose(m)
            for u in range(g.order):
                assert sets_close(eigenvalue_support(d, u), oracle_support(m, u))


def test_join_params_laplacian():
    p = join_params(family("C", 4), family("O", 2), "laplacian")
    assert (p.m, p.n) == (4, 2)
    with pytest.raises(ValueError):
        p.lam_plus  # degrees are an adjacency-side notion
    with pytest.raises(PreconditionError):
        join_params(family("O_loops", 2, 1.0), family("O", 2), "laplacian")


def test_join_params_adjacency():
    p = join_params(family("K", 6), family("K", 2), "adjacency")
    assert (p.m, p.n, p.k, p.ell) == (6, 2, 5.0, 1.0)
    assert p.discriminant == pytest.approx(64.0)
    assert p.lam_plus == pytest.approx(7.0)
    assert p.lam_minus == pytest.approx(-1.0)
    with pytest.raises(PreconditionError):
        join_params(family("P", 3), family("K", 2), "adjacency")


def test_join_support_shift_rule_laplacian():
    # connected part: nonzero support shifts by n, then {0, m+n} joins in;
    # for C4 the shifted 4 collides with m+n=6
    x, y = family("C", 4), family("O", 2)
    assert sets_close(join_support(x, y, 0), [6.0, 4.0, 0.0])
    # disconnected part additionally keeps n itself
    assert sets_close(join_support(family("O", 2), y, 0), [4.0, 2.0, 0.0])


def test_join_support_matches_oracle():
    rng = np.random.default_rng(23)
    for _ in range(30):
        x = random_simple(rng, int(rng.integers(1, 7)))
        y = random_simple(rng, int(rng.integers(1, 7)))
        jm = graph_matrix(join(x, y), "laplacian")
        for u in range(x.order):
            assert sets_close(join_support(x, y, u), oracle_support(jm, u))
        for v in range(y.order):
            assert sets_close(
                join_support(x, y, v, side="right"), oracle_support(jm, x.order + v)
            )
    for _ in range(25):
        x = random_circulant(rng, int(rng.integers(1, 7)))
        y = random_circulant(rng, int(rng.integers(1, 7)))
        jm = graph_matrix(join(x, y), "adjacency")
        for u in range(x.order):
            assert sets_close(
                join_support(x, y, u, matrix="adjacency"), oracle_support(jm, u)
            )


def test_iterated_join_support_matches_oracle():
    specs = [
        "C4 v O2 u O4 v O2",
        "O2 v K2 u O1 v K3",
        "K2 v K2",
        "P3 u P3 v O2",
    ]
    for text in specs:
        spec = parse_iterated_spec(text)
        built = iterated_join(spec)
        d = decompose(graph_matrix(built, "laplacian"))
        for j, (part, _) in enumerate(spec.parts, start=1):
            for w in range(part.order):
                got = iterated_join_support(spec, j, w)
                want = eigenvalue_support(d, iterated_vertex(spec, j, w))
                assert sets_close(got, want), (text, j, w, got, want)


def test_iterated_support_regression_values():
    spec = parse_iterated_spec("C4 v O2 u O4 v O2")
    assert sets_close(iterated_join_support(spec, 1, 0), [12.0, 8.0, 6.0, 2.0, 0.0])
