"""Shared oracles and graph factories for the test suite.

Everything here deliberately avoids the package's own spectral code:
matrix exponentials go through scipy.linalg.expm and eigendecompositions
through numpy.linalg.eigh, so a comparison never has qwjoin on both sides.
"""

import numpy as np
import scipy.linalg

from qwjoin import WeightedGraph, graph_matrix


def oracle_transition(matrix, t):
    """exp(i t M) straight from scipy, no eigenprojectors involved."""
    return scipy.linalg.expm(1j * float(t) * np.asarray(matrix, dtype=float))


def oracle_eigengroups(matrix, tol=1e-8):
    """(eigenvalue, projector) pairs from numpy's eigh, grouped by closeness."""
    w, v = np.linalg.eigh(np.asarray(matrix, dtype=float))
    groups = []
    for i, lam in enumerate(w):
        if groups and abs(lam - groups[-1][-1]) <= tol:
            groups[-1].append(lam)
            continue
        groups.append([lam])
    out = []
    lo = 0
    for grp in groups:
        hi = lo + len(grp)
        vecs = v[:, lo:hi]
        out.append((float(np.mean(grp)), vecs @ vecs.T))
        lo = hi
    return out


def oracle_support(matrix, u, tol=1e-8):
    """Eigenvalues whose projector keeps some weight on vertex u, descending."""
    return sorted(
        (lam for lam, proj in oracle_eigengroups(matrix, tol) if abs(proj[u, u]) > tol),
        reverse=True,
    )


def oracle_strong_cospectral(matrix, u, v, tol=1e-7):
    """(plus, minus) eigenvalue lists, or None when the pair is not strongly cospectral."""
    plus, minus = [], []
    for lam, proj in oracle_eigengroups(matrix, tol):
        cu, cv = proj[:, u], proj[:, v]
        if np.linalg.norm(cu) <= tol and np.linalg.norm(cv) <= tol:
            continue
        if np.linalg.norm(cu - cv) <= tol:
            plus.append(lam)
        elif np.linalg.norm(cu + cv) <= tol:
            minus.append(lam)
        else:
            return None
    return sorted(plus, reverse=True), sorted(minus, reverse=True)


def sets_close(a, b, tol=1e-7):
    a, b = sorted(a), sorted(b)
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def random_simple(rng, order, p=0.5):
    edges = [
        (u, v, 1.0)
        for u in range(order)
        for v in range(u + 1, order)
        if rng.random() < p
    ]
    return WeightedGraph(order, edges)


def random_weighted(rng, order, p=0.6, weights=(0.5, 1.0, 1.5, 2.0, 3.0)):
    edges = [
        (u, v, float(rng.choice(weights)))
        for u in range(order)
        for v in range(u + 1, order)
        if rng.random() < p
    ]
    return WeightedGraph(order, edges)


def random_circulant(rng, order, p=0.7):
    """Unweighted circulant, the workhorse regular graph for adjacency joins."""
    conns = [s for s in range(1, order // 2 + 1) if rng.random() < p]
    pairs = {
        (min(u, (u + s) % order), max(u, (u + s) % order))
        for s in conns
        for u in range(order)
        if u != (u + s) % order
    }
    return WeightedGraph(order, [(a, b, 1.0) for a, b in sorted(pairs)])


def oracle_max_transfer(graph, u, v, matrix="laplacian", t_max=10.0, samples=2048):
    """Grid maximum of |U(t)[u, v]| via eigh phases (vectorized, still oracle-side)."""
    m = graph_matrix(graph, matrix)
    w, vec = np.linalg.eigh(m)
    ts = np.linspace(0.0, t_max, samples)
    phases = np.exp(1j * np.outer(ts, w))
    amps = phases @ (vec[u, :] * vec[v, :])
    return float(np.max(np.abs(amps)))
