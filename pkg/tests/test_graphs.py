import numpy as np
import pytest

from qwjoin import (
    WeightedGraph,
    disjoint_union,
    family,
    graph_matrix,
    is_connected,
    is_regular,
    is_simple,
    iterated_join,
    iterated_vertex,
    join,
    parse_iterated_spec,
    self_join,
)
from qwjoin.errors import PreconditionError
from qwjoin.graphs import Connective, IteratedJoinSpec


def spectrum(graph, matrix="laplacian"):
    return sorted(np.linalg.eigvalsh(graph_matrix(graph, matrix)).round(9))


def test_validation_rejects_malformed_input():
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 3, 1.0)])
    with pytest.raises(ValueError):
        WeightedGraph(3, [(1, 1, 1.0)])
    with pytest.raises(ValueError):
        WeightedGraph(3, [(0, 1, 1.0), (1, 0, 2.0)])
    with pytest.raises(ValueError):
        WeightedGraph(2, [(0, 1, 0.0)])
    with pytest.raises(ValueError):
        WeightedGraph(2, loops=[(0, 1.0), (0, 2.0)])


def test_edges_normalize_and_equality_ignores_provenance():
    g = WeightedGraph(2, [(1, 0, 2.0)])
    assert g.edges == {(0, 1): 2.0}
    j = join(family("O", 1), family("O", 1))
    assert j == WeightedGraph(2, [(0, 1, 1.0)])


def test_degree_and_matrices_with_loops():
    g = WeightedGraph(2, [(0, 1, 1.0)], loops=[(0, 3.0)])
    # a loop contributes twice to the degree and sits on the diagonal
    assert g.degree(0) == 7.0
    assert g.degree(1) == 1.0
    a = g.adjacency()
    assert a[0, 0] == 3.0 and a[0, 1] == 1.0
    with pytest.raises(PreconditionError):
        g.laplacian()


def test_family_constructors():
    assert family("K", 4).order == 4 and len(family("K", 4).edges) == 6
    assert family("P", 5).edges == {(i, i + 1): 1.0 for i in range(4)}
    assert family("C", 5) == WeightedGraph(5, [(i, (i + 1) % 5, 1.0) for i in range(5)])
    assert family("O", 3).edges == {}
    assert family("O_loops", 2, -3.0).loops == {0: -3.0, 1: -3.0}
    kb = family("K_bipartite", 2, 3)
    assert kb.order == 5 and len(kb.edges) == 6
    assert is_regular(family("CP", 8)) == 6.0
    assert is_regular(family("Q", 3)) == 3.0


def test_cocktail_party_small_cases_match_known_graphs():
    assert family("CP", 4) == family("C", 4)
    assert family("CP", 2) == family("O", 2)
    # Q2 is a relabeled 4-cycle: same spectrum, same degree sequence
    assert spectrum(family("Q", 2)) == spectrum(family("C", 4))
    assert sorted(family("Q", 2).degree(v) for v in range(4)) == [2.0] * 4


def test_complete_minus_edge_is_a_join():
    for d in (4, 5, 8):
        assert family("K_minus_e", d) == join(family("O", 2), family("K", d - 2))


def test_join_wires_all_cross_edges():
    x, y = family("P", 3), family("O", 2)
    j = join(x, y)
    assert j.order == 5
    for u in range(3):
        for v in range(3, 5):
            assert j.weight(u, v) == 1.0
    assert j.weight(0, 1) == 1.0 and j.weight(3, 4) == 0.0
    assert is_connected(j)


def test_disjoint_union_blocks():
    g = disjoint_union(family("K", 2), family("K", 2))
    assert g.edges == {(0, 1): 1.0, (2, 3): 1.0}
    assert not is_connected(g)


def test_self_join_of_cocktail_party_type():
    # r copies of O2 joined pairwise give the complete multipartite CP(2r)
    for r in (2, 3, 4):
        sj = self_join(family("O", 2), r)
        assert sj.order == 2 * r
        assert spectrum(sj) == spectrum(family("CP", 2 * r))
        assert is_regular(sj) == 2.0 * r - 2.0


def test_simple_and_regular_predicates():
    assert is_simple(family("C", 6))
    # simplicity is about loops; edge weights are allowed
    assert is_simple(WeightedGraph(2, [(0, 1, 2.0)]))
    assert not is_simple(family("O_loops", 1, 1.0))
    assert is_regular(family("P", 4)) is None
    assert is_regular(family("C", 7)) == 2.0


def test_iterated_spec_parsing_and_vertices():
    spec = parse_iterated_spec("O2 v K2 u O1 v K3")
    assert [g.order for g, _ in spec.parts] == [2, 2, 1, 3]
    assert [c for _, c in spec.parts] == [
        None,
        Connective.JOIN,
        Connective.UNION,
        Connective.JOIN,
    ]
    # unicode connectives parse the same
    assert parse_iterated_spec("O2 ∨ K2 ∪ O1 ∨ K3").parts == spec.parts
    assert [iterated_vertex(spec, j, 0) for j in (1, 2, 3, 4)] == [0, 2, 4, 5]
    built = iterated_join(spec)
    assert built.order == 8


def test_iterated_spec_alternation_enforced():
    with pytest.raises(ValueError):
        parse_iterated_spec("O2 v K2 v O1 v K3")
    with pytest.raises(ValueError):
        parse_iterated_spec("O2 u K2 u O1 u K3")
    with pytest.raises(ValueError):
        parse_iterated_spec("Z9 v K2")
    with pytest.raises(ValueError):
        IteratedJoinSpec([(family("O", 2), Connective.JOIN)])


def test_iterated_join_builds_the_right_graph():
    # ((O2 v O2) u O2) v O2: the final join reaches every earlier vertex
    spec = parse_iterated_spec("O2 v O2 u O2 v O2")
    built = iterated_join(spec)
    assert built.order == 8
    last = [iterated_vertex(spec, 4, w) for w in range(2)]
    for u in range(6):
        for v in last:
            assert built.weight(u, v) == 1.0
    # the union stage left parts 1+2 and part 3 unlinked
    third = [iterated_vertex(spec, 3, w) for w in range(2)]
    for u in range(4):
        for v in third:
            assert built.weight(u, v) == 0.0
