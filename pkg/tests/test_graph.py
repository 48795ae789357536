import pytest
from hypothesis import given

from conftest import digraphs, graph_from
from lowkey.graph import MultiDigraph, NonPositiveWeightError, SelfLoopError, UnknownNodeError, from_edges


def test_add_edge_accumulates():
    g = MultiDigraph(["a", "b"])
    g.add_edge("a", "b", 1)
    g.add_edge("a", "b", 2)
    assert g.weight("a", "b") == 3
    assert g.num_edges() == 1


def test_self_loop_rejected():
    g = MultiDigraph(["a"])
    with pytest.raises(SelfLoopError):
        g.add_edge("a", "a", 1)


@pytest.mark.parametrize("w", [0, -1, -0.5, float("nan")])
def test_non_positive_weight_rejected(w):
    g = MultiDigraph(["a", "b"])
    with pytest.raises(NonPositiveWeightError):
        g.add_edge("a", "b", w)
    assert g.num_edges() == 0


def test_single_edge_degrees():
    g = MultiDigraph()
    g.add_edge("a", "b", 1)
    assert g.out_degree("a") == 1
    assert g.in_degree("b") == 1
    assert g.out_degree("b") == 0


def test_reverse_single_edge():
    g = from_edges([("a", "b", 1)])
    r = g.reverse()
    assert list(r.edges()) == [(1, 0, 1)]
    assert r.labels == ["a", "b"]


def test_reverse_empty():
    g = MultiDigraph()
    assert g.reverse() == g
    assert MultiDigraph(["x", "y"]).reverse() == MultiDigraph(["x", "y"])


def test_out_neighbors():
    g = from_edges([("a", "b", 1), ("a", "c", 2)])
    assert g.out_neighbors("a") == {g.index_of("b"): 1, g.index_of("c"): 2}
    assert g.out_neighbors("b") == {}
    assert g.reverse().out_neighbors("b") == g.in_neighbors("b")


def test_unknown_node():
    g = MultiDigraph(["a"])
    with pytest.raises(UnknownNodeError):
        g.out_neighbors("zz")
    with pytest.raises(UnknownNodeError):
        g.out_neighbors(5)


def test_labels_first_seen_order():
    g = from_edges([("q", "p"), ("r", "q")])
    assert g.labels == ["q", "p", "r"]


@given(digraphs())
def test_degree_sums_and_views(case):
    n, edges = case
    g = graph_from(n, edges)
    assert sum(g.out_degree(u) for u in range(n)) == sum(g.in_degree(u) for u in range(n)) == len(edges)
    for u, v, w in g.edges():
        assert g.in_neighbors(v)[u] == w


@given(digraphs())
def test_reverse_involution_and_weight(case):
    n, edges = case
    g = graph_from(n, edges)
    r = g.reverse()
    assert r.reverse() == g
    assert r.n == g.n
    assert r.total_weight() == g.total_weight()
    for u in range(n):
        assert r.out_neighbors(u) == g.in_neighbors(u)
