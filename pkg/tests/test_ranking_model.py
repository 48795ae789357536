import numpy as np
import pytest
from scipy import stats

from lowkey.graph import from_edges
from lowkey.ranking_model import (
    RankingModelParams,
    copy_node_analysis,
    edge_probabilities,
    expected_in_degree,
    generate,
    in_degree_distribution,
)


def test_params_validation():
    with pytest.raises(ValueError):
        RankingModelParams(1)
    with pytest.raises(ValueError):
        RankingModelParams(10, alpha=1.0)
    with pytest.raises(ValueError):
        RankingModelParams(10, alpha=0.0)
    with pytest.raises(ValueError):
        RankingModelParams(10, seed=-1)


def test_n2_probabilities():
    p = edge_probabilities(2, 0.5)
    assert p[0] == 1.0
    assert p[1] == pytest.approx(2 ** -0.5)
    # edge into rank 1 is certain
    for seed in range(50):
        gg = generate(RankingModelParams(2, 0.5, seed))
        assert gg.pre_copy[1, 0]


def test_same_seed_same_graph():
    a = generate(RankingModelParams(60, 0.5, 7))
    b = generate(RankingModelParams(60, 0.5, 7))
    assert a.graph == b.graph
    assert a.copy_node == b.copy_node and a.template_node == b.template_node
    assert (a.labeling == b.labeling).all()
    assert a.graph != generate(RankingModelParams(60, 0.5, 8)).graph


def test_seed_pinned_fixture():
    # frozen output of PCG64 seed 2024; guards the RNG consumption order
    gg = generate(RankingModelParams(6, 0.5, 2024))
    assert sorted((gg.graph.label_of(u), gg.graph.label_of(v)) for u, v, _ in gg.graph.edges()) == FROZEN_6_2024
    assert (gg.copy_node.label, gg.template_node.label) == FROZEN_6_2024_NODES


FROZEN_6_2024 = [
    ("1", "3"), ("1", "4"), ("1", "5"), ("1", "6"), ("2", "1"), ("2", "3"), ("2", "4"), ("2", "5"),
    ("2", "6"), ("3", "1"), ("3", "5"), ("3", "6"), ("4", "1"), ("4", "2"), ("4", "5"), ("5", "1"),
    ("5", "2"), ("5", "3"), ("5", "4"), ("6", "1"), ("6", "3"), ("6", "4"),
]
FROZEN_6_2024_NODES = ("2", "1")


@pytest.mark.parametrize("seed", range(30))
def test_copy_superset_and_in_degree(seed):
    gg = generate(RankingModelParams(40, 0.5, seed))
    g = gg.graph
    m, r = gg.copy_node.index, gg.template_node.index
    assert set(g.out_neighbors(r)) - {m} <= set(g.out_neighbors(m))
    assert g.in_degree(m) == int(gg.pre_copy[:, m].sum())
    post = np.array([[g.has_edge(u, v) for v in range(g.n)] for u in range(g.n)])
    changed = np.argwhere(post != gg.pre_copy)
    assert all(u == m for u, _ in changed)
    assert r == int(np.argmax(gg.pre_copy.sum(axis=1)))
    assert not any(g.has_edge(v, v) for v in range(g.n))
    assert sorted(gg.rank_of.tolist()) == list(range(1, g.n + 1))


def test_labeling_uniform():
    n, trials = 5, 3000
    table = np.zeros((n, n), dtype=int)
    for seed in range(trials):
        lab = generate(RankingModelParams(n, 0.5, seed)).labeling
        table[np.arange(n), lab - 1] += 1
    for row in table:
        assert stats.chisquare(row).pvalue > 1e-4


def test_edge_frequencies_bernoulli():
    n, trials = 4, 10_000
    counts = np.zeros((n, n))
    for seed in range(trials):
        counts += generate(RankingModelParams(n, 0.5, seed)).pre_copy
    p = edge_probabilities(n, 0.5)
    for i in range(n):
        for j in range(n):
            if i == j:
                assert counts[i, j] == 0
                continue
            se = np.sqrt(p[j] * (1 - p[j]) / trials)
            assert abs(counts[i, j] / trials - p[j]) <= 3 * se + 1e-12


def test_expected_in_degree_formula():
    assert expected_in_degree(200, 1) == 199
    assert expected_in_degree(200, 4) == pytest.approx(99.5)


def test_in_degree_distribution_examples():
    cyc = from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert in_degree_distribution(cyc).histogram == {1: 4}
    star = from_edges([("a", "c"), ("b", "c"), ("d", "c")])
    s = in_degree_distribution(star)
    assert s.histogram == {0: 3, 3: 1}
    assert s.max_degree == 3


def test_generated_heavy_tail():
    gg = generate(RankingModelParams(200, 0.5, 3))
    s = in_degree_distribution(gg.graph)
    degs = np.repeat(list(s.histogram), list(s.histogram.values()))
    assert sum(s.histogram.values()) == 200
    assert s.max_degree > 3 * np.median(degs)
    assert s.tail_fraction > 0


@pytest.mark.parametrize("seed", range(10))
def test_copy_con_dominates_template(seed):
    res = copy_node_analysis(generate(RankingModelParams(100, 0.5, seed)))
    assert res.copy_con >= res.template_con
