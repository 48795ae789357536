import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import digraphs, graph_from
from lowkey.centrality import ConScoreVector, PageRankVector
from lowkey.graph import NodeId
from lowkey.lkl import (
    CentralityReport,
    NodeRecord,
    analyze,
    batch_lkl,
    classify,
    detect_lkl,
    epsilon_scores,
    normalize,
    slope_graph,
)


def _vectors(con, pr):
    return ConScoreVector(np.asarray(con), "binarized"), PageRankVector(np.asarray(pr, dtype=float), 0.85, 1, 0.0)


def _report_from_eps(eps):
    recs = [NodeRecord(NodeId(i, chr(97 + i)), 0, 0.0, 0.0, 0.0, e) for i, e in enumerate(eps)]
    recs.sort(key=lambda r: (-r.epsilon, r.node.index))
    return CentralityReport(recs)


def test_normalize_examples():
    assert normalize([5, 10, 15]).values.tolist() == [0, 0.5, 1]
    res = normalize([7, 7, 7])
    assert res.values.tolist() == [0, 0, 0] and res.degenerate
    assert normalize([0, 1]).values.tolist() == [0, 1]
    with pytest.raises(ValueError):
        normalize([])


def test_epsilon_extremes():
    con, pr = _vectors([10, 0, 5], [0.1, 0.6, 0.3])
    rep = epsilon_scores(con, pr)
    assert rep.records[0].node.index == 0 and rep.records[0].epsilon == 1.0
    assert rep.records[-1].node.index == 1 and rep.records[-1].epsilon == -1.0


def test_epsilon_double_degenerate():
    con, pr = _vectors([2, 2], [0.5, 0.5])
    rep = epsilon_scores(con, pr)
    assert [r.epsilon for r in rep.records] == [0, 0]
    assert rep.con_degenerate and rep.pr_degenerate


def test_epsilon_mismatched():
    con, pr = _vectors([1, 2, 3], [0.5, 0.5])
    with pytest.raises(ValueError):
        epsilon_scores(con, pr)


def test_detect_all_zero():
    v = detect_lkl(_report_from_eps([0, 0, 0]))
    assert not v.exists and v.epsilon_max == 0 and [n.index for n in v.leaders] == [0, 1, 2]


def test_detect_tie():
    v = detect_lkl(_report_from_eps([0.6, 0.6, 0.1]))
    assert v.exists and [n.label for n in v.leaders] == ["a", "b"]


def test_detect_strict():
    assert not detect_lkl(_report_from_eps([0.5, 0.2]), 0.5).exists
    assert detect_lkl(_report_from_eps([0.5, 0.2]), 0.49).exists


def test_classify_examples():
    assert classify(1, 8, 5) == "con_up"
    assert classify(3, 3, 5) == "neutral"
    assert classify(12, 1, 10) == "pr_up"
    assert classify(1, 5, 5) == "neutral"
    assert classify(1, 6, 5) == "con_up"


def test_slope_graph_movement():
    con, pr = _vectors([9, 8, 7, 1], [0.1, 0.2, 0.3, 0.4])
    spec = slope_graph(epsilon_scores(con, pr), movement_threshold=2)
    by = {e.node.index: e for e in spec.entries}
    assert (by[0].con_rank, by[0].pr_rank, by[0].movement, by[0].cls) == (1, 4, 3, "con_up")
    assert (by[3].con_rank, by[3].pr_rank, by[3].cls) == (4, 1, "pr_up")
    assert by[1].cls == "neutral"
    with pytest.raises(ValueError):
        slope_graph(epsilon_scores(con, pr), 0)


@given(digraphs(min_n=1))
def test_report_invariants(case):
    n, edges = case
    g = graph_from(n, edges)
    rep = analyze(g)
    eps = [r.epsilon for r in rep.records]
    assert all(-1 <= e <= 1 for e in eps)
    assert eps == sorted(eps, reverse=True)
    for r in rep.records:
        assert r.epsilon == r.con_norm - r.pr_norm
    for flag, key in ((rep.con_degenerate, "con_norm"), (rep.pr_degenerate, "pr_norm")):
        vals = [getattr(r, key) for r in rep.records]
        if not flag:
            assert min(vals) == 0 and max(vals) == 1
    spec = slope_graph(rep, 1)
    assert sorted(x.index for x in spec.con_ranking) == sorted(x.index for x in spec.pr_ranking) == list(range(n))
    assert sum(e.movement for e in spec.entries) == 0


@given(digraphs(min_n=2), st.floats(0.1, 50), st.floats(-100, 100))
def test_argmax_invariant_under_affine_con(case, a, b):
    n, edges = case
    rep = analyze(graph_from(n, edges))
    by = rep.by_index()
    con = np.array([r.con for r in by], dtype=float)
    pr = np.array([r.pr for r in by])
    base = detect_lkl(epsilon_scores(*_vectors(con, pr)))
    moved = detect_lkl(epsilon_scores(*_vectors(a * con + b, pr)))
    assert [x.index for x in base.leaders] == [x.index for x in moved.leaders]


@given(st.lists(st.floats(-1, 1), min_size=1, max_size=30), st.floats(0, 1))
def test_detect_rule(eps, threshold):
    v = detect_lkl(_report_from_eps(eps), threshold)
    m = max(eps)
    assert v.epsilon_max == m
    assert [n.index for n in v.leaders] == [i for i, e in enumerate(eps) if e == m]
    assert v.exists == (m > threshold)


def test_batch_single_and_monotone():
    s = batch_lkl([_report_from_eps([0.9, 0.1])], 0.5)
    assert s.fraction == 1.0 and s.count_with_lkl == 1
    reports = [_report_from_eps([e, 0.0]) for e in (0.2, 0.45, 0.55, 0.9)]
    fr = [batch_lkl(reports, t).fraction for t in (0.0, 0.4, 0.5, 0.6, 1.0)]
    assert fr == sorted(fr, reverse=True)
    assert batch_lkl(reports, 0.4).count_with_lkl == 3
    with pytest.raises(ValueError):
        batch_lkl([], 0.5)
