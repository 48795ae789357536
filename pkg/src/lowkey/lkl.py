"""Low-key leader strength, detection and ranking comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .centrality import ConScoreVector, PageRankVector, con_scores, pagerank_oriented
from .graph import NodeId

CLASSES = ("neutral", "con_up", "pr_up")


@dataclass(frozen=True)
class Normalized:
    values: np.ndarray
    degenerate: bool


def normalize(values: Sequence[float]) -> Normalized:
    """Min-max rescale onto [0, 1]; an all-equal input maps to zeros and is flagged."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot normalize an empty list")
    lo, hi = arr.min(), arr.max()
    if hi == lo:
        return Normalized(np.zeros_like(arr), True)
    out = (arr - lo) / (hi - lo)
    # exact endpoints, free of rounding
    out[arr == lo] = 0.0
    out[arr == hi] = 1.0
    return Normalized(out, False)


@dataclass(frozen=True)
class NodeRecord:
    node: NodeId
    con: float
    pr: float
    con_norm: float
    pr_norm: float
    epsilon: float


@dataclass
class CentralityReport:
    records: list[NodeRecord]
    con_mode: str = "binarized"
    pagerank: dict = field(default_factory=dict)
    con_degenerate: bool = False
    pr_degenerate: bool = False

    def __len__(self) -> int:
        return len(self.records)

    def by_index(self) -> list[NodeRecord]:
        return sorted(self.records, key=lambda r: r.node.index)

    def record(self, label: str) -> NodeRecord:
        for r in self.records:
            if r.node.label == label:
                return r
        raise KeyError(label)


@dataclass(frozen=True)
class LklVerdict:
    leaders: list[NodeId]
    epsilon_max: float
    threshold: float
    exists: bool


def epsilon_scores(
    con: ConScoreVector,
    pr: PageRankVector,
    nodes: Sequence[NodeId] | None = None,
) -> CentralityReport:
    """Per-node epsilon = normalized CON - normalized PageRank, sorted by epsilon descending.

    ``nodes`` supplies labels; when omitted nodes are labelled by index.
    """
    if len(con) != len(pr):
        raise ValueError(f"node sets differ: {len(con)} CON scores vs {len(pr)} PageRank entries")
    if nodes is None:
        nodes = [NodeId(i, str(i)) for i in range(len(con))]
    if len(nodes) != len(con):
        raise ValueError("node list does not match score vectors")
    cn = normalize(con.scores)
    pn = normalize(pr.scores)
    records = []
    for i, node in enumerate(nodes):
        records.append(
            NodeRecord(
                node=node,
                con=con.scores[i].item(),
                pr=float(pr.scores[i]),
                con_norm=float(cn.values[i]),
                pr_norm=float(pn.values[i]),
                epsilon=float(cn.values[i] - pn.values[i]),
            )
        )
    records.sort(key=lambda r: (-r.epsilon, r.node.index))
    meta = {
        "damping": pr.damping,
        "tol": pr.tol,
        "weighted": pr.weighted,
        "orientation": pr.orientation,
        "iterations_used": pr.iterations_used,
        "residual": pr.residual,
    }
    return CentralityReport(records, con.mode, meta, cn.degenerate, pn.degenerate)


def detect_lkl(report: CentralityReport, threshold: float = 0.5) -> LklVerdict:
    if not report.records:
        raise ValueError("empty report")
    if not 0 <= threshold <= 1:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    eps_max = max(r.epsilon for r in report.records)
    leaders = sorted((r.node for r in report.records if r.epsilon == eps_max), key=lambda n: n.index)
    return LklVerdict(leaders, eps_max, threshold, eps_max > threshold)


@dataclass(frozen=True)
class SlopeEntry:
    node: NodeId
    con_rank: int
    pr_rank: int
    movement: int
    cls: str


@dataclass(frozen=True)
class SlopeGraphSpec:
    con_ranking: list[NodeId]
    pr_ranking: list[NodeId]
    entries: list[SlopeEntry]
    movement_threshold: int


def _ranking(report: CentralityReport, key: str) -> list[NodeId]:
    recs = sorted(report.records, key=lambda r: (-getattr(r, key), r.node.index))
    return [r.node for r in recs]


def classify(con_rank: int, pr_rank: int, threshold: int) -> str:
    # rank 1 is the top; a smaller CON rank means CON places the node higher
    if pr_rank - con_rank >= threshold:
        return "con_up"
    if con_rank - pr_rank >= threshold:
        return "pr_up"
    return "neutral"


def slope_graph(report: CentralityReport, movement_threshold: int = 5) -> SlopeGraphSpec:
    """Pair the CON ranking with the PageRank ranking and classify rank movement."""
    if movement_threshold < 1:
        raise ValueError("movement threshold must be >= 1")
    left = _ranking(report, "con")
    right = _ranking(report, "pr")
    con_rank = {node.index: k + 1 for k, node in enumerate(left)}
    pr_rank = {node.index: k + 1 for k, node in enumerate(right)}
    entries = []
    for node in left:
        c, p = con_rank[node.index], pr_rank[node.index]
        entries.append(SlopeEntry(node, c, p, p - c, classify(c, p, movement_threshold)))
    return SlopeGraphSpec(left, right, entries, movement_threshold)


@dataclass(frozen=True)
class BatchSummary:
    count_with_lkl: int
    total: int
    fraction: float
    verdicts: list[LklVerdict]


def batch_lkl(reports: Sequence[CentralityReport], threshold: float = 0.5) -> BatchSummary:
    if not reports:
        raise ValueError("no reports to summarize")
    verdicts = [detect_lkl(r, threshold) for r in reports]
    count = sum(v.exists for v in verdicts)
    return BatchSummary(count, len(verdicts), count / len(verdicts), verdicts)


def analyze(
    g,
    con_mode: str = "binarized",
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 200,
    pr_weighted: bool = False,
    pr_orientation: str = "reversed",
) -> CentralityReport:
    """CON scores and PageRank of ``g`` (reversed-edge by default) combined into a report."""
    con = con_scores(g, con_mode)
    pr = pagerank_oriented(g, pr_orientation, damping=damping, tol=tol, max_iter=max_iter, weighted=pr_weighted)
    return epsilon_scores(con, pr, g.nodes())
