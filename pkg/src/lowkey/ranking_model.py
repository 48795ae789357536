"""Directed ranking model: rank-based edge probabilities plus one copy node.

Randomness comes from numpy's ``PCG64`` bit generator seeded with the
model seed, consumed in a fixed order: the label permutation, one uniform
draw per ordered node pair (row-major, an ``n x n`` block including the
unused diagonal), then the copy node. Same seed, same graph, on any platform
numpy supports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import MultiDigraph, NodeId
from .lkl import analyze, detect_lkl


@dataclass(frozen=True)
class RankingModelParams:
    n: int
    alpha: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")


@dataclass
class GeneratedGraph:
    graph: MultiDigraph
    params: RankingModelParams
    rank_of: np.ndarray  # rank_of[index] == index + 1 after reordering
    labeling: np.ndarray  # label drawn by each node before reordering
    copy_node: NodeId
    template_node: NodeId
    pre_copy: np.ndarray  # boolean adjacency before the copy step

    def sidecar(self) -> dict:
        return {
            "n": self.params.n,
            "alpha": self.params.alpha,
            "seed": self.params.seed,
            "rng": "numpy.random.PCG64",
            "copy_node": {"index": self.copy_node.index, "label": self.copy_node.label},
            "template_node": {"index": self.template_node.index, "label": self.template_node.label},
        }


def edge_probabilities(n: int, alpha: float) -> np.ndarray:
    """P[(i, j) is an edge] for 1-based target ranks j = 1..n."""
    return np.arange(1, n + 1, dtype=np.float64) ** (-alpha)


def generate(params: RankingModelParams) -> GeneratedGraph:
    n, alpha = params.n, params.alpha
    rng = np.random.Generator(np.random.PCG64(params.seed))

    # label l in 1..n; label 1 is the top rank, so rank == label
    labeling = rng.permutation(n) + 1
    # after reordering node index i holds rank i + 1

    probs = edge_probabilities(n, alpha)
    adj = rng.random((n, n)) < probs[np.newaxis, :]
    np.fill_diagonal(adj, False)
    pre_copy = adj.copy()

    m = int(rng.integers(n))
    r = int(np.argmax(adj.sum(axis=1)))
    targets = adj[r].copy()
    targets[m] = False
    adj[m] |= targets

    g = MultiDigraph((str(i + 1) for i in range(n)), weight_kind="count")
    for u, v in zip(*np.nonzero(adj)):
        g.add_edge(int(u), int(v), 1)

    return GeneratedGraph(
        graph=g,
        params=params,
        rank_of=np.arange(1, n + 1),
        labeling=labeling,
        copy_node=g.node(m),
        template_node=g.node(r),
        pre_copy=pre_copy,
    )


def expected_in_degree(n: int, rank: int, alpha: float = 0.5) -> float:
    """Mean in-degree of the rank-``rank`` node before the copy step: (n - 1) * rank^-alpha."""
    return (n - 1) * rank ** (-alpha)


@dataclass(frozen=True)
class DegreeSummary:
    histogram: dict[int, int]
    max_degree: int
    mean: float
    std: float
    tail_fraction: float  # share of nodes above mean + 2 std


def in_degree_distribution(g: MultiDigraph) -> DegreeSummary:
    degs = np.array([g.in_degree(v) for v in range(g.n)], dtype=np.int64)
    if degs.size == 0:
        return DegreeSummary({}, 0, 0.0, 0.0, 0.0)
    values, counts = np.unique(degs, return_counts=True)
    hist = {int(d): int(c) for d, c in zip(values, counts)}
    mean, std = float(degs.mean()), float(degs.std())
    tail = float(np.mean(degs > mean + 2 * std))
    return DegreeSummary(hist, int(degs.max()), mean, std, tail)


@dataclass(frozen=True)
class CopyNodeAnalysis:
    copy_con: float
    template_con: float
    copy_is_lkl: bool
    epsilon_of_copy: float
    leaders: list[NodeId]
    epsilon_max: float


def copy_node_analysis(
    gg: GeneratedGraph, threshold: float = 0.5, pr_orientation: str = "original"
) -> CopyNodeAnalysis:
    """Binarized CON against default-parameter PageRank on a generated graph.

    PageRank runs on the graph as generated unless ``pr_orientation`` is
    ``"reversed"``. The copy node only inherits out-edges, so reversing the
    edges hands it the top PageRank along with the top CON and its epsilon
    collapses to zero.
    """
    report = analyze(gg.graph, pr_orientation=pr_orientation)
    verdict = detect_lkl(report, threshold)
    by_idx = report.by_index()
    copy_rec = by_idx[gg.copy_node.index]
    return CopyNodeAnalysis(
        copy_con=copy_rec.con,
        template_con=by_idx[gg.template_node.index].con,
        copy_is_lkl=verdict.exists and gg.copy_node in verdict.leaders,
        epsilon_of_copy=copy_rec.epsilon,
        leaders=verdict.leaders,
        epsilon_max=verdict.epsilon_max,
    )
