"""Low-key leader detection in adversarial directed networks."""

__version__ = "0.1.0"

from .centrality import (
    ConScoreVector,
    ConvergenceError,
    PageRankVector,
    con_pair,
    con_scores,
    pagerank,
    pagerank_oriented,
    pagerank_reversed,
)
from .graph import GraphError, MultiDigraph, NodeId, NonPositiveWeightError, SelfLoopError, from_edges
from .ingest import (
    DatasetDescriptor,
    ParseError,
    load,
    parse_dominance_matrix,
    parse_signed_edge_list,
    parse_weighted_edge_list,
    serialize,
)
from .lkl import (
    CentralityReport,
    LklVerdict,
    SlopeGraphSpec,
    analyze,
    batch_lkl,
    detect_lkl,
    epsilon_scores,
    normalize,
    slope_graph,
)
from .ranking_model import (
    GeneratedGraph,
    RankingModelParams,
    copy_node_analysis,
    generate,
    in_degree_distribution,
)
from .render import render_histogram_svg, render_slope_svg
