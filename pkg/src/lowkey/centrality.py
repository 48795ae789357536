"""CON scores and PageRank on the reversed-edge network."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp

from .graph import GraphError, MultiDigraph

CON_MODES = ("binarized", "weighted")
PR_ORIENTATIONS = ("reversed", "original")


class ConvergenceError(RuntimeError):
    def __init__(self, residual: float, iterations: int):
        super().__init__(f"PageRank did not converge after {iterations} iterations (L1 residual {residual:.3e})")
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class ConScoreVector:
    scores: np.ndarray
    mode: str

    def __len__(self) -> int:
        return len(self.scores)


@dataclass(frozen=True)
class PageRankVector:
    scores: np.ndarray
    damping: float
    iterations_used: int
    residual: float
    weighted: bool = False
    tol: float = 1e-10
    orientation: str = "original"

    def __len__(self) -> int:
        return len(self.scores)


def _check_mode(mode: str) -> None:
    if mode not in CON_MODES:
        raise ValueError(f"CON mode must be one of {CON_MODES}, got {mode!r}")


def con_pair(g: MultiDigraph, u, v, mode: str = "binarized") -> float:
    """Common out-neighbour score of two distinct nodes.

    Weighted mode sums ``min(w(u, x), w(v, x))`` over shared targets ``x``.
    """
    _check_mode(mode)
    iu, iv = g.node(u).index, g.node(v).index
    if iu == iv:
        raise GraphError("CON is only defined for distinct nodes")
    nu, nv = g.out_neighbors(iu), g.out_neighbors(iv)
    common = nu.keys() & nv.keys()
    if mode == "binarized":
        return len(common)
    return float(sum(min(nu[x], nv[x]) for x in sorted(common)))


def con_scores(g: MultiDigraph, mode: str = "binarized") -> ConScoreVector:
    """CON(u) = sum over v != u of CON(u, v), for every node.

    Works target by target: in binarized mode each target x with in-degree k
    adds k - 1 to each of its in-neighbours. In weighted mode an in-neighbour
    with weight a gets sum over the other in-neighbours of min(a, b), which is
    computed from the sorted in-weights of x with prefix sums.
    """
    _check_mode(mode)
    n = g.n
    if mode == "binarized":
        out = np.zeros(n, dtype=np.int64)
        for x in range(n):
            preds = g.in_neighbors(x)
            k = len(preds)
            if k > 1:
                for u in preds:
                    out[u] += k - 1
        return ConScoreVector(out, mode)

    out = np.zeros(n, dtype=np.float64)
    for x in range(n):
        preds = g.in_neighbors(x)
        k = len(preds)
        if k < 2:
            continue
        # stable order: weight, then node index
        items = sorted(preds.items(), key=lambda kv: (kv[1], kv[0]))
        ws = np.array([w for _, w in items], dtype=np.float64)
        below = np.concatenate(([0.0], np.cumsum(ws)[:-1]))
        # element at sorted position p: mins with smaller ones sum to below[p],
        # with the k-1-p larger (or equal, later) ones each contribute ws[p]
        contrib = below + ws * (k - 1 - np.arange(k))
        for (u, _), c in zip(items, contrib):
            out[u] += c
    return ConScoreVector(out, mode)


def transition_matrix(g: MultiDigraph, weighted: bool = False) -> tuple[sp.csr_matrix, np.ndarray]:
    """Row-stochastic transition matrix of a walk along the edges of ``g``.

    Returns the matrix and a boolean mask of dangling rows (no out-edges).
    """
    n = g.n
    rows, cols, vals = [], [], []
    for u, v, w in g.edges():
        rows.append(u)
        cols.append(v)
        vals.append(float(w) if weighted else 1.0)
    m = sp.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=np.float64)
    out_sum = np.asarray(m.sum(axis=1)).ravel()
    dangling = out_sum == 0
    inv = np.zeros(n)
    inv[~dangling] = 1.0 / out_sum[~dangling]
    return sp.diags(inv) @ m, dangling


def pagerank(
    g: MultiDigraph,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 200,
    weighted: bool = False,
) -> PageRankVector:
    """Power-iteration PageRank with uniform teleportation and dangling redistribution.

    Stops once the L1 change between iterates drops below ``tol``.
    """
    if not 0 < damping < 1:
        raise ValueError(f"damping must lie in (0, 1), got {damping}")
    n = g.n
    if n == 0:
        raise ValueError("PageRank of an empty graph is undefined")
    p, dangling = transition_matrix(g, weighted=weighted)
    pt = p.T.tocsr()
    x = np.full(n, 1.0 / n)
    residual = float("inf")
    for it in range(1, max_iter + 1):
        dmass = x[dangling].sum()
        new = damping * (pt @ x + dmass / n) + (1.0 - damping) / n
        new /= new.sum()
        residual = float(np.abs(new - x).sum())
        x = new
        if residual < tol:
            return PageRankVector(x, damping, it, residual, weighted, tol)
    raise ConvergenceError(residual, max_iter)


def pagerank_reversed(
    g: MultiDigraph,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 200,
    weighted: bool = False,
) -> PageRankVector:
    """PageRank of every node on the graph with all edges flipped."""
    pr = pagerank(g.reverse(), damping=damping, tol=tol, max_iter=max_iter, weighted=weighted)
    return replace(pr, orientation="reversed")


def pagerank_oriented(g: MultiDigraph, orientation: str = "reversed", **kwargs) -> PageRankVector:
    if orientation == "reversed":
        return pagerank_reversed(g, **kwargs)
    if orientation == "original":
        return pagerank(g, **kwargs)
    raise ValueError(f"PageRank orientation must be one of {PR_ORIENTATIONS}, got {orientation!r}")
