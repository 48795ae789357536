"""Directed multigraph with collapsed, strictly positive edge weights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Base class for graph construction and lookup errors."""


class SelfLoopError(GraphError):
    pass


class NonPositiveWeightError(GraphError):
    pass


class UnknownNodeError(GraphError, KeyError):
    pass


@dataclass(frozen=True, order=True)
class NodeId:
    index: int
    label: str


WEIGHT_KINDS = ("count", "volume")


class MultiDigraph:
    """Directed graph where parallel edges are stored as one accumulated weight.

    Nodes are dense indices ``0..n-1`` with unique string labels, assigned in
    first-seen order. Self-loops and non-positive weights are rejected.
    """

    def __init__(self, labels: Iterable[str] = (), weight_kind: str = "count"):
        if weight_kind not in WEIGHT_KINDS:
            raise GraphError(f"unknown weight kind {weight_kind!r}")
        self.weight_kind = weight_kind
        self._labels: list[str] = []
        self._index: dict[str, int] = {}
        self._out: list[dict[int, float]] = []
        self._in: list[dict[int, float]] = []
        for label in labels:
            self.add_node(label)

    # -- construction -----------------------------------------------------

    def add_node(self, label: str) -> NodeId:
        label = str(label)
        if label in self._index:
            return NodeId(self._index[label], label)
        idx = len(self._labels)
        self._labels.append(label)
        self._index[label] = idx
        self._out.append({})
        self._in.append({})
        return NodeId(idx, label)

    def add_edge(self, u, v, weight: float = 1) -> None:
        """Add ``weight`` to edge (u, v); nodes may be given as NodeId, index or label.

        Labels that are not yet present are created. Integer indices must
        already exist.
        """
        if not weight > 0:
            raise NonPositiveWeightError(f"edge weight must be > 0, got {weight!r}")
        if isinstance(u, str) and u == v:
            raise SelfLoopError(f"self-loop on {u!r} rejected")
        iu = self._resolve(u, create=True)
        iv = self._resolve(v, create=True)
        if iu == iv:
            raise SelfLoopError(f"self-loop on {self._labels[iu]!r} rejected")
        self._out[iu][iv] = self._out[iu].get(iv, 0) + weight
        self._in[iv][iu] = self._in[iv].get(iu, 0) + weight

    def _resolve(self, node, create: bool = False) -> int:
        if isinstance(node, NodeId):
            if 0 <= node.index < len(self._labels) and self._labels[node.index] == node.label:
                return node.index
            raise UnknownNodeError(node)
        if isinstance(node, (int,)) and not isinstance(node, bool):
            if 0 <= node < len(self._labels):
                return node
            raise UnknownNodeError(node)
        if isinstance(node, str):
            if node in self._index:
                return self._index[node]
            if create:
                return self.add_node(node).index
        raise UnknownNodeError(node)

    # -- queries ----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> list[str]:
        return list(self._labels)

    def node(self, key) -> NodeId:
        idx = self._resolve(key)
        return NodeId(idx, self._labels[idx])

    def nodes(self) -> list[NodeId]:
        return [NodeId(i, lab) for i, lab in enumerate(self._labels)]

    def index_of(self, label: str) -> int:
        return self._resolve(str(label))

    def label_of(self, index: int) -> str:
        return self._labels[index]

    def out_neighbors(self, u) -> dict[int, float]:
        """Distinct targets of u mapped to their accumulated weight."""
        return dict(self._out[self._resolve(u)])

    def in_neighbors(self, v) -> dict[int, float]:
        return dict(self._in[self._resolve(v)])

    def weight(self, u, v) -> float:
        return self._out[self._resolve(u)].get(self._resolve(v), 0)

    def has_edge(self, u, v) -> bool:
        return self._resolve(v) in self._out[self._resolve(u)]

    def out_degree(self, u, weighted: bool = False) -> float:
        nbrs = self._out[self._resolve(u)]
        return sum(nbrs.values()) if weighted else len(nbrs)

    def in_degree(self, v, weighted: bool = False) -> float:
        nbrs = self._in[self._resolve(v)]
        return sum(nbrs.values()) if weighted else len(nbrs)

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Edges as (source, target, weight), sorted by (source, target)."""
        for u, nbrs in enumerate(self._out):
            for v in sorted(nbrs):
                yield u, v, nbrs[v]

    def labeled_edges(self) -> dict[tuple[str, str], float]:
        """Edges keyed by (source label, target label); independent of index order."""
        return {(self._labels[u], self._labels[v]): w for u, v, w in self.edges()}

    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self._out)

    def total_weight(self) -> float:
        return sum(sum(nbrs.values()) for nbrs in self._out)

    def reverse(self) -> "MultiDigraph":
        """Same nodes and labels with every edge (u, v, w) flipped to (v, u, w)."""
        rev = MultiDigraph(self._labels, weight_kind=self.weight_kind)
        rev._out = [dict(d) for d in self._in]
        rev._in = [dict(d) for d in self._out]
        return rev

    def copy(self) -> "MultiDigraph":
        return self.reverse().reverse()

    def scaled(self, factor: float) -> "MultiDigraph":
        if not factor > 0:
            raise NonPositiveWeightError(f"scale factor must be > 0, got {factor!r}")
        g = MultiDigraph(self._labels, weight_kind=self.weight_kind)
        for u, v, w in self.edges():
            g.add_edge(u, v, w * factor)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiDigraph):
            return NotImplemented
        return self._labels == other._labels and self._out == other._out

    def __repr__(self) -> str:
        return f"MultiDigraph(n={self.n}, edges={self.num_edges()}, weight_kind={self.weight_kind!r})"


def from_edges(edges: Iterable[tuple], labels: Iterable[str] = (), weight_kind: str = "count") -> MultiDigraph:
    """Build a graph from (u, v) or (u, v, w) tuples of labels."""
    g = MultiDigraph(labels, weight_kind=weight_kind)
    for e in edges:
        if len(e) == 2:
            g.add_edge(str(e[0]), str(e[1]), 1)
        else:
            g.add_edge(str(e[0]), str(e[1]), e[2])
    return g
