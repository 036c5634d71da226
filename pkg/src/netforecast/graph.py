"""Graph types, union graph, popularity set and the zero-inflated incidence layout.

Nodes are 1-based throughout. A node's identity is its index: node ``i`` in
one snapshot is node ``i`` in every later snapshot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

Edge = tuple[int, int]


def normalize_edge(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError(f"self-loop on node {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Undirected, unweighted, loop-free graph on nodes ``1..n_nodes``."""

    n_nodes: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.n_nodes < 0:
            raise ValueError("n_nodes must be non-negative")
        for i, j in self.edges:
            if not (1 <= i < j <= self.n_nodes):
                raise ValueError(f"invalid edge ({i}, {j}) for n_nodes={self.n_nodes}")

    @classmethod
    def from_edges(cls, n_nodes: int, pairs: Iterable[Sequence[int]]) -> Graph:
        """Build from unordered pairs; duplicates collapse, order is normalized."""
        return cls(n_nodes, frozenset(normalize_edge(int(a), int(b)) for a, b in pairs))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        """Degree vector; entry ``i - 1`` holds the degree of node ``i``."""
        deg = np.zeros(self.n_nodes, dtype=np.int64)
        for i, j in self.edges:
            deg[i - 1] += 1
            deg[j - 1] += 1
        return deg

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def density(g: Graph) -> float:
    n = g.n_nodes
    if n < 2:
        raise ValueError("density needs at least two nodes")
    return 2.0 * g.n_edges / (n * (n - 1))


@dataclass(frozen=True)
class GraphSeries:
    """Time-ordered snapshots of a growing graph."""

    graphs: tuple[Graph, ...]

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        if not self.graphs:
            raise ValueError("a GraphSeries needs at least one graph")
        counts = [g.n_nodes for g in self.graphs]
        for t in range(1, len(counts)):
            if counts[t] < counts[t - 1]:
                raise ValueError(
                    f"node count shrinks between t={t} and t={t + 1} "
                    f"({counts[t - 1]} -> {counts[t]})"
                )

    def __len__(self) -> int:
        return len(self.graphs)

    def __getitem__(self, t: int) -> Graph:
        """1-based time access: ``series[1]`` is the first snapshot."""
        if not 1 <= t <= len(self.graphs):
            raise IndexError(f"time {t} outside 1..{len(self.graphs)}")
        return self.graphs[t - 1]

    @property
    def T(self) -> int:
        return len(self.graphs)

    @property
    def last(self) -> Graph:
        return self.graphs[-1]

    def truncate(self, T: int) -> GraphSeries:
        if not 1 <= T <= len(self.graphs):
            raise ValueError(f"cannot truncate a length-{len(self)} series to {T}")
        return GraphSeries(self.graphs[:T])

    def node_counts(self) -> np.ndarray:
        return np.array([g.n_nodes for g in self.graphs], dtype=np.int64)

    def edge_counts(self) -> np.ndarray:
        return np.array([g.n_edges for g in self.graphs], dtype=np.int64)

    def first_seen(self) -> np.ndarray:
        """t_0 for every node of the last graph (1-based times, 1-based nodes at ``i - 1``)."""
        counts = self.node_counts()
        n = int(counts[-1])
        # first t with n_t >= i
        return np.searchsorted(counts, np.arange(1, n + 1), side="left") + 1

    def degree_matrix(self) -> np.ndarray:
        """``T x n_T`` degree table; nodes absent at time t have degree 0."""
        n = self.last.n_nodes
        out = np.zeros((len(self.graphs), n), dtype=np.int64)
        for t, g in enumerate(self.graphs):
            out[t, : g.n_nodes] = g.degrees()
        return out


def union_graphs(series: GraphSeries) -> Graph:
    edges: set[Edge] = set()
    for g in series.graphs:
        edges |= g.edges
    return Graph(series.last.n_nodes, frozenset(edges))


def top_k_nodes(union: Graph, K: int) -> tuple[int, ...]:
    """The ``min(K, n)`` highest-degree nodes, ties broken by ascending index."""
    if K < 1:
        raise ValueError("K must be at least 1")
    deg = union.degrees()
    order = sorted(range(1, union.n_nodes + 1), key=lambda i: (-deg[i - 1], i))
    return tuple(order[:K])


def default_kappa_size(union: Graph) -> int:
    """Every node that has ever carried an edge is a candidate attachment target."""
    return max(1, int(np.count_nonzero(union.degrees())))


@dataclass(frozen=True)
class CandidateGraph:
    """Union graph plus new nodes wired to every member of the popularity set."""

    base: Graph
    n_total: int
    kappa: tuple[int, ...]
    union_degrees: np.ndarray = field(compare=False)
    new_edges: frozenset[Edge] = frozenset()

    @property
    def n_existing(self) -> int:
        return self.base.n_nodes

    @property
    def n_new(self) -> int:
        return self.n_total - self.base.n_nodes

    @property
    def edges(self) -> frozenset[Edge]:
        return self.base.edges | self.new_edges

    def as_graph(self) -> Graph:
        return Graph(self.n_total, self.edges)


def build_candidate(series: GraphSeries, n_new: int, K: int) -> CandidateGraph:
    if n_new < 0:
        raise ValueError("n_new must be non-negative")
    base = union_graphs(series)
    kappa = top_k_nodes(base, K)
    n_T = base.n_nodes
    new_edges = frozenset(
        (k, j) for j in range(n_T + 1, n_T + n_new + 1) for k in kappa
    )
    return CandidateGraph(
        base=base,
        n_total=n_T + n_new,
        kappa=kappa,
        union_degrees=base.degrees(),
        new_edges=new_edges,
    )


def edge_column_index(i: int, j: int, n: int) -> int:
    """Column of edge ``e_ij`` when the upper triangle is unrolled row by row."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return (i - 1) * (2 * n - i) // 2 + (j - i)


def column_to_edge(k: int, n: int) -> Edge:
    total = n * (n - 1) // 2
    if not 1 <= k <= total:
        raise ValueError(f"column {k} outside 1..{total}")
    # row i holds columns start(i)+1 .. start(i)+(n-i), start(i) = (i-1)(2n-i)/2
    disc = (2 * n - 1) ** 2 - 8 * (k - 1)
    i = int((2 * n + 1 - math.isqrt(disc)) // 2)
    i = max(1, min(i, n - 1))
    while (i - 1) * (2 * n - i) // 2 >= k:
        i -= 1
    while i * (2 * n - i - 1) // 2 < k:
        i += 1
    return i, k - (i - 1) * (2 * n - i) // 2 + i


@dataclass(frozen=True)
class IncidenceColumnMap:
    n: int

    @property
    def n_columns(self) -> int:
        return self.n * (self.n - 1) // 2

    def column(self, i: int, j: int) -> int:
        i, j = normalize_edge(i, j)
        return edge_column_index(i, j, self.n)

    def edge(self, k: int) -> Edge:
        return column_to_edge(k, self.n)


def incidence_matrix(n: int, edges: Iterable[Edge]) -> sp.csr_matrix:
    """Sparse ``n x n(n-1)/2`` zero-inflated incidence matrix (row i-1 is node i, column k-1 is k)."""
    rows, cols = [], []
    for i, j in edges:
        k = edge_column_index(i, j, n)
        rows += [i - 1, j - 1]
        cols += [k - 1, k - 1]
    data = np.ones(len(rows), dtype=np.int8)
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n * (n - 1) // 2))
