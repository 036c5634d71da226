"""Preferential-attachment snapshot sequences, with optional random edge deletion."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphSeries


@dataclass(frozen=True)
class PAConfig:
    s0: int = 50
    s: int = 10
    nodes_per_step: int = 5
    steps: int = 30
    delete_per_step: int = 0
    seed: int = 0
    seed_graph: str = "pa"
    deletion: str = "snapshot"

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.s0 <= self.s:
            raise ValueError("s0 must exceed s")
        if self.nodes_per_step < 1:
            raise ValueError("nodes_per_step must be >= 1")
        if self.delete_per_step < 0:
            raise ValueError("delete_per_step must be >= 0")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.seed_graph not in ("ring", "pa"):
            raise ValueError(f"unknown seed_graph {self.seed_graph!r}")
        if self.deletion not in ("snapshot", "cumulative"):
            raise ValueError(f"unknown deletion mode {self.deletion!r}")


def generate_pa_series(cfg: PAConfig) -> GraphSeries:
    """``cfg.steps`` snapshots grown by linear preferential attachment.

    G_1 has s0 nodes: a ring (s0 edges) or, with ``seed_graph="pa"``, a graph
    grown from a single node where node i joins min(i - 1, s) earlier nodes with
    probability proportional to degree + 1. Each later snapshot adds
    ``nodes_per_step`` nodes that attach to s distinct targets with probability
    proportional to degree, then ``delete_per_step`` uniformly chosen edges are
    removed. With ``deletion="snapshot"`` the removal only hides edges from that
    snapshot and the attachment process keeps them; with ``"cumulative"`` they
    are gone for good.
    """
    rng = np.random.default_rng(cfg.seed)
    deg = np.zeros(cfg.s0 + cfg.nodes_per_step * (cfg.steps - 1), dtype=float)
    edges: set[tuple[int, int]] = set()
    if cfg.seed_graph == "ring":
        n = cfg.s0
        edges = {(min(i, i % n + 1), max(i, i % n + 1)) for i in range(1, n + 1)}
        for i, j in edges:
            deg[i - 1] += 1
            deg[j - 1] += 1
    else:
        n = 1
        while n < cfg.s0:
            k = min(n, cfg.s)
            weights = deg[:n] + 1.0
            targets = rng.choice(n, size=k, replace=False, p=weights / weights.sum()) + 1
            n += 1
            for tgt in targets:
                edges.add((int(tgt), n))
                deg[tgt - 1] += 1
            deg[n - 1] += k

    graphs = [Graph(n, frozenset(edges))]
    for _ in range(1, cfg.steps):
        for _ in range(cfg.nodes_per_step):
            weights = deg[:n]
            total = weights.sum()
            if np.count_nonzero(weights) < cfg.s:
                raise ValueError("too few nodes with positive degree to attach a new node")
            targets = rng.choice(n, size=cfg.s, replace=False, p=weights / total) + 1
            n += 1
            for tgt in targets:
                edges.add((int(tgt), n))
                deg[tgt - 1] += 1
            deg[n - 1] += cfg.s
        snapshot = edges
        if cfg.delete_per_step:
            if cfg.delete_per_step > len(edges):
                raise ValueError(
                    f"cannot delete {cfg.delete_per_step} edges from a graph with {len(edges)}"
                )
            ordered = sorted(edges)
            picks = rng.choice(len(ordered), size=cfg.delete_per_step, replace=False)
            gone = {ordered[k] for k in picks}
            if cfg.deletion == "cumulative":
                for i, j in gone:
                    deg[i - 1] -= 1
                    deg[j - 1] -= 1
                edges -= gone
                snapshot = edges
            else:
                snapshot = edges - gone
        graphs.append(Graph(n, frozenset(snapshot)))
    return GraphSeries(tuple(graphs))
