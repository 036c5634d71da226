"""Objective weights for candidate edges under the six coefficient schemes.

C1 uniform, C2 binary history, C3 proportional, C4 linear decay, C5 harmonic
decay, C6 last seen. For C3-C6 the edges from new nodes take an empirical
quantile of the existing-edge weights, at a level proportional to the union
degree of the popular endpoint.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph import CandidateGraph, Edge, GraphSeries

SCHEMES = ("C1", "C2", "C3", "C4", "C5", "C6")


@dataclass(frozen=True)
class CoefficientMap:
    scheme: str
    weights: Mapping[Edge, float]

    def __post_init__(self):
        for e, w in self.weights.items():
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"coefficient {w} for edge {e} outside [0, 1]")

    def __getitem__(self, e: Edge) -> float:
        return self.weights[e]

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def _check_scheme(scheme: str) -> str:
    s = scheme.upper()
    if s not in SCHEMES:
        raise ValueError(f"unknown coefficient scheme {scheme!r}; expected one of {SCHEMES}")
    return s


def _time_weight(scheme: str, t: int, T: int) -> float:
    if scheme == "C3":
        return 1.0
    if scheme == "C4":
        return float(t)
    return 1.0 / (T - t + 1)  # C5


def existing_edge_weights(scheme: str, series: GraphSeries,
                          edges: Iterable[Edge]) -> dict[Edge, float]:
    """Weights for edges between existing nodes; normalizers run over ``edges``."""
    scheme = _check_scheme(scheme)
    edges = list(edges)
    T = series.T
    if scheme == "C1":
        return {e: 1.0 for e in edges}
    if scheme == "C6":
        last = series.last.edges
        return {e: 1.0 if e in last else 0.0 for e in edges}
    if scheme == "C2":
        seen: set[Edge] = set()
        for g in series.graphs:
            seen |= g.edges
        return {e: 1.0 if e in seen else 0.0 for e in edges}

    wanted = set(edges)
    score: dict[Edge, float] = defaultdict(float)
    for t, g in enumerate(series.graphs, start=1):
        w = _time_weight(scheme, t, T)
        for e in g.edges & wanted:
            score[e] += w
    top = max((score[e] for e in edges), default=0.0)
    if top == 0.0:
        return {e: 0.0 for e in edges}
    return {e: min(1.0, score[e] / top) for e in edges}


def existing_edge_weight(scheme: str, series: GraphSeries, edge: Edge,
                         domain: Iterable[Edge] | None = None) -> float:
    """Single-edge weight; the normalizing max runs over ``domain`` (default: the union graph)."""
    if domain is None:
        domain = set().union(*(g.edges for g in series.graphs))
    domain = set(domain) | {edge}
    return existing_edge_weights(scheme, series, domain)[edge]


def empirical_quantile(values: Sequence[float], level: float) -> float:
    level = min(1.0, max(0.0, level))
    if len(values) == 0:
        return level
    return float(np.quantile(np.asarray(values, dtype=float), level, method="linear"))


def new_edge_weight(existing_weights: Sequence[float], union_degrees: np.ndarray,
                    kappa: Sequence[int], i: int) -> float:
    if i not in kappa:
        raise ValueError(f"node {i} is not in the popularity set")
    total = float(sum(union_degrees[k - 1] for k in kappa))
    if total <= 0:
        raise ValueError("popularity set has zero total union degree")
    return empirical_quantile(existing_weights, float(union_degrees[i - 1]) / total)


def compute_coefficients(scheme: str, series: GraphSeries,
                         candidate: CandidateGraph) -> CoefficientMap:
    scheme = _check_scheme(scheme)
    base = sorted(candidate.base.edges)
    weights = existing_edge_weights(scheme, series, base)
    if candidate.new_edges:
        if scheme in ("C1", "C2"):
            new_w = {e: 1.0 for e in candidate.new_edges}
        else:
            pool = [weights[e] for e in base]
            per_kappa = {
                k: new_edge_weight(pool, candidate.union_degrees, candidate.kappa, k)
                for k in candidate.kappa
            }
            # new edges are stored (kappa member, new node)
            new_w = {e: per_kappa[e[0]] for e in candidate.new_edges}
        weights.update(new_w)
    return CoefficientMap(scheme, weights)
