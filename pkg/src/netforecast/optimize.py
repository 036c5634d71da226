"""Degree-bounded binary edge selection (formulations F1 and F2).

Variables are the candidate edges only. F1 caps the degree of every node; F2
also caps the total number of selected edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Sequence

from .coefficients import CoefficientMap
from .graph import CandidateGraph, Edge, Graph, edge_column_index
from .series import ForecastPoint, upper_bound

Formulation = Literal["F1", "F2"]
DEFAULT_EXACT_LIMIT = 30


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    variables: tuple[Edge, ...]
    coeff: Mapping[Edge, float]
    degree_bound: tuple[int, ...]
    total_bound: int | None = None
    formulation: Formulation = "F1"

    def __post_init__(self):
        if self.formulation not in ("F1", "F2"):
            raise ValueError(f"unknown formulation {self.formulation!r}")
        if (self.total_bound is not None) != (self.formulation == "F2"):
            raise ValueError("total_bound must be set exactly when formulation is F2")
        if len(self.degree_bound) != self.n:
            raise ValueError("degree_bound needs one entry per node")
        if any(b < 0 for b in self.degree_bound):
            raise ValueError("degree bounds must be non-negative")
        if self.total_bound is not None and self.total_bound < 0:
            raise ValueError("total_bound must be non-negative")
        for i, j in self.variables:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"variable ({i}, {j}) outside a {self.n}-node instance")
            if (i, j) not in self.coeff:
                raise ValueError(f"no coefficient for variable ({i}, {j})")
        vs = tuple(sorted(set(self.variables), key=lambda e: edge_column_index(*e, self.n)))
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "degree_bound", tuple(int(b) for b in self.degree_bound))

    @classmethod
    def from_bounds(cls, n: int, edges: Iterable[Edge], coeff: Mapping[Edge, float] | float,
                    bounds: Sequence[int], total_bound: int | None = None) -> ProblemInstance:
        edges = tuple(edges)
        if not isinstance(coeff, Mapping):
            coeff = {e: float(coeff) for e in edges}
        return cls(n, edges, dict(coeff), tuple(bounds), total_bound,
                   "F1" if total_bound is None else "F2")

    def column(self, e: Edge) -> int:
        return edge_column_index(e[0], e[1], self.n)


@dataclass(frozen=True)
class Solution:
    chosen: frozenset[Edge]
    objective: float
    optimality: Literal["proved", "heuristic"]


def _objective(p: ProblemInstance, chosen: Iterable[Edge]) -> float:
    return math.fsum(p.coeff[e] for e in chosen)


def check_feasible(p: ProblemInstance, chosen: Iterable[Edge]) -> bool:
    chosen = list(chosen)
    if len(set(chosen)) != len(chosen):
        return False
    allowed = set(p.variables)
    load = [0] * (p.n + 1)
    for e in chosen:
        if e not in allowed:
            return False
        load[e[0]] += 1
        load[e[1]] += 1
    if any(load[i] > p.degree_bound[i - 1] for i in range(1, p.n + 1)):
        return False
    return p.total_bound is None or len(chosen) <= p.total_bound


def build_problem(candidate: CandidateGraph, coeffs: CoefficientMap,
                  degree_forecasts: Sequence[ForecastPoint], u: float,
                  formulation: Formulation = "F2",
                  edge_forecast: ForecastPoint | None = None,
                  new_node_degree: float | None = None) -> ProblemInstance:
    """Turn forecasts into integer bounds: floor(f_u(d)) for existing nodes,
    ceil(d_avg) for new nodes, floor(f_u(m)) for the F2 edge total."""
    n = candidate.n_total
    if len(degree_forecasts) != candidate.n_existing:
        raise ValueError(
            f"need {candidate.n_existing} degree forecasts, got {len(degree_forecasts)}"
        )
    bounds = [min(n - 1, max(0, math.floor(upper_bound(f, u)))) for f in degree_forecasts]
    if candidate.n_new:
        if new_node_degree is None:
            raise ValueError("new nodes need a degree forecast (new_node_degree)")
        b_new = min(n - 1, max(0, math.ceil(new_node_degree)))
        bounds += [b_new] * candidate.n_new

    total = None
    if formulation == "F2":
        if edge_forecast is None:
            raise ValueError("F2 needs an edge-count forecast")
        total = max(0, math.floor(upper_bound(edge_forecast, u)))
    edges = candidate.edges
    missing = [e for e in edges if e not in coeffs.weights]
    if missing:
        raise ValueError(f"{len(missing)} candidate edges have no coefficient")
    return ProblemInstance(n, tuple(edges), {e: coeffs[e] for e in edges},
                           tuple(bounds), total, formulation)


def _search_order(p: ProblemInstance) -> list[Edge]:
    """Positive-weight variables by (weight desc, column asc)."""
    return sorted((e for e in p.variables if p.coeff[e] > 0),
                  key=lambda e: (-p.coeff[e], p.column(e)))


def _as_integers(weights: Sequence[float]) -> list[int]:
    """Exact integer images of float weights over a shared power-of-two denominator."""
    fracs = [Fraction(w) for w in weights]
    denom = max((f.denominator for f in fracs), default=1)
    return [f.numerator * (denom // f.denominator) for f in fracs]


def solve_exact(p: ProblemInstance, limit: int = DEFAULT_EXACT_LIMIT) -> Solution:
    """Depth-first, include-first branch and bound in exact arithmetic.

    Returns the first solution in search order attaining the optimum.
    """
    if len(p.variables) > limit:
        raise InstanceTooLarge(f"{len(p.variables)} variables exceed the exact limit {limit}")
    order = _search_order(p)
    w = _as_integers([p.coeff[e] for e in order])
    m = len(order)
    # suffix prefix sums for the total-cap bound: tail[i][s] = sum of w[i:i+s]
    prefix = [0] * (m + 1)
    for i, wi in enumerate(w):
        prefix[i + 1] = prefix[i] + wi
    cap = list(p.degree_bound)
    total_cap = p.total_bound if p.total_bound is not None else m
    ends = [(a - 1, b - 1) for a, b in order]

    best_val = 0
    best: list[int] = []
    picked: list[int] = []

    def dfs(pos: int, cur: int, slots: int) -> None:
        nonlocal best_val, best
        if cur > best_val:
            best_val, best = cur, picked.copy()
        if pos == m or slots == 0:
            return
        if cur + prefix[min(m, pos + slots)] - prefix[pos] <= best_val:
            return
        a, b = ends[pos]
        if cap[a] > 0 and cap[b] > 0:
            cap[a] -= 1
            cap[b] -= 1
            picked.append(pos)
            dfs(pos + 1, cur + w[pos], slots - 1)
            picked.pop()
            cap[a] += 1
            cap[b] += 1
        dfs(pos + 1, cur, slots)

    dfs(0, 0, total_cap)
    chosen = frozenset(order[i] for i in best)
    return Solution(chosen, _objective(p, chosen), "proved")


class _State:
    """Mutable selection state shared by greedy and local search."""

    def __init__(self, p: ProblemInstance):
        self.p = p
        self.order = _search_order(p)
        self.w = [p.coeff[e] for e in self.order]
        self.ends = [(a - 1, b - 1) for a, b in self.order]
        self.rank = {e: k for k, e in enumerate(self.order)}
        self.resid = list(p.degree_bound)
        self.slots = p.total_bound if p.total_bound is not None else len(self.order)
        self.on = [False] * len(self.order)
        self.inc: list[list[int]] = [[] for _ in range(p.n)]
        for k, (a, b) in enumerate(self.ends):
            self.inc[a].append(k)
            self.inc[b].append(k)

    def fits(self, k: int) -> bool:
        a, b = self.ends[k]
        return self.resid[a] > 0 and self.resid[b] > 0 and self.slots > 0

    def add(self, k: int) -> None:
        a, b = self.ends[k]
        self.resid[a] -= 1
        self.resid[b] -= 1
        self.slots -= 1
        self.on[k] = True

    def drop(self, k: int) -> None:
        a, b = self.ends[k]
        self.resid[a] += 1
        self.resid[b] += 1
        self.slots += 1
        self.on[k] = False

    def fill(self) -> None:
        for k in range(len(self.order)):
            if self.slots == 0:
                return
            if not self.on[k] and self.fits(k):
                self.add(k)

    def best_free(self) -> int | None:
        for k in range(len(self.order)):
            if not self.on[k]:
                a, b = self.ends[k]
                if self.resid[a] > 0 and self.resid[b] > 0:
                    return k
        return None

    def best_move(self, e: int, free: int | None) -> tuple[float, tuple[int, ...]]:
        """Best gain from dropping ``e`` and adding one or two unchosen edges."""
        a, b = self.ends[e]
        r = self.resid
        r[a] += 1
        r[b] += 1
        slots = self.slots + 1
        try:
            cands = []
            seen = set()
            for node in (a, b):
                for k in self.inc[node]:
                    if k == e or self.on[k] or k in seen:
                        continue
                    seen.add(k)
                    x, y = self.ends[k]
                    if r[x] > 0 and r[y] > 0:
                        cands.append(k)
            if free is not None and free not in seen:
                cands.append(free)
            if not cands:
                return 0.0, ()
            cands.sort()  # rank order == weight desc, column asc
            w = self.w
            best_gain, best_add = w[cands[0]] - w[e], (cands[0],)
            if slots >= 2 and len(cands) >= 2:
                for ii, f in enumerate(cands[:-1]):
                    if w[f] + w[cands[ii + 1]] - w[e] <= best_gain:
                        break
                    fa, fb = self.ends[f]
                    for g in cands[ii + 1:]:
                        gain = w[f] + w[g] - w[e]
                        if gain <= best_gain:
                            break
                        ga, gb = self.ends[g]
                        ok = True
                        for node in {fa, fb, ga, gb}:
                            use = (node == fa) + (node == fb) + (node == ga) + (node == gb)
                            if use > r[node]:
                                ok = False
                                break
                        if ok:
                            best_gain, best_add = gain, (f, g)
                            break
            return best_gain, best_add
        finally:
            r[a] -= 1
            r[b] -= 1

    def chosen(self) -> frozenset[Edge]:
        return frozenset(self.order[k] for k, on in enumerate(self.on) if on)


def greedy(p: ProblemInstance) -> Solution:
    s = _State(p)
    s.fill()
    chosen = s.chosen()
    return Solution(chosen, _objective(p, chosen), "heuristic")


def solve_heuristic(p: ProblemInstance, max_passes: int = 1000) -> Solution:
    """Greedy fill, then drop-one/add-up-to-two local search to a local optimum."""
    s = _State(p)
    s.fill()
    tol = 1e-12
    for _ in range(max_passes):
        improved = False
        free = s.best_free() if s.slots == 0 else None
        for e in range(len(s.order)):
            if not s.on[e]:
                continue
            gain, adds = s.best_move(e, free)
            if gain > tol:
                s.drop(e)
                for k in adds:
                    s.add(k)
                s.fill()
                free = s.best_free() if s.slots == 0 else None
                improved = True
        if not improved:
            break
    chosen = s.chosen()
    return Solution(chosen, _objective(p, chosen), "heuristic")


def solve(p: ProblemInstance, solver: Literal["exact", "heuristic", "auto"] = "auto",
          exact_limit: int = DEFAULT_EXACT_LIMIT) -> Solution:
    if solver == "exact":
        return solve_exact(p, exact_limit)
    if solver == "heuristic":
        return solve_heuristic(p)
    if solver == "auto":
        if len(p.variables) <= exact_limit:
            return solve_exact(p, exact_limit)
        return solve_heuristic(p)
    raise ValueError(f"unknown solver {solver!r}")


def assemble_forecast_graph(candidate: CandidateGraph, sol: Solution) -> Graph:
    extra = sol.chosen - candidate.edges
    if extra:
        raise ValueError(f"solution uses {len(extra)} non-candidate edges")
    return Graph(candidate.n_total, frozenset(sol.chosen))
