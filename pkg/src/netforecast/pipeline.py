"""End-to-end graph forecast: series -> forecasts -> candidate -> weights -> solve."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .coefficients import compute_coefficients
from .graph import Graph, GraphSeries, build_candidate, default_kappa_size, union_graphs
from .optimize import (
    DEFAULT_EXACT_LIMIT,
    Formulation,
    ProblemInstance,
    Solution,
    assemble_forecast_graph,
    build_problem,
    solve,
)
from .series import (
    Forecaster,
    average_new_node_degree,
    degree_series_all,
    extract_count_series,
    forecast,
    forecast_node_count,
)


@dataclass(frozen=True)
class ForecastParams:
    scheme: str = "C5"
    formulation: Formulation = "F2"
    gamma: float = 0.5
    u: float = 0.55
    K: int | None = None
    solver: Literal["exact", "heuristic", "auto"] = "auto"
    exact_limit: int = DEFAULT_EXACT_LIMIT
    d_avg: float | None = None
    forecaster: Forecaster | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ForecastResult:
    graph: Graph
    problem: ProblemInstance
    solution: Solution
    n_hat: int
    d_avg: float | None
    K: int


def forecast_problem(series: GraphSeries, h: int, params: ForecastParams = ForecastParams()):
    """Everything up to, but not including, the solve."""
    if len(series) < 2:
        raise ValueError("forecasting needs a series of at least two graphs")
    if h < 1:
        raise ValueError("horizon must be >= 1")
    fc = params.forecaster
    n_hat = forecast_node_count(series, h, params.gamma, fc)
    n_new = n_hat - series.last.n_nodes

    d_avg = params.d_avg
    if d_avg is None:
        try:
            d_avg = average_new_node_degree(series)
        except ValueError:
            if n_new > 0:
                raise ValueError("no new nodes in history: pass d_avg explicitly") from None
    K = params.K if params.K is not None else default_kappa_size(union_graphs(series))

    candidate = build_candidate(series, n_new, K)
    coeffs = compute_coefficients(params.scheme, series, candidate)
    degree_fc = [forecast(s, h, fc) for s in degree_series_all(series)]
    edge_fc = None
    if params.formulation == "F2":
        edge_fc = forecast(extract_count_series(series, "edges"), h, fc)
    problem = build_problem(candidate, coeffs, degree_fc, params.u,
                            params.formulation, edge_fc, d_avg)
    return candidate, problem, n_hat, d_avg, K


def forecast_graph_detailed(series: GraphSeries, h: int,
                            params: ForecastParams = ForecastParams()) -> ForecastResult:
    candidate, problem, n_hat, d_avg, K = forecast_problem(series, h, params)
    sol = solve(problem, params.solver, params.exact_limit)
    return ForecastResult(assemble_forecast_graph(candidate, sol), problem, sol, n_hat, d_avg, K)


def forecast_graph(series: GraphSeries, h: int, params: ForecastParams = ForecastParams()) -> Graph:
    return forecast_graph_detailed(series, h, params).graph
