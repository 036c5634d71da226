"""Graph forecasting by degree-bounded edge selection."""
from .bounds import BoundsReport, count_lower_bound, count_upper_bound, enumerate_solutions
from .coefficients import SCHEMES, CoefficientMap, compute_coefficients
from .dataio import IdMap, WindowSpec, emit_graph, ingest, load_graph
from .evaluation import aggregate, edge_error, node_error, density_error, run_experiment
from .graph import CandidateGraph, Graph, GraphSeries, build_candidate, union_graphs
from .optimize import ProblemInstance, Solution, check_feasible, solve, solve_exact, solve_heuristic
from .pipeline import ForecastParams, forecast_graph, forecast_graph_detailed
from .series import ForecastPoint, UnivariateSeries, forecast, upper_bound
from .synthetic import PAConfig, generate_pa_series

__version__ = "0.1.0"
