"""Command-line driver: synth, forecast, evaluate, bounds."""
from __future__ import annotations

import argparse
import json
import sys
from datetime import date
from pathlib import Path

from .bounds import ENUMERATION_LIMIT, enumerate_solutions, lower_bound_report
from .coefficients import SCHEMES
from .dataio import IngestError, WindowSpec, dumps_graph, ingest, write_edge_list
from .evaluation import aggregate, run_experiment, summary_table, write_rows_csv, write_summary_csv
from .graph import GraphSeries
from .optimize import ProblemInstance
from .pipeline import ForecastParams, forecast_graph_detailed, forecast_problem
from .synthetic import PAConfig, generate_pa_series


class ConfigError(ValueError):
    """A user-supplied setting is out of range; the message names the flag."""


def _int_range(text: str, flag: str) -> list[int]:
    """``"20-30"`` (inclusive), ``"1,3,5"`` or a single integer."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part.strip()[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise ConfigError(f"{flag}: cannot parse {text!r} as integers or a range") from None
    if not out:
        raise ConfigError(f"{flag}: empty selection")
    return out


def _params(args) -> ForecastParams:
    if not 0.0 < args.gamma < 1.0:
        raise ConfigError(f"--gamma must lie in (0, 1), got {args.gamma}")
    if not 0.0 < args.u < 1.0:
        raise ConfigError(f"--u must lie in (0, 1), got {args.u}")
    if args.K is not None and args.K < 1:
        raise ConfigError(f"--K must be >= 1, got {args.K}")
    if args.d_avg is not None and args.d_avg < 0:
        raise ConfigError(f"--d-avg must be non-negative, got {args.d_avg}")
    return ForecastParams(scheme=getattr(args, "scheme", "C5"), formulation=args.formulation,
                          gamma=args.gamma, u=args.u, K=args.K, solver=args.solver,
                          exact_limit=args.exact_limit, d_avg=args.d_avg)


def _window(args) -> WindowSpec:
    try:
        return WindowSpec.parse(args.window, keep_empty=args.keep_empty)
    except ValueError as exc:
        raise ConfigError(f"--window: {exc}") from None


def _load(path: str, args) -> tuple[GraphSeries, object]:
    series, ids = ingest(path, _window(args))
    if len(series) < 2:
        raise ConfigError(f"--input {path}: only {len(series)} window(s); need at least 2")
    return series, ids


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", default="day", help="day | month | count:N (default: day)")
    p.add_argument("--keep-empty", action="store_true", help="keep empty day/month windows")
    p.add_argument("--formulation", choices=("F1", "F2"), default="F2")
    p.add_argument("--gamma", type=float, default=0.5, help="node-count quantile level")
    p.add_argument("--u", type=float, default=0.55, help="degree/edge upper quantile level")
    p.add_argument("--K", type=int, default=None,
                   help="popularity set size (default: all nodes with an edge so far)")
    p.add_argument("--d-avg", dest="d_avg", type=float, default=None,
                   help="override the new-node degree estimate")
    p.add_argument("--solver", choices=("exact", "heuristic", "auto"), default="auto")
    p.add_argument("--exact-limit", type=int, default=30,
                   help="auto uses the exact solver up to this many candidate edges")


def cmd_synth(args) -> int:
    try:
        cfg = PAConfig(s0=args.s0, s=args.s, nodes_per_step=args.nodes_per_step,
                       steps=args.steps, delete_per_step=args.delete_per_step,
                       seed=args.seed, seed_graph=args.seed_graph, deletion=args.deletion)
    except ValueError as exc:
        raise ConfigError(f"synth: {exc}") from None
    series = generate_pa_series(cfg)
    header = (f"PA series s0={cfg.s0} s={cfg.s} nodes_per_step={cfg.nodes_per_step} "
              f"steps={cfg.steps} delete_per_step={cfg.delete_per_step} seed={cfg.seed}")
    write_edge_list(series, args.out, date.fromisoformat(args.start_date), header)
    print(f"wrote {len(series)} snapshots to {args.out}", file=sys.stderr)
    return 0


def cmd_forecast(args) -> int:
    if args.horizon < 1:
        raise ConfigError(f"--horizon must be >= 1, got {args.horizon}")
    params = _params(args)
    series, ids = _load(args.input, args)
    res = forecast_graph_detailed(series, args.horizon, params)
    text = dumps_graph(res.graph, ids)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"T={series.T} h={args.horizon} n_hat={res.n_hat} K={res.K} "
          f"edges={res.graph.n_edges} objective={res.solution.objective:.6g} "
          f"({res.solution.optimality})", file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    params = _params(argparse.Namespace(**{**vars(args), "scheme": "C5"}))
    origins = _int_range(args.origins, "--origins")
    horizons = _int_range(args.horizons, "--horizons")
    if min(horizons) < 1:
        raise ConfigError("--horizons must all be >= 1")
    if min(origins) < 2:
        raise ConfigError("--origins must all be >= 2")
    schemes = [s.strip() for s in args.schemes.split(",")]
    for s in schemes:
        if s != "LS" and s not in SCHEMES:
            raise ConfigError(f"--schemes: unknown scheme {s!r}")
    if args.repeats < 1:
        raise ConfigError(f"--repeats must be >= 1, got {args.repeats}")
    runs = {}
    for k, path in enumerate(args.input):
        series, _ = ingest(path, _window(args))
        if max(origins) + max(horizons) > len(series):
            raise ConfigError(f"--origins/--horizons: {path} has {len(series)} windows, "
                              f"need {max(origins) + max(horizons)}")
        runs[k] = series
    rows = run_experiment(runs, origins, horizons, schemes, params, args.repeats)
    write_rows_csv(rows, args.out)
    summary = aggregate(rows)
    if args.summary:
        write_summary_csv(summary, args.summary)
    for metric in ("node_err", "edge_err"):
        print(f"[{metric}]\n{summary_table(summary, metric)}", file=sys.stderr)
    return 0


def _problem_for_bounds(args) -> ProblemInstance:
    if args.degree_bounds is not None:
        try:
            b = [int(x) for x in args.degree_bounds.split(",")]
        except ValueError:
            raise ConfigError(f"--degree-bounds: cannot parse {args.degree_bounds!r}") from None
        if any(x < 0 for x in b):
            raise ConfigError("--degree-bounds must be non-negative")
        n = len(b)
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        return ProblemInstance.from_bounds(n, edges, 1.0, b)
    if args.input is None:
        raise ConfigError("bounds needs --input or --degree-bounds")
    if args.horizon < 1:
        raise ConfigError(f"--horizon must be >= 1, got {args.horizon}")
    params = ForecastParams(formulation="F1", u=args.u, gamma=args.gamma, K=args.K,
                            d_avg=args.d_avg, scheme="C1")
    series, _ = _load(args.input, args)
    _, problem, *_ = forecast_problem(series, args.horizon, params)
    return problem


def cmd_bounds(args) -> int:
    if not 0.0 < args.u < 1.0:
        raise ConfigError(f"--u must lie in (0, 1), got {args.u}")
    p = _problem_for_bounds(args)
    report = lower_bound_report(p)
    if args.enumerate:
        if len(p.variables) > ENUMERATION_LIMIT:
            raise ConfigError(f"--enumerate: {len(p.variables)} candidate edges exceed "
                              f"the oracle limit of {ENUMERATION_LIMIT}")
        report.enumerated = enumerate_solutions(p)
    text = json.dumps(report.to_dict(), sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netforecast",
                                 description="Forecast future graphs from a snapshot series.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="write a preferential-attachment series as an edge list")
    p.add_argument("--s0", type=int, default=50)
    p.add_argument("--s", type=int, default=10)
    p.add_argument("--nodes-per-step", type=int, default=5)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--delete-per-step", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seed-graph", choices=("pa", "ring"), default="pa")
    p.add_argument("--deletion", choices=("snapshot", "cumulative"), default="snapshot")
    p.add_argument("--start-date", default="2000-01-01")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("forecast", help="forecast G_{T+h} and write graph JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--scheme", choices=SCHEMES, default="C5")
    _add_model_flags(p)
    p.add_argument("--seed", type=int, default=0,
                   help="accepted for reproducibility records; the pipeline is deterministic")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("evaluate", help="rolling-origin evaluation, one CSV row per cell")
    p.add_argument("--input", required=True, nargs="+", help="one or more edge lists (runs)")
    p.add_argument("--origins", required=True, help='e.g. "20-30" or "25"')
    p.add_argument("--horizons", default="1-5")
    p.add_argument("--schemes", default="C5,C6,LS")
    p.add_argument("--repeats", type=int, default=1)
    _add_model_flags(p)
    p.add_argument("--out", required=True, help="per-cell metrics CSV")
    p.add_argument("--summary", default=None, help="optional mean/sd summary CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bounds", help="solution-count bounds for the F1 problem as JSON")
    p.add_argument("--input", default=None)
    p.add_argument("--degree-bounds", default=None,
                   help="comma-separated bounds on a complete candidate graph, e.g. 3,2,1,1,1,0")
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--window", default="day")
    p.add_argument("--keep-empty", action="store_true")
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--u", type=float, default=0.55)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--d-avg", dest="d_avg", type=float, default=None)
    p.add_argument("--enumerate", action="store_true", help="also count solutions exhaustively")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, IngestError) as exc:
        print(f"netforecast {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"netforecast {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
