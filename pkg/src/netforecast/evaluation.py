"""Forecast error metrics, the last-seen baseline and a rolling-origin harness."""
from __future__ import annotations

import csv
import math
import statistics
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .graph import Graph, GraphSeries, density
from .pipeline import ForecastParams, forecast_graph

ROW_COLUMNS = ("scheme", "T", "h", "seed", "node_err", "edge_err", "dens_err", "jaccard")
SUMMARY_COLUMNS = ("scheme", "h", "count",
                   "node_err_mean", "node_err_sd", "edge_err_mean", "edge_err_sd",
                   "dens_err_mean", "dens_err_sd")


def node_error(pred: Graph, actual: Graph) -> float:
    if actual.n_nodes < 1:
        raise ValueError("actual graph has no nodes")
    return abs(pred.n_nodes - actual.n_nodes) / actual.n_nodes


def edge_error(pred: Graph, actual: Graph) -> float:
    if actual.n_edges < 1:
        raise ValueError("actual graph has no edges")
    return abs(pred.n_edges - actual.n_edges) / actual.n_edges


def density_error(pred: Graph, actual: Graph) -> float:
    return abs(density(pred) - density(actual))


def edge_jaccard(pred: Graph, actual: Graph) -> float:
    """Overlap of edge identities; a diagnostic only, new nodes match by index."""
    union = pred.edges | actual.edges
    if not union:
        return 1.0
    return len(pred.edges & actual.edges) / len(union)


def last_seen_baseline(series: GraphSeries, h: int) -> Graph:
    return series.last


@dataclass(frozen=True)
class MetricRow:
    scheme: str
    T: int
    h: int
    seed: int
    node_err: float
    edge_err: float
    dens_err: float
    jaccard: float


def score(pred: Graph, actual: Graph, scheme: str, T: int, h: int, seed: int) -> MetricRow:
    return MetricRow(scheme, T, h, seed, node_error(pred, actual), edge_error(pred, actual),
                     density_error(pred, actual), edge_jaccard(pred, actual))


def run_experiment(runs: Mapping[int, GraphSeries] | GraphSeries,
                   origins: Iterable[int], horizons: Iterable[int],
                   schemes: Sequence[str] = ("C5", "C6", "LS"),
                   params: ForecastParams = ForecastParams(),
                   repeats: int = 1) -> list[MetricRow]:
    """Score every (run, origin T, horizon h, scheme) cell against G_{T+h}.

    ``runs`` maps a seed/run id to its series; a bare series is run id 0.
    "LS" in ``schemes`` is the last-seen baseline. With ``repeats > 1`` every
    run is evaluated that many times under ids ``run * repeats + r``.
    """
    if isinstance(runs, GraphSeries):
        runs = {0: runs}
    origins, horizons = sorted(set(origins)), sorted(set(horizons))
    rows: list[MetricRow] = []
    for run_id, series in runs.items():
        if origins[-1] + horizons[-1] > len(series):
            raise ValueError(
                f"origin {origins[-1]} + horizon {horizons[-1]} exceeds series length {len(series)}"
            )
        for r in range(repeats):
            seed = run_id if repeats == 1 else run_id * repeats + r
            for T in origins:
                history = series.truncate(T)
                for h in horizons:
                    actual = series[T + h]
                    for scheme in schemes:
                        if scheme == "LS":
                            pred = last_seen_baseline(history, h)
                        else:
                            pred = forecast_graph(history, h, replace(params, scheme=scheme))
                        rows.append(score(pred, actual, scheme, T, h, seed))
    return rows


def _mean_sd(values: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, sd


def aggregate(rows: Iterable[MetricRow]) -> list[dict]:
    """Mean and sample standard deviation per (scheme, h)."""
    groups: dict[tuple[str, int], list[MetricRow]] = {}
    for row in rows:
        groups.setdefault((row.scheme, row.h), []).append(row)
    out = []
    for (scheme, h), group in sorted(groups.items()):
        rec = {"scheme": scheme, "h": h, "count": len(group)}
        for metric in ("node_err", "edge_err", "dens_err"):
            mean, sd = _mean_sd([getattr(r, metric) for r in group])
            rec[f"{metric}_mean"], rec[f"{metric}_sd"] = mean, sd
        out.append(rec)
    return out


def summary_table(summary: list[dict], metric: str = "edge_err", digits: int = 4) -> str:
    """``mean (sd)`` grid, one line per scheme and one column per horizon."""
    schemes = sorted({r["scheme"] for r in summary})
    hs = sorted({r["h"] for r in summary})
    cell = {(r["scheme"], r["h"]): r for r in summary}
    lines = ["scheme " + " ".join(f"h={h:<16}" for h in hs)]
    for s in schemes:
        parts = []
        for h in hs:
            r = cell.get((s, h))
            parts.append("-".ljust(18) if r is None else
                         f"{r[metric + '_mean']:.{digits}f} ({r[metric + '_sd']:.{digits}f})".ljust(18))
        lines.append(f"{s:<6} " + " ".join(parts))
    return "\n".join(lines)


def write_rows_csv(rows: Iterable[MetricRow], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(ROW_COLUMNS)
        for row in rows:
            w.writerow([_fmt(getattr(row, c)) for c in ROW_COLUMNS])


def write_summary_csv(summary: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for rec in summary:
            w.writerow([_fmt(rec[c]) for c in SUMMARY_COLUMNS])


def read_rows_csv(path: str | Path) -> list[MetricRow]:
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            out.append(MetricRow(
                scheme=rec["scheme"], T=int(rec["T"]), h=int(rec["h"]), seed=int(rec["seed"]),
                node_err=float(rec["node_err"]), edge_err=float(rec["edge_err"]),
                dens_err=float(rec["dens_err"]), jaccard=float(rec["jaccard"]),
            ))
    return out


def _fmt(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def row_dicts(rows: Iterable[MetricRow]) -> list[dict]:
    return [asdict(r) for r in rows]
