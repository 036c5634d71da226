"""Degree and count series, and the default point/quantile forecaster."""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable, Literal, Sequence

import numpy as np

from .graph import GraphSeries

_STD_NORMAL = NormalDist()


@dataclass(frozen=True)
class UnivariateSeries:
    start_time: int
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("empty series")
        if any(v < 0 for v in self.values):
            raise ValueError("series values must be non-negative")

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class ForecastPoint:
    """Point forecast with a Gaussian quantile function around it.

    ``sd`` is the h-step standard error already scaled for the horizon.
    """

    point: float
    sd: float
    horizon: int
    model: str = "naive"

    def quantile(self, level: float) -> float:
        if not 0.0 < level < 1.0:
            raise ValueError(f"quantile level must lie in (0, 1), got {level}")
        if self.sd == 0.0 or level == 0.5:
            return self.point
        return self.point + _STD_NORMAL.inv_cdf(level) * self.sd


def upper_bound(f: ForecastPoint, u: float) -> float:
    """f_u: the u-level quantile of the forecast, clamped at zero."""
    return max(0.0, f.quantile(u))


def extract_degree_series(series: GraphSeries, i: int) -> UnivariateSeries:
    n_T = series.last.n_nodes
    if not 1 <= i <= n_T:
        raise KeyError(f"node {i} not present in the last graph (n_T={n_T})")
    t0 = int(series.first_seen()[i - 1])
    vals = [series[t].degrees()[i - 1] for t in range(t0, series.T + 1)]
    return UnivariateSeries(t0, tuple(vals))


def degree_series_all(series: GraphSeries) -> list[UnivariateSeries]:
    """Degree series of every node of G_T, computed in one pass."""
    table = series.degree_matrix()
    t0 = series.first_seen()
    return [
        UnivariateSeries(int(t0[i]), tuple(table[t0[i] - 1 :, i]))
        for i in range(table.shape[1])
    ]


def extract_count_series(series: GraphSeries, kind: Literal["nodes", "edges"]) -> UnivariateSeries:
    if kind == "nodes":
        vals = series.node_counts()
    elif kind == "edges":
        vals = series.edge_counts()
    else:
        raise ValueError(f"unknown count kind {kind!r}")
    return UnivariateSeries(1, tuple(vals))


def _aicc(rss: float, n: int, k: int) -> float:
    if n - k - 1 <= 0:
        return math.inf
    return n * math.log(rss / n) + 2 * k + 2 * k * (k + 1) / (n - k - 1)


def trend_forecast(values: Sequence[float], h: int) -> ForecastPoint:
    """Constant-mean vs linear-trend least squares, picked by AICc.

    Series shorter than three points get the naive (last value) forecast with
    zero spread.
    """
    if h < 1:
        raise ValueError("horizon must be >= 1")
    y = np.asarray(values, dtype=float)
    n = y.size
    if n < 3:
        return ForecastPoint(max(0.0, float(y[-1])), 0.0, h, "naive")

    # relative floor keeps log(rss) finite on exact fits
    floor = 1e-12 * (1.0 + float(np.dot(y, y)))
    mean = float(y.mean())
    rss_const = float(np.sum((y - mean) ** 2))
    t = np.arange(1, n + 1, dtype=float)
    tc = t - t.mean()
    slope = float(np.dot(tc, y - mean) / np.dot(tc, tc))
    fitted = mean + slope * tc
    rss_lin = float(np.sum((y - fitted) ** 2))

    a_const = _aicc(max(rss_const, floor), n, 1)
    a_lin = _aicc(max(rss_lin, floor), n, 2)
    if a_lin < a_const:
        point = mean + slope * (n + h - t.mean())
        rss, dof, model = rss_lin, n - 2, "trend"
    else:
        point = mean
        rss, dof, model = rss_const, n - 1, "mean"
    sd = math.sqrt(rss / dof) if rss > floor else 0.0
    return ForecastPoint(max(0.0, point), sd * math.sqrt(h), h, model)


def drift_forecast(values: Sequence[float], h: int) -> ForecastPoint:
    """Random walk with or without drift, fit on first differences, picked by AICc.

    The forecast is anchored at the last observation, so a non-decreasing
    history never forecasts below its current level.
    """
    if h < 1:
        raise ValueError("horizon must be >= 1")
    y = np.asarray(values, dtype=float)
    if y.size < 3:
        return ForecastPoint(max(0.0, float(y[-1])), 0.0, h, "naive")
    dy = np.diff(y)
    n = dy.size
    floor = 1e-12 * (1.0 + float(np.dot(y, y)))
    mu = float(dy.mean())
    rss_rw = float(np.dot(dy, dy))
    rss_drift = float(np.sum((dy - mu) ** 2))
    a_rw = _aicc(max(rss_rw, floor), n, 0)
    a_drift = _aicc(max(rss_drift, floor), n, 1)
    if a_drift < a_rw:
        point, rss, dof, model = y[-1] + h * mu, rss_drift, n - 1, "drift"
    else:
        point, rss, dof, model = float(y[-1]), rss_rw, n, "rw"
    sd = math.sqrt(rss / dof) if rss > floor else 0.0
    return ForecastPoint(max(0.0, float(point)), sd * math.sqrt(h), h, model)


Forecaster = Callable[[Sequence[float], int], ForecastPoint]


def forecast(series: UnivariateSeries, h: int, forecaster: Forecaster | None = None) -> ForecastPoint:
    fn = forecaster or drift_forecast
    return fn(series.values, h)


def forecast_node_count(series: GraphSeries, h: int, gamma: float = 0.5,
                        forecaster: Forecaster | None = None) -> int:
    """n-hat at T+h: the gamma quantile, rounded, never below n_T."""
    f = forecast(extract_count_series(series, "nodes"), h, forecaster)
    n_T = series.last.n_nodes
    return max(n_T, int(round(upper_bound(f, gamma))))


def average_new_node_degree(series: GraphSeries) -> float:
    """Pooled mean degree of nodes at the step they first appear (t_0 >= 2)."""
    counts = series.node_counts()
    total, num = 0, 0
    for t in range(2, series.T + 1):
        lo, hi = int(counts[t - 2]), int(counts[t - 1])
        if hi > lo:
            deg = series[t].degrees()
            total += int(deg[lo:hi].sum())
            num += hi - lo
    if num == 0:
        raise ValueError("no new nodes in the series; d_avg is undefined")
    return total / num
