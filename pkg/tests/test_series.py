import math
from statistics import NormalDist

import numpy as np
import pytest
from hypothesis import given, strategies as st

from netforecast.graph import Graph, GraphSeries
from netforecast.series import (
    ForecastPoint,
    UnivariateSeries,
    average_new_node_degree,
    drift_forecast,
    extract_count_series,
    extract_degree_series,
    forecast_node_count,
    trend_forecast,
    upper_bound,
)


def star_series(T):
    # leaf t+1 joins at time t
    return GraphSeries(tuple(Graph.from_edges(t + 1, [(1, k) for k in range(2, t + 2)])
                             for t in range(1, T + 1)))


def test_upper_bound_example():
    f = ForecastPoint(10.0, 2.0, 1)
    z = NormalDist().inv_cdf(0.55)
    assert upper_bound(f, 0.55) == pytest.approx(10.0 + 2.0 * z)
    assert upper_bound(f, 0.55) == pytest.approx(10.2513, abs=1e-4)


def test_upper_bound_clamps_and_median():
    assert upper_bound(ForecastPoint(0.0, 1.0, 1), 0.1) == 0.0
    assert ForecastPoint(3.5, 7.0, 2).quantile(0.5) == 3.5
    with pytest.raises(ValueError):
        ForecastPoint(1.0, 1.0, 1).quantile(1.0)


@given(st.floats(0, 100), st.floats(0, 10), st.floats(0.01, 0.98), st.floats(0.001, 0.01))
def test_quantile_monotone(point, sd, a, step):
    f = ForecastPoint(point, sd, 1)
    assert f.quantile(a) <= f.quantile(min(a + step, 0.99))


def test_univariate_rejects_negative_and_empty():
    with pytest.raises(ValueError):
        UnivariateSeries(1, (1.0, -1.0))
    with pytest.raises(ValueError):
        UnivariateSeries(1, ())


def test_degree_series_examples():
    s = star_series(5)
    assert extract_degree_series(s, 1).values == (1, 2, 3, 4, 5)
    late = extract_degree_series(s, 4)
    assert late.start_time == 3 and len(late) == 5 - 2
    with pytest.raises(KeyError):
        extract_degree_series(s, 99)


def test_count_series_examples():
    s = star_series(4)
    assert extract_count_series(s, "edges").values == (1, 2, 3, 4)
    assert extract_count_series(s, "nodes").values == (2, 3, 4, 5)
    one = GraphSeries((Graph(3),))
    assert len(extract_count_series(one, "nodes")) == 1


@pytest.mark.parametrize("fc", [trend_forecast, drift_forecast])
def test_linear_series_forecast_is_exact(fc):
    y = [50 + 5 * t for t in range(25)]
    for h in range(1, 6):
        f = fc(y, h)
        assert f.point == pytest.approx(y[-1] + 5 * h, abs=1e-9)
        assert f.sd == 0.0


@pytest.mark.parametrize("fc", [trend_forecast, drift_forecast])
def test_constant_and_short_series(fc):
    f = fc([4.0] * 10, 3)
    assert f.point == 4.0 and f.sd == 0.0
    short = fc([2.0, 7.0], 2)
    assert short.point == 7.0 and short.sd == 0.0 and short.model == "naive"


def test_drift_sd_scales_with_sqrt_h():
    rng = np.random.default_rng(3)
    y = np.cumsum(rng.normal(0, 1, 40)) + 100
    f1, f4 = drift_forecast(y, 1), drift_forecast(y, 4)
    assert f4.sd == pytest.approx(2 * f1.sd)


def test_drift_anchored_at_last_value_for_rw():
    y = [3.0, 4.0, 3.0, 4.0, 3.0, 4.0, 3.0, 4.0]
    f = drift_forecast(y, 2)
    assert f.model == "rw" and f.point == 4.0


def test_node_count_forecast_linear_growth():
    gs = GraphSeries(tuple(Graph(50 + 5 * t) for t in range(25)))
    for h in range(1, 6):
        assert forecast_node_count(gs, h) == 170 + 5 * h


def test_average_new_node_degree():
    g1 = Graph.from_edges(3, [(1, 2)])
    g2 = Graph.from_edges(5, [(1, 4), (2, 4), (3, 5)])
    assert average_new_node_degree(GraphSeries((g1, g2))) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        average_new_node_degree(GraphSeries((g1, g1)))
