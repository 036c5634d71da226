"""Acceptance gate. Each test logs one PASS/FAIL line, then asserts."""
import random
import subprocess
import sys
import time
from statistics import fmean

import pytest

from netforecast.bounds import (
    count_lower_bound,
    count_upper_bound,
    enumerate_optimum,
    enumerate_solutions,
    lower_bound_report,
)
from netforecast.dataio import ingest, write_edge_list
from netforecast.evaluation import (
    aggregate,
    density_error,
    edge_error,
    node_error,
    run_experiment,
)
from netforecast.graph import Graph, GraphSeries
from netforecast.optimize import ProblemInstance, greedy, solve_exact, solve_heuristic
from netforecast.pipeline import ForecastParams, forecast_graph
from netforecast.synthetic import PAConfig, generate_pa_series

from conftest import independent_feasible

SEEDS = range(10)
T0 = 25
HORIZONS = range(1, 6)
PARAMS = ForecastParams(formulation="F2", gamma=0.5, u=0.55)


def _experiment(delete_per_step):
    start = time.perf_counter()
    runs = {seed: generate_pa_series(PAConfig(delete_per_step=delete_per_step, seed=seed))
            for seed in SEEDS}
    rows = run_experiment(runs, [T0], HORIZONS, ("C5", "C6", "LS"), PARAMS)
    summary = {(r["scheme"], r["h"]): r for r in aggregate(rows)}
    return rows, summary, time.perf_counter() - start


@pytest.fixture(scope="module")
def experiment1():
    return _experiment(0)


@pytest.fixture(scope="module")
def experiment2():
    return _experiment(10)


def _fmt(summary, scheme, metric):
    return " ".join(f"{summary[(scheme, h)][metric + '_mean']:.4f}" for h in HORIZONS)


def test_criterion_1_node_error_zero(experiment1, acceptance_log):
    rows, summary, elapsed = experiment1
    worst = max(r.node_err for r in rows if r.scheme in ("C5", "C6"))
    ok = worst == 0.0 and elapsed < 300
    acceptance_log(1, ok, f"max C5/C6 node error {worst} over 10 seeds x h=1..5; {elapsed:.1f}s")
    assert ok


def test_criterion_2_last_seen_node_error(experiment1, acceptance_log):
    _, summary, _ = experiment1
    got = [round(summary[("LS", h)]["node_err_mean"], 4) for h in HORIZONS]
    expected = [0.0286, 0.0556, 0.0811, 0.1053, 0.1282]
    ok = got == expected
    acceptance_log(2, ok, f"LS node error {got}")
    assert ok


def test_criterion_3_edge_error(experiment1, acceptance_log):
    _, summary, _ = experiment1
    checks = []
    for scheme in ("C5", "C6"):
        e = {h: summary[(scheme, h)]["edge_err_mean"] for h in HORIZONS}
        checks.append((f"{scheme} h=1 <= 0.005", e[1] <= 0.005))
        checks.append((f"{scheme} h=5 <= 0.06", e[5] <= 0.06))
        for h in HORIZONS:
            checks.append((f"{scheme} < LS at h={h}", e[h] < summary[("LS", h)]["edge_err_mean"]))
    failed = [name for name, ok in checks if not ok]
    detail = (f"C5 {_fmt(summary, 'C5', 'edge_err')} | C6 {_fmt(summary, 'C6', 'edge_err')} | "
              f"LS {_fmt(summary, 'LS', 'edge_err')}")
    if failed:
        detail += f" | failed: {', '.join(failed)}"
    acceptance_log(3, not failed, detail)
    assert not failed, failed


def test_criterion_4_deletions(experiment2, acceptance_log):
    rows, summary, _ = experiment2
    worst = max(r.node_err for r in rows if r.scheme in ("C5", "C6"))
    beats = all(summary[(s, h)]["edge_err_mean"] < summary[("LS", h)]["edge_err_mean"]
                for s in ("C5", "C6") for h in HORIZONS)
    ok = worst == 0.0 and beats
    acceptance_log(4, ok, f"max node error {worst}; edge C5 {_fmt(summary, 'C5', 'edge_err')} | "
                          f"C6 {_fmt(summary, 'C6', 'edge_err')} | LS {_fmt(summary, 'LS', 'edge_err')}")
    assert ok


def _oracle_instances():
    rnd = random.Random(2024)
    out = []
    for k in range(200):
        n = rnd.randint(3, 9)
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        rnd.shuffle(pairs)
        edges = pairs[: rnd.randint(1, min(20, len(pairs)))]
        coeff = {e: rnd.random() for e in edges}
        bounds = [rnd.randint(0, 3) for _ in range(n)]
        total = rnd.randint(0, len(edges)) if k % 2 else None
        out.append(ProblemInstance.from_bounds(n, edges, coeff, bounds, total))
    return out


@pytest.fixture(scope="module")
def oracle_instances():
    return _oracle_instances()


def test_criterion_5_exact_equals_enumeration(oracle_instances, acceptance_log):
    start = time.perf_counter()
    mismatches = infeasible = 0
    for p in oracle_instances:
        sol = solve_exact(p)
        mismatches += sol.objective != enumerate_optimum(p)
        infeasible += not independent_feasible(p, sol.chosen)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and infeasible == 0 and elapsed < 120
    n_f2 = sum(p.formulation == "F2" for p in oracle_instances)
    acceptance_log(5, ok, f"{len(oracle_instances)} instances ({n_f2} F2), max "
                          f"{max(len(p.variables) for p in oracle_instances)} vars: "
                          f"{mismatches} objective mismatches, {infeasible} infeasible, {elapsed:.1f}s")
    assert ok


def test_criterion_6_heuristic_sanity(oracle_instances, acceptance_log):
    bad = []
    for k, p in enumerate(oracle_instances):
        h = solve_heuristic(p)
        if not independent_feasible(p, h.chosen):
            bad.append((k, "infeasible"))
        if h.objective < greedy(p).objective:
            bad.append((k, "below greedy"))
        if h.objective > solve_exact(p).objective:
            bad.append((k, "above exact"))
    gaps = sum(solve_heuristic(p).objective < solve_exact(p).objective for p in oracle_instances)
    acceptance_log(6, not bad, f"{len(bad)} violations; heuristic strictly below exact on {gaps}/200")
    assert not bad, bad


def _inequalities_hold(p):
    b = list(p.degree_bound)
    r = sorted(b, reverse=True)
    eta1 = sum(x == 0 for x in b)
    return eta1 + 1 + r[0] <= p.n and 2 * r[0] <= sum(b)


def test_criterion_7_solution_count_bounds(acceptance_log):
    rnd = random.Random(7)
    upper_fail, checked, discrepancies = 0, 0, []
    for k in range(100):
        n = rnd.randint(2, 7)
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        edges = pairs if k % 2 else [e for e in pairs if rnd.random() < 0.6]
        p = ProblemInstance.from_bounds(n, edges, 1.0, [rnd.randint(0, 3) for _ in range(n)])
        count = enumerate_solutions(p)
        upper_fail += count > count_upper_bound(p)
        if _inequalities_hold(p):
            checked += 1
            c1 = count_lower_bound(p)
            if c1 > count:
                discrepancies.append(f"b={list(p.degree_bound)} m={len(edges)} C1={c1} count={count}")
    k4 = count_lower_bound(ProblemInstance.from_bounds(
        4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)], 1.0, [1, 1, 1, 1]))
    ok = upper_fail == 0 and k4 == 3
    acceptance_log(7, ok, f"upper bound violations {upper_fail}/100; lower bound checked on {checked}, "
                          f"{len(discrepancies)} discrepancies (reported, not fatal); all-ones n=4 -> {k4}")
    for d in discrepancies:
        print("  lower-bound discrepancy:", d)
    assert ok


def test_criterion_8_static_fixed_point(acceptance_log):
    rnd = random.Random(8)
    failures = []
    for trial in range(5):
        n = rnd.randint(5, 12)
        g = Graph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                                 if rnd.random() < 0.35] or [(1, 2)])
        series = GraphSeries((g,) * rnd.randint(2, 8))
        for h in HORIZONS:
            pred = forecast_graph(series, h, ForecastParams(scheme="C6", u=0.5))
            errs = (node_error(pred, g), edge_error(pred, g), density_error(pred, g))
            if pred != g or any(errs):
                failures.append((trial, h, errs))
    acceptance_log(8, not failures, f"5 static series x h=1..5: {len(failures)} mismatches with G_T")
    assert not failures


def test_criterion_9_ingested_series(tmp_path, acceptance_log):
    # synthetic stand-in with hidden edges, round-tripped through file ingestion
    runs = {}
    for seed in range(3):
        src = generate_pa_series(PAConfig(s0=60, s=4, nodes_per_step=3, steps=32,
                                          delete_per_step=15, seed=seed))
        path = tmp_path / f"run{seed}.txt"
        write_edge_list(src, path)
        runs[seed], _ = ingest(path)
        assert len(runs[seed]) >= 25
    rows = run_experiment(runs, range(20, 28), HORIZONS, ("C5", "LS"), PARAMS)
    c5 = fmean(r.node_err for r in rows if r.scheme == "C5")
    ls = fmean(r.node_err for r in rows if r.scheme == "LS")
    ok = c5 < ls
    acceptance_log(9, ok, f"mean node error C5 {c5:.4f} vs LS {ls:.4f} over {len(rows) // 2} cells")
    assert ok


def test_criterion_10_cli_determinism(tmp_path, acceptance_log):
    data = tmp_path / "pa.txt"
    write_edge_list(generate_pa_series(PAConfig(seed=3)), data)
    outs = []
    for k in range(2):
        out = tmp_path / f"g{k}.json"
        subprocess.run([sys.executable, "-m", "netforecast", "forecast", "--input", str(data),
                        "--horizon", "3", "--seed", "11", "--out", str(out)], check=True,
                       capture_output=True)
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    acceptance_log(10, ok, f"two forecast runs, {len(outs[0])} bytes each, identical={outs[0] == outs[1]}")
    assert ok
