import itertools
import math
import random

import pytest

from netforecast.optimize import ProblemInstance


def brute_force(p):
    """Oracle: try every subset of the variables; returns (best objective, feasible count)."""
    best, count = 0.0, 0
    vs = p.variables
    for r in range(len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            if p.total_bound is not None and r > p.total_bound:
                continue
            load = [0] * p.n
            ok = True
            for i, j in sub:
                load[i - 1] += 1
                load[j - 1] += 1
                if load[i - 1] > p.degree_bound[i - 1] or load[j - 1] > p.degree_bound[j - 1]:
                    ok = False
                    break
            if not ok:
                continue
            if r:
                count += 1
            best = max(best, math.fsum(p.coeff[e] for e in sub))
    return best, count


def independent_feasible(p, chosen):
    if not set(chosen) <= set(p.variables):
        return False
    for v in range(1, p.n + 1):
        if sum(v in e for e in chosen) > p.degree_bound[v - 1]:
            return False
    return p.total_bound is None or len(chosen) <= p.total_bound


def random_instance(rnd: random.Random, max_vars=20, max_n=8, formulation=None, max_bound=3):
    n = rnd.randint(2, max_n)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    rnd.shuffle(pairs)
    edges = pairs[: rnd.randint(0, min(max_vars, len(pairs)))]
    coeff = {e: rnd.random() for e in edges}
    bounds = [rnd.randint(0, max_bound) for _ in range(n)]
    form = formulation or rnd.choice(["F1", "F2"])
    total = rnd.randint(0, len(edges) + 1) if form == "F2" else None
    return ProblemInstance.from_bounds(n, edges, coeff, bounds, total)


@pytest.fixture
def triangle():
    return [(1, 2), (1, 3), (2, 3)]


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_log():
    """Call with (criterion, ok, detail); lines are echoed at the end of the run."""
    def log(num, ok, detail):
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
