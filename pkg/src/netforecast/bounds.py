"""Cardinality bounds on the F1 solution space, plus brute-force oracles.

All counts are exact Python integers.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .optimize import InstanceTooLarge, ProblemInstance

ENUMERATION_LIMIT = 22


@dataclass
class BoundsReport:
    n: int
    c3: int
    m_ones: int
    C2_upper: int
    k_star: int
    eta: list[int] = field(default_factory=list)
    g: list[int] = field(default_factory=list)
    C1_lower: int = 1
    special_case: str = "general"
    enumerated: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["format_version"] = 1
        return d


def _c3(bounds) -> int:
    return sum(bounds) // 2


def count_upper_bound(p: ProblemInstance) -> int:
    m = len(p.variables)
    c3 = _c3(p.degree_bound)
    if c3 >= m:
        return 2 ** m - 1
    return sum(math.comb(m, k) for k in range(1, c3 + 1))


def _eta(bounds, n: int) -> list[int]:
    """eta[j-1] = number of nodes whose bound equals j-1, for j = 1..n."""
    counts = [0] * (n + 1)
    for b in bounds:
        if b <= n:
            counts[b] += 1
    return counts[:n]


def _all_ones_count(n: int) -> int:
    num = 1
    r = n
    while r >= 2:
        num *= math.comb(r, 2)
        r -= 2
    den = math.factorial(n // 2)
    assert num % den == 0
    return num // den


def lower_bound_report(p: ProblemInstance) -> BoundsReport:
    b = list(p.degree_bound)
    n = p.n
    report = BoundsReport(n=n, c3=_c3(b), m_ones=len(p.variables),
                          C2_upper=count_upper_bound(p), k_star=0, eta=_eta(b, n))
    if all(x == 0 for x in b):
        report.C1_lower, report.special_case = 1, "all_zero"
        return report
    if all(x == 1 for x in b):
        report.C1_lower, report.special_case = _all_ones_count(n), "all_one"
        return report

    r = sorted(b, reverse=True)  # reverse order statistics, r[j-1] = f_(j)
    eta = report.eta
    half = Fraction(sum(b), 2)

    def assump1(k: int) -> bool:
        return eta[k - 1] + k + r[k - 1] <= n

    def assump2(k: int) -> bool:
        return sum(r[:k]) <= half

    def g_term(j: int) -> int:
        pool = n - j - eta[j - 1]
        top = r[j - 1] - j + 1
        return sum(math.comb(pool, s) for s in range(1, top + 1)) if pool > 0 else 0

    if not assump1(1):
        # bounds leave at most one node with room: only the edgeless graph is guaranteed
        report.C1_lower, report.special_case = 1, "edgeless"
        return report
    if not assump2(1):
        report.k_star = 1
        report.g = [g_term(1)]
        report.C1_lower = report.g[0]
        return report

    k = 1
    while k < n and assump1(k + 1) and assump2(k + 1):
        k += 1
    report.k_star = k
    g = []
    for j in range(1, k + 1):
        if r[j - 1] - j + 1 <= 0:
            report.special_case = "truncated"
            break
        g.append(g_term(j))
    report.g = g
    report.C1_lower = math.prod(g)
    return report


def count_lower_bound(p: ProblemInstance) -> int:
    return lower_bound_report(p).C1_lower


def _feasible_masks(p: ProblemInstance, limit: int) -> np.ndarray:
    m = len(p.variables)
    if m > limit:
        raise InstanceTooLarge(f"{m} variables exceed the enumeration limit {limit}")
    masks = np.arange(1 << m, dtype=np.uint32)
    ok = np.ones(masks.size, dtype=bool)
    incident = [0] * (p.n + 1)
    for bit, (i, j) in enumerate(p.variables):
        incident[i] |= 1 << bit
        incident[j] |= 1 << bit
    for node in range(1, p.n + 1):
        if incident[node]:
            ok &= np.bitwise_count(masks & np.uint32(incident[node])) <= p.degree_bound[node - 1]
    if p.total_bound is not None:
        ok &= np.bitwise_count(masks) <= p.total_bound
    return masks[ok]


def enumerate_solutions(p: ProblemInstance, limit: int = ENUMERATION_LIMIT) -> int:
    """Number of feasible nonempty 0/1 assignments over the candidate edges."""
    feasible = _feasible_masks(p, limit)
    return int(np.sum(feasible != 0))


def enumerate_optimum(p: ProblemInstance, limit: int = ENUMERATION_LIMIT) -> float:
    """Best objective over all feasible assignments, by exhaustive search."""
    feasible = _feasible_masks(p, limit)
    w = np.array([p.coeff[e] for e in p.variables], dtype=float)
    values = np.zeros(1, dtype=float)
    for wi in w:
        values = np.concatenate([values, values + wi])
    vals = values[feasible]
    if vals.size == 0:
        return 0.0
    # settle near-ties in exact arithmetic
    top = vals.max()
    close = feasible[vals >= top - 1e-9]
    exact = max(
        sum((Fraction(w[b]) for b in range(w.size) if int(mask) >> b & 1), Fraction(0))
        for mask in close
    )
    return max(0.0, float(exact))
