"""Brute-force reference implementations for certifying the fast solvers.

Everything here is deliberately naive and shares no code with the optimized
solver paths: completion times come from direct max-scans, minisum sums from
literal argmax cluster decompositions, k-sink optima from exhaustive divider
enumeration, and a parcel-level flow simulation approximates the continuous
closed forms.  Superlinear blowups are fine; an enumeration budget guard
refuses oversized inputs instead of truncating silently.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .model import DynamicPathNetwork, Placement, SinkGroup

DEFAULT_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the configured budget."""


@dataclass
class OracleReport:
    """One solver-vs-oracle comparison record."""

    instance_digest: str
    operation: str
    solver_value: float
    oracle_value: float
    abs_deviation: float
    rel_deviation: float
    passed: bool
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)


def make_report(
    net: DynamicPathNetwork,
    operation: str,
    solver_value: float,
    oracle_value: float,
    rel_tol: float = 1e-9,
    seed: int | None = None,
) -> OracleReport:
    abs_dev = abs(solver_value - oracle_value)
    scale = max(abs(solver_value), abs(oracle_value), 1.0)
    rel_dev = abs_dev / scale
    return OracleReport(
        instance_digest=instance_digest(net),
        operation=operation,
        solver_value=solver_value,
        oracle_value=oracle_value,
        abs_deviation=abs_dev,
        rel_deviation=rel_dev,
        passed=rel_dev <= rel_tol,
        seed=seed,
    )


def instance_digest(net: DynamicPathNetwork) -> str:
    payload = json.dumps(net.to_dict(), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def oracle_L(net: DynamicPathNetwork, alpha: int, beta: int) -> float:
    """Direct max-scan completion time of [v_alpha, v_beta) moved right to v_beta."""
    if not (1 <= alpha <= beta <= net.n):
        raise IndexError(f"interval ({alpha}, {beta}) out of range")
    best = 0.0
    for h in range(alpha, beta):
        val = net.tau * (net.pos(beta) - net.pos(h)) + net.interval_weight(alpha, h) / net.capacity
        best = max(best, val)
    return best


def oracle_R(net: DynamicPathNetwork, beta: int, gamma: int) -> float:
    """Direct max-scan completion time of (v_beta, v_gamma] moved left to v_beta."""
    if not (1 <= beta <= gamma <= net.n):
        raise IndexError(f"interval ({beta}, {gamma}) out of range")
    best = 0.0
    for h in range(beta + 1, gamma + 1):
        val = net.tau * (net.pos(h) - net.pos(beta)) + net.interval_weight(h, gamma) / net.capacity
        best = max(best, val)
    return best


def _left_time_point(net: DynamicPathNetwork, i: int, x: float) -> float:
    best = 0.0
    for h in range(i, net.n + 1):
        if net.pos(h) >= x:
            break
        best = max(
            best,
            net.tau * (x - net.pos(h)) + net.interval_weight(i, h) / net.capacity,
        )
    return best


def _right_time_point(net: DynamicPathNetwork, j: int, x: float) -> float:
    best = 0.0
    for h in range(j, 0, -1):
        if net.pos(h) <= x:
            break
        best = max(
            best,
            net.tau * (net.pos(h) - x) + net.interval_weight(h, j) / net.capacity,
        )
    return best


def oracle_minimax_1sink(net: DynamicPathNetwork, i: int, j: int) -> tuple[float, float]:
    """Brute-force 1-sink minimax optimum on [v_i, v_j].

    Candidates are every vertex plus every pairwise intersection of a
    left-side term line with a right-side term line (wastefully O(n^2),
    on purpose); each candidate is evaluated from scratch.
    """
    if not (1 <= i <= j <= net.n):
        raise IndexError(f"interval ({i}, {j}) out of range")
    if i == j:
        return net.pos(i), 0.0
    candidates = {net.pos(h) for h in range(i, j + 1)}
    tau, c = net.tau, net.capacity
    for h in range(i, j):
        lterm = net.interval_weight(i, h) / c
        for m in range(i + 1, j + 1):
            rterm = net.interval_weight(m, j) / c
            x = (net.pos(h) + net.pos(m)) / 2.0 + (rterm - lterm) / (2.0 * tau)
            if net.pos(i) <= x <= net.pos(j):
                candidates.add(x)
    best_x, best = None, math.inf
    for x in sorted(candidates):
        val = max(_left_time_point(net, i, x), _right_time_point(net, j, x))
        if val < best:
            best_x, best = x, val
    return best_x, best


def _dividers(n: int, k: int, budget: int) -> list[tuple[int, ...]]:
    count = math.comb(n - 1, k - 1)
    if count > budget:
        raise BudgetExceededError(
            f"{count} divider choices exceed the budget of {budget}"
        )
    return list(combinations(range(1, n), k - 1))


def oracle_minimax_k(
    net: DynamicPathNetwork, k: int, budget: int = DEFAULT_BUDGET
) -> Placement:
    """Exhaustive minimax k-sink optimum by divider enumeration."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = net.n
    k = min(k, n)
    memo: dict[tuple[int, int], tuple[float, float]] = {}

    def one_sink(f: int, t: int) -> tuple[float, float]:
        key = (f, t)
        if key not in memo:
            memo[key] = oracle_minimax_1sink(net, f, t)
        return memo[key]

    best_cost, best = math.inf, None
    for divs in _dividers(n, k, budget):
        bounds = (0,) + divs + (n,)
        cost = 0.0
        sinks, groups = [], []
        for g in range(k):
            f, t = bounds[g] + 1, bounds[g + 1]
            x, val = one_sink(f, t)
            sinks.append(x)
            groups.append(SinkGroup(f, t, x, val))
            cost = max(cost, val)
        if cost < best_cost:
            best_cost = cost
            best = Placement("minimax", k, tuple(sinks), divs, cost, tuple(groups))
    return best


def _clusters_toward(
    positions: list[float], masses: list[float], tau: float, c: float
) -> list[tuple[float, float]]:
    """Literal recursive argmax cluster decomposition of one supply column.

    ``positions`` are distances-to-go in decreasing order of distance (the
    farthest supply first); returns (distance of head, cluster mass) pairs.
    Argmax ties resolve toward the nearer (later-scanned) vertex.
    """
    clusters = []
    lo = 0
    m = len(positions)
    while lo < m:
        best_j, best_val, acc = lo, -math.inf, 0.0
        running = 0.0
        for j in range(lo, m):
            running += masses[j]
            val = tau * positions[j] + running / c
            if val >= best_val:
                best_j, best_val, acc = j, val, running
        clusters.append((positions[best_j], acc))
        lo = best_j + 1
    return clusters


def oracle_minisum_vertex_sum(net: DynamicPathNetwork, i: int, j: int, m: int) -> float:
    """Exact total arrival time of supplies [v_i, v_j] at sink vertex m.

    Uses the literal cluster decomposition (one argmax scan per cluster),
    independent of the incremental sweep.
    """
    if not (1 <= i <= m <= j <= net.n):
        raise IndexError(f"sink {m} outside interval ({i}, {j})")
    tau, c = net.tau, net.capacity
    total = 0.0
    xm = net.pos(m)
    left = [(xm - net.pos(h), net.weight(h)) for h in range(i, m)]
    right = [(net.pos(h) - xm, net.weight(h)) for h in range(j, m, -1)]
    for side in (left, right):
        if not side:
            continue
        dists = [d for d, _ in side]
        masses = [w for _, w in side]
        for dist, mass in _clusters_toward(dists, masses, tau, c):
            total += mass * tau * dist + mass * mass / (2.0 * c)
    return total


def minisum_sum_tables(
    net: DynamicPathNetwork,
) -> tuple[list[list[float]], list[list[float]]]:
    """Oracle-grade per-vertex one-sided sums for all subintervals.

    Returns (SL, SR) with SL[i][m] the cost of supplies [i, m-1] at v_m and
    SR[m][j] the cost of supplies [m+1, j] at v_m (0-padded, 1-based).
    """
    n = net.n
    tau, c = net.tau, net.capacity
    SL = [[0.0] * (n + 1) for _ in range(n + 2)]
    SR = [[0.0] * (n + 2) for _ in range(n + 1)]
    for m in range(1, n + 1):
        xm = net.pos(m)
        for i in range(m, 0, -1):
            if i == m:
                continue
            dists = [xm - net.pos(h) for h in range(i, m)]
            masses = [net.weight(h) for h in range(i, m)]
            total = 0.0
            for dist, mass in _clusters_toward(dists, masses, tau, c):
                total += mass * tau * dist + mass * mass / (2.0 * c)
            SL[i][m] = total
        for j in range(m + 1, n + 1):
            dists = [net.pos(h) - xm for h in range(j, m, -1)]
            masses = [net.weight(h) for h in range(j, m, -1)]
            total = 0.0
            for dist, mass in _clusters_toward(dists, masses, tau, c):
                total += mass * tau * dist + mass * mass / (2.0 * c)
            SR[m][j] = total
    return SL, SR


def _oracle_opt_table(net: DynamicPathNetwork) -> dict[tuple[int, int], tuple[int, float]]:
    """Oracle-grade OPT(i, j) (DAG-node convention: interval [v_i, v_{j-1}])."""
    SL, SR = minisum_sum_tables(net)
    n = net.n
    table: dict[tuple[int, int], tuple[int, float]] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            last = j - 1
            best_m, best = i, SL[i][i] + SR[i][last]
            for m in range(i, last + 1):
                val = SL[i][m] + SR[m][last]
                if val < best:
                    best_m, best = m, val
            table[(i, j)] = (best_m, best)
    return table


def oracle_minisum_k(
    net: DynamicPathNetwork, k: int, budget: int = DEFAULT_BUDGET
) -> Placement:
    """Exhaustive minisum k-sink optimum by divider enumeration with exact
    per-vertex closed-form sums."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = net.n
    k = min(k, n)
    opts = _oracle_opt_table(net)
    best_cost, best = math.inf, None
    for divs in _dividers(n, k, budget):
        bounds = (0,) + divs + (n,)
        cost = 0.0
        sinks, groups = [], []
        for g in range(k):
            f, t = bounds[g] + 1, bounds[g + 1]
            m, val = opts[(f, t + 1)]
            sinks.append(net.pos(m))
            groups.append(SinkGroup(f, t, net.pos(m), val))
            cost += val
        if cost < best_cost:
            best_cost = cost
            best = Placement("minisum", k, tuple(sinks), divs, cost, tuple(groups))
    return best


def simulate_group_sum(
    net: DynamicPathNetwork,
    first: int,
    last: int,
    sink: float,
    parcels: int,
) -> float:
    """Parcel-level flow simulation of the total arrival time at ``sink``.

    Each vertex's supply is split into ``parcels`` equal pieces released in
    non-crossing FIFO order (nearer sources first); successive arrivals at
    the sink are spaced by parcel_size/capacity.  Converges to the closed
    forms with O(1/parcels) error.
    """
    if parcels < 1:
        raise ValueError(f"parcels must be >= 1, got {parcels}")
    if first > last:
        return 0.0
    if not (1 <= first <= last <= net.n):
        raise IndexError(f"sources ({first}, {last}) out of range")
    total = 0.0
    left = [h for h in range(first, last + 1) if net.pos(h) < sink]
    right = [h for h in range(first, last + 1) if net.pos(h) > sink]
    for side in (list(reversed(left)), right):  # nearest source first
        if not side:
            continue
        dists = np.array([abs(net.pos(h) - sink) for h in side])
        weights = np.array([net.weight(h) for h in side])
        sizes = np.repeat(weights / parcels, parcels)
        # unimpeded arrival of parcel q of a vertex: tau*d + (own queue)/c
        own_queue = np.concatenate(
            [w / parcels * np.arange(1, parcels + 1) for w in weights]
        )
        unimpeded = np.repeat(net.tau * dists, parcels) + own_queue / net.capacity
        spacing = np.cumsum(sizes) / net.capacity
        arrival = spacing + np.maximum.accumulate(unimpeded - spacing)
        total += float(np.sum(arrival * sizes))
    return total


def check_monge(net: DynamicPathNetwork, abs_tol: float = 1e-7) -> list[tuple[int, int, float]]:
    """Quadrangle-inequality violations of the oracle-grade subinterval costs.

    Returns (i, j, excess) triples where
    OPT(i,j) + OPT(i+1,j+1) > OPT(i+1,j) + OPT(i,j+1) + abs_tol; empty when
    the concave Monge property holds.
    """
    n = net.n
    if n < 3:
        return []
    opts = {k: v for k, (_, v) in _oracle_opt_table(net).items()}
    violations = []
    for i in range(1, n):
        for j in range(i + 2, n + 1):
            lhs = opts[(i, j)] + opts[(i + 1, j + 1)]
            rhs = opts[(i + 1, j)] + opts[(i, j + 1)]
            if lhs > rhs + abs_tol:
                violations.append((i, j, lhs - rhs))
    return violations
