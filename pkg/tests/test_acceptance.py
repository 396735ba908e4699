"""Acceptance gate: one test per release criterion, one printed verdict each.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines
inline; they are printed unbuffered even under capture.
"""

import random
import time
from contextlib import contextmanager

import pytest

from dynsink import (
    MinimaxSolver,
    build_left,
    build_right,
    evaluate_minimax,
    evaluate_minisum,
    minimax_k_sink,
    minisum_k_sink,
    one_sink_minisum,
    sweep_sum_left,
    sweep_sum_right,
)
from dynsink.clusters import LeftClusterStructure, RightClusterStructure
from dynsink.minimax import ScanState, one_sink_interval
from dynsink.minisum import SumSweepState, _sum_toward_point, group_arrival_cost
from dynsink.oracle import (
    check_monge,
    oracle_minimax_k,
    oracle_minisum_k,
    oracle_minisum_vertex_sum,
    simulate_group_sum,
)

from conftest import make_network, random_network

REL_TOL = 1e-9


@contextmanager
def verdict(capsys, num, desc):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {desc}", flush=True)


def test_criterion_1_golden_instance(capsys):
    with verdict(capsys, 1, "golden three-vertex instance, tolerance 1e-9"):
        net = make_network([0.0, 1.0, 3.0], [1.0, 2.0, 1.0])
        p = minimax_k_sink(net, 1)
        assert p.sinks[0] == pytest.approx(1.0, rel=REL_TOL)
        assert p.cost == pytest.approx(3.0, rel=REL_TOL)
        p = minimax_k_sink(net, 2)
        assert p.cost == pytest.approx(2.0, rel=REL_TOL)
        assert p.sinks[0] == pytest.approx(1.0, rel=REL_TOL)
        assert p.sinks[1] == pytest.approx(3.0, rel=REL_TOL)
        assert p.dividers == (2,)
        s = minisum_k_sink(net, 1)
        assert s.sinks[0] == pytest.approx(net.pos(2), rel=REL_TOL)
        assert s.cost == pytest.approx(4.0, rel=REL_TOL)
        s = minisum_k_sink(net, 2)
        assert s.cost == pytest.approx(1.5, rel=REL_TOL)
        assert s.sinks[0] == pytest.approx(net.pos(2), rel=REL_TOL)
        assert s.sinks[1] == pytest.approx(net.pos(3), rel=REL_TOL)


def test_criterion_2_minimax_oracle_equivalence(capsys):
    with verdict(capsys, 2, "minimax oracle equivalence, 1000 instances n<=12 k<=4"):
        rng = random.Random(1002)
        start = time.perf_counter()
        for _ in range(1000):
            net = random_network(rng, 12)
            k = rng.randint(1, 4)
            p = minimax_k_sink(net, k)
            o = oracle_minimax_k(net, k)
            assert p.cost == pytest.approx(o.cost, rel=REL_TOL)
            assert evaluate_minimax(net, p) == pytest.approx(p.cost, rel=REL_TOL)
        assert time.perf_counter() - start < 120


def test_criterion_3_minisum_oracle_equivalence(capsys):
    with verdict(capsys, 3, "minisum oracle equivalence, 1000 instances n<=10 k<=4"):
        rng = random.Random(1003)
        start = time.perf_counter()
        for _ in range(1000):
            net = random_network(rng, 10)
            k = rng.randint(1, 4)
            p = minisum_k_sink(net, k)
            o = oracle_minisum_k(net, k)
            assert p.cost == pytest.approx(o.cost, rel=REL_TOL)
            assert evaluate_minisum(net, p) == pytest.approx(p.cost, rel=REL_TOL)
        assert time.perf_counter() - start < 120


def test_criterion_4_simulation_vs_closed_forms(capsys):
    with verdict(capsys, 4, "parcel simulation vs closed forms, rel 1e-3, monotone in M"):
        rng = random.Random(1004)
        grids = (100, 1000, 10000)
        for _ in range(200):
            mass = rng.uniform(0.3, 8.0)
            dist = rng.uniform(0.2, 10.0)
            c = rng.uniform(0.5, 4.0)
            tau = rng.uniform(0.5, 4.0)
            net = make_network([0.0], [mass], capacity=c, tau=tau)
            exact = group_arrival_cost(mass, dist, net)
            errs = [abs(simulate_group_sum(net, 1, 1, dist, m) - exact) for m in grids]
            assert errs[0] >= errs[1] >= errs[2]
            assert errs[2] <= 1e-3 * exact
        for _ in range(100):
            net = random_network(rng, 8, min_n=2)
            m = rng.randint(1, net.n)
            exact = oracle_minisum_vertex_sum(net, 1, net.n, m)
            if exact == 0.0:
                continue
            errs = [
                abs(simulate_group_sum(net, 1, net.n, net.pos(m), g) - exact)
                for g in grids
            ]
            assert errs[0] >= errs[1] >= errs[2]
            assert errs[2] <= 1e-3 * exact


def _interval_tables(net):
    """cost1[i][j] and sink1[i][j] for all 1 <= i <= j <= n, by resumed scans."""
    n = net.n
    cost1 = [[0.0] * (n + 1) for _ in range(n + 1)]
    sink1 = [[0.0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        sink1[i][i] = net.pos(i)
        state = None
        for j in range(i + 1, n + 1):
            if state is None:
                state = ScanState(net, i, j)
            res = one_sink_interval(net, i, j, resume=state)
            cost1[i][j] = res.cost
            sink1[i][j] = res.sink
    return cost1, sink1


def _assert_unimodal(values, tol=1e-7):
    lo = min(range(len(values)), key=values.__getitem__)
    for a, b in zip(values[:lo], values[1 : lo + 1]):
        assert a >= b - tol
    for a, b in zip(values[lo:], values[lo + 1 :]):
        assert b >= a - tol


def test_criterion_5_invariant_suite(capsys):
    with verdict(capsys, 5, "unimodality/monotonicity/Monge/vertex-optimality, 500 instances n<=20"):
        rng = random.Random(1005)
        for _ in range(500):
            net = random_network(rng, 20, min_n=2)
            n = net.n
            k = rng.randint(2, min(4, n))
            cost1, sink1 = _interval_tables(net)

            solver = MinimaxSolver(net, k)
            solver.solve()
            for p in range(2, k + 1):
                prev = solver.opt_rows[p - 1]
                row = solver.opt_rows[p]
                for i in range(p + 1, n + 1):
                    # (a) the divider objective is unimodal in the split point
                    f = [max(prev[t], cost1[t + 1][i]) for t in range(p - 1, i)]
                    _assert_unimodal(f)
                    assert row[i] == pytest.approx(min(f), rel=1e-12, abs=1e-7)
                # (b) optimal dividers never move left as the prefix grows
                divs = solver.divider_rows[p][p:]
                assert all(a <= b for a, b in zip(divs, divs[1:]))

            # (c) 1-sink optima never move left as either endpoint grows
            for i in range(1, n + 1):
                for j in range(i, n):
                    assert sink1[i][j] <= sink1[i][j + 1] + 1e-7
            for j in range(2, n + 1):
                for i in range(1, j):
                    assert sink1[i][j] <= sink1[i + 1][j] + 1e-7

            # (d) subinterval minisum costs satisfy the quadrangle inequality
            assert check_monge(net, abs_tol=1e-7) == []

            # (e) no interior point beats the best vertex for minisum
            for _ in range(5):
                i = rng.randint(1, n)
                j = rng.randint(i, n)
                _, best = one_sink_minisum(net, i, j)
                x = rng.uniform(net.pos(i), net.pos(j))
                left_last = max(
                    [m for m in range(i, j + 1) if net.pos(m) < x], default=i - 1
                )
                right_first = min(
                    [m for m in range(i, j + 1) if net.pos(m) > x], default=j + 1
                )
                at_x = _sum_toward_point(net, i, left_last, x, leftward=True)
                at_x += _sum_toward_point(net, right_first, j, x, leftward=False)
                assert at_x >= best - 1e-7


def test_criterion_6_complexity_counters(capsys):
    with verdict(capsys, 6, "linear-work counters at k=5, sweep and per-row test bounds"):
        rng = random.Random(1006)
        start = time.perf_counter()
        per_n = []
        for n in (10**3, 10**4, 10**5):
            positions = [0.0]
            for _ in range(n - 1):
                positions.append(positions[-1] + rng.uniform(0.5, 10.0))
            weights = [rng.uniform(0.5, 10.0) for _ in range(n)]
            net = make_network(positions, weights, capacity=2.0, tau=1.0)
            solver = MinimaxSolver(net, 5)
            solver.solve()
            per_n.append(solver.counters.total() / n)
            # per-row structure tests within the amortized budget
            for stats in solver.counters.row_stats:
                assert stats["merge_tests"] <= 2 * stats["frontier_advances"]
        assert max(per_n) / min(per_n) < 2.0
        # every minisum sweep over m vertices performs <= 2(m-1) merge tests
        for _ in range(50):
            net = random_network(rng, 60, min_n=2)
            m = net.n
            state = SumSweepState(direction="leftward-supplies")
            sweep_sum_left(net, 1, m, state)
            assert state.test_counter <= 2 * (m - 1)
            state = SumSweepState(direction="rightward-supplies")
            sweep_sum_right(net, 1, m, state)
            assert state.test_counter <= 2 * (m - 1)
        assert time.perf_counter() - start < 60


def test_criterion_7_path_independence(capsys):
    with verdict(capsys, 7, "10^5 randomized advance sequences match straight builds"):
        rng = random.Random(1007)
        sequences = 0
        while sequences < 10**5:
            net = random_network(rng, 10, min_n=2)
            n = net.n
            builds_l = {}
            builds_r = {}
            for _ in range(1000):
                b = rng.randint(2, n)
                a = rng.randint(1, b)
                s = LeftClusterStructure(1, 1)
                r = RightClusterStructure(net, 1, 1)
                fronts, origins = b - 1, a - 1
                o = f = 1
                while fronts or origins:
                    # random valid interleaving: origin never passes the frontier
                    if origins and o < f and (not fronts or rng.random() < 0.5):
                        s.advance_origin(net)
                        r.advance_origin(net)
                        o += 1
                        origins -= 1
                    else:
                        s.advance_frontier(net)
                        r.advance_frontier(net)
                        f += 1
                        fronts -= 1
                key = (a, b)
                if key not in builds_l:
                    builds_l[key] = build_left(net, a, b)
                    builds_r[key] = build_right(net, a, b)
                assert s == builds_l[key]
                assert r == builds_r[key]
                sequences += 1
