"""Minimax k-sink solver: latest-evacuee completion time, O(kn) overall.

The 1-sink subproblem on an interval is solved by a left-to-right cell scan
over edges: the left-side completion time grows in x while the right-side
one shrinks, so the optimal sink sits in the first cell where the left value
at the right endpoint catches up.  The k-sink layer is a row-by-row DP over
sink counts whose divider scan and inner cell scan both only ever move
right, backed by four live cluster structures advanced in lockstep.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .clusters import LeftClusterStructure, RightClusterStructure, build_right
from .model import DynamicPathNetwork, Placement, SinkGroup, check_placement


@dataclass(frozen=True)
class OneSinkResult:
    """Unique 1-sink optimum on a vertex interval.

    ``cell`` is the vertex index l with sink in [pos(l), pos(l+1)]
    (l == j only for the degenerate single-vertex interval).
    """

    interval: tuple[int, int]
    sink: float
    cost: float
    cell: int


@dataclass
class MinimaxCounters:
    """Operation counters backing the O(kn) work-bound checks."""

    cells_tested: int = 0
    divider_steps: int = 0
    merge_tests: int = 0
    frontier_advances: int = 0
    origin_advances: int = 0
    row_stats: list[dict] = field(default_factory=list)

    def total(self) -> int:
        return self.cells_tested + self.divider_steps + self.merge_tests

    def as_dict(self) -> dict:
        return {
            "cells_tested": self.cells_tested,
            "divider_steps": self.divider_steps,
            "merge_tests": self.merge_tests,
            "frontier_advances": self.frontier_advances,
            "origin_advances": self.origin_advances,
        }


def locate_in_cell(
    l: int,
    L_l: float,
    R_l: float,
    L_l1: float,
    R_l1: float,
    net: DynamicPathNetwork,
) -> tuple[float, float]:
    """Optimal sink within cell [pos(l), pos(l+1)] given the four corner values.

    Preconditions: L_l <= R_l and L_l1 >= R_l1 (the cell contains the
    optimum).  Balances the right-side line falling from R_l against the
    left-side line rising to L_l1; out-of-range balance points snap to the
    cell endpoints.
    """
    delta = net.pos(l + 1) - net.pos(l)
    td = net.tau * delta
    alpha = (R_l - L_l1 + td) / (2.0 * td)
    if alpha < 0.0:
        return net.pos(l), max(R_l, L_l)
    if alpha > 1.0:
        return net.pos(l + 1), max(L_l1, R_l1)
    return net.pos(l) + alpha * delta, R_l - alpha * td


class ScanState:
    """Resumable 1-sink cell scan over a growing/shrinking vertex interval.

    Holds the interval (a, j) with a < j, the current cell l, and the four
    live cluster structures D_L(a,l), D_L(a,l+1), D_R(l,j), D_R(l+1,j).
    All pointers only move right; origin moves interleave cell bumps so no
    structure is ever rebuilt.
    """

    __slots__ = (
        "net",
        "a",
        "j",
        "l",
        "dl_l",
        "dl_l1",
        "dr_l",
        "dr_l1",
        "cells_tested",
        "frontier_advances",
        "origin_advances",
    )

    def __init__(self, net: DynamicPathNetwork, a: int, j: int) -> None:
        if not (1 <= a < j <= net.n):
            raise IndexError(f"interval ({a}, {j}) invalid for n={net.n}")
        self.net = net
        self.a = a
        self.j = j
        self.l = a
        self.dl_l = LeftClusterStructure(a, a)
        self.dl_l1 = LeftClusterStructure(a, a)
        self.dl_l1.advance_frontier(net)
        self.dr_l = build_right(net, a, j)
        self.dr_l1 = build_right(net, a + 1, j)
        self.cells_tested = 0
        self.frontier_advances = 1 + (j - a) + (j - a - 1)
        self.origin_advances = 0

    def merge_tests(self) -> int:
        return (
            self.dl_l.test_counter
            + self.dl_l1.test_counter
            + self.dr_l.test_counter
            + self.dr_l1.test_counter
        )

    def advance_cell(self) -> None:
        net = self.net
        self.dl_l.advance_frontier(net)
        self.dl_l1.advance_frontier(net)
        self.dr_l.advance_origin(net)
        self.dr_l1.advance_origin(net)
        self.l += 1
        self.frontier_advances += 2
        self.origin_advances += 2

    def advance_frontier(self) -> None:
        net = self.net
        self.dr_l.advance_frontier(net)
        self.dr_l1.advance_frontier(net)
        self.j += 1
        self.frontier_advances += 2

    def advance_origin(self) -> None:
        net = self.net
        if self.l == self.a:
            self.advance_cell()
        self.dl_l.advance_origin(net)
        self.dl_l1.advance_origin(net)
        self.a += 1
        self.origin_advances += 2

    def solve(self) -> tuple[float, float, int]:
        """Scan cells rightward to the optimum; returns (sink, cost, cell)."""
        net = self.net
        while True:
            self.cells_tested += 1
            if self.dl_l1.query(net) >= self.dr_l1.query(net):
                break
            self.advance_cell()
        sink, cost = locate_in_cell(
            self.l,
            self.dl_l.query(net),
            self.dr_l.query(net),
            self.dl_l1.query(net),
            self.dr_l1.query(net),
            net,
        )
        return sink, cost, self.l


def one_sink_interval(
    net: DynamicPathNetwork,
    i: int,
    j: int,
    resume: ScanState | None = None,
) -> OneSinkResult:
    """Unique minimizer of the interval completion time over [pos(i), pos(j)].

    ``resume`` may carry a scan state positioned at or left of the answer
    (valid when both interval endpoints moved monotonically right).
    """
    if not (1 <= i <= j <= net.n):
        raise IndexError(f"interval ({i}, {j}) out of range for n={net.n}")
    if i == j:
        return OneSinkResult((i, j), net.pos(i), 0.0, i)
    state = resume
    if state is None:
        state = ScanState(net, i, j)
    else:
        while state.j < j:
            state.advance_frontier()
        while state.a < i:
            state.advance_origin()
    sink, cost, cell = state.solve()
    return OneSinkResult((i, j), sink, cost, cell)


class MinimaxSolver:
    """Row-by-row DP over sink counts with resumable monotone scans.

    After ``solve()`` the instance exposes ``opt_rows`` (opt_rows[p][i] is
    the optimal p-sink cost on the prefix [v_1, v_i]) and ``divider_rows``
    for reconstruction and for the monotonicity/unimodality checks.
    """

    def __init__(self, net: DynamicPathNetwork, k: int) -> None:
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.net = net
        self.k = min(k, net.n)
        self.opt_rows: dict[int, list[float]] = {}
        self.divider_rows: dict[int, list[int]] = {}
        self.counters = MinimaxCounters()

    def _absorb_state(self, state: ScanState | None) -> None:
        if state is None:
            self.counters.row_stats.append(
                {"merge_tests": 0, "frontier_advances": 0, "origin_advances": 0}
            )
            return
        stats = {
            "merge_tests": state.merge_tests(),
            "frontier_advances": state.frontier_advances,
            "origin_advances": state.origin_advances,
        }
        self.counters.row_stats.append(stats)
        self.counters.merge_tests += stats["merge_tests"]
        self.counters.frontier_advances += stats["frontier_advances"]
        self.counters.origin_advances += stats["origin_advances"]
        self.counters.cells_tested += state.cells_tested

    def _first_row(self) -> list[float]:
        net = self.net
        n = net.n
        row = [0.0] * (n + 1)
        state = None
        if n >= 2:
            state = ScanState(net, 1, 2)
            _, row[2], _ = state.solve()
            for i in range(3, n + 1):
                state.advance_frontier()
                _, row[i], _ = state.solve()
        self._absorb_state(state)
        return row

    def _row(self, p: int, prev: list[float]) -> tuple[list[float], list[int]]:
        net = self.net
        n = net.n
        row = [0.0] * (n + 1)
        dividers = [0] * (n + 1)
        for i in range(1, min(p, n) + 1):
            dividers[i] = i - 1
        t = p - 1
        state: ScanState | None = None
        for i in range(p + 1, n + 1):
            if state is None:
                state = ScanState(net, t + 1, i)
            else:
                state.advance_frontier()
                while state.a < t + 1:
                    state.advance_origin()
            _, cost_b, _ = state.solve()
            f_t = max(prev[t], cost_b)
            while t < i - 1:
                # prev is nondecreasing and the right part nonincreasing in t,
                # so the scan can stop using the already-known next row value.
                if prev[t + 1] >= f_t or prev[t] >= cost_b:
                    break
                t += 1
                self.counters.divider_steps += 1
                if t + 1 == i:
                    cost_b = 0.0
                else:
                    while state.a < t + 1:
                        state.advance_origin()
                    _, cost_b, _ = state.solve()
                f_t = max(prev[t], cost_b)
            row[i] = f_t
            dividers[i] = t
        self._absorb_state(state)
        return row, dividers

    def solve(self) -> Placement:
        net = self.net
        n = net.n
        k = self.k
        prev = self._first_row()
        self.opt_rows[1] = prev
        for p in range(2, k + 1):
            row, dividers = self._row(p, prev)
            self.opt_rows[p] = row
            self.divider_rows[p] = dividers
            prev = row
        return self._reconstruct()

    def _reconstruct(self) -> Placement:
        net = self.net
        n = net.n
        k = self.k
        bounds = [n]
        i = n
        for p in range(k, 1, -1):
            d = self.divider_rows[p][i]
            bounds.append(d)
            i = d
        bounds.append(0)
        bounds.reverse()
        groups = []
        sinks = []
        for g in range(k):
            f, t = bounds[g] + 1, bounds[g + 1]
            res = one_sink_interval(net, f, t)
            groups.append(SinkGroup(f, t, res.sink, res.cost))
            sinks.append(res.sink)
        cost = max(g.cost for g in groups)
        return Placement(
            objective="minimax",
            k=k,
            sinks=tuple(sinks),
            dividers=tuple(bounds[1:-1]),
            cost=cost,
            groups=tuple(groups),
        )


def minimax_k_sink(net: DynamicPathNetwork, k: int) -> Placement:
    """Optimal minimax k-sink placement (k is clamped to n: extra sinks are free)."""
    return MinimaxSolver(net, k).solve()


def _left_time_at(net: DynamicPathNetwork, first: int, x: float) -> float:
    """Completion time of supplies of [first, ...] strictly left of x, moved to x."""
    best = 0.0
    tau, c = net.tau, net.capacity
    base = net.prefix[first - 1]
    for h in range(first, net.n + 1):
        if net.pos(h) >= x:
            break
        val = tau * (x - net.pos(h)) + (net.prefix[h] - base) / c
        if val > best:
            best = val
    return best


def _right_time_at(net: DynamicPathNetwork, last: int, x: float) -> float:
    """Completion time of supplies of [..., last] strictly right of x, moved to x."""
    best = 0.0
    tau, c = net.tau, net.capacity
    top = net.prefix[last]
    for h in range(last, 0, -1):
        if net.pos(h) <= x:
            break
        val = tau * (net.pos(h) - x) + (top - net.prefix[h - 1]) / c
        if val > best:
            best = val
    return best


def evaluate_minimax(net: DynamicPathNetwork, placement: Placement) -> float:
    """Recompute the minimax objective from scratch by direct max-scans."""
    check_placement(net, placement)
    bounds = (0,) + placement.dividers + (net.n,)
    worst = 0.0
    for g in range(placement.k):
        f, t = bounds[g] + 1, bounds[g + 1]
        x = placement.sinks[g]
        left = _left_time_at(net, f, x)
        right = _right_time_at(net, t, x)
        worst = max(worst, left, right)
    return worst
