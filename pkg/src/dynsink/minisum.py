"""Minisum k-sink solver: total evacuation time over all supply units.

The 1-sink optimum sits at a vertex, so two linear sweeps (left-side and
right-side accumulated arrival costs per vertex) solve the 1-sink problem in
O(n).  The k-sink problem becomes a minimum k-link path in an implicit
complete DAG whose edge weights are 1-sink subinterval costs; those weights
satisfy the concave Monge inequality, so each DP layer's argmin row is
computed by divide and conquer on decision monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import DynamicPathNetwork, Placement, SinkGroup, check_placement


def group_arrival_cost(mass: float, distance: float, net: DynamicPathNetwork) -> float:
    """Total arrival time of one cluster of supply streaming in from one point.

    The batch travels ``distance`` and then drains through the capacity
    bottleneck, so the summed arrival time is mass*tau*distance + mass^2/(2c).
    """
    if mass < 0 or distance < 0:
        raise ValueError(f"mass and distance must be nonnegative, got {mass}, {distance}")
    return mass * net.tau * distance + mass * mass / (2.0 * net.capacity)


@dataclass
class SumSweepState:
    """State of one minisum sweep: merged cluster stack plus running totals."""

    direction: str
    cluster_stack: list[tuple[int, float]] = field(default_factory=list)
    running_sum: float = 0.0
    running_weight: float = 0.0
    prefix_weight: float = 0.0
    test_counter: int = 0

    @property
    def h(self) -> int:
        return len(self.cluster_stack)


def sweep_sum_left(
    net: DynamicPathNetwork,
    start: int,
    end: int,
    state: SumSweepState | None = None,
) -> list[float]:
    """Left-side cost sums: result[j - start] is the total arrival time of
    supplies [start, j-1] moved to vertex j, for j = start..end.

    One pass with a monotone cluster stack; a new vertex absorbs preceding
    clusters whose first unit would still be blocked behind the accumulated
    batch (so the stack always mirrors the maximal cluster decomposition).
    """
    if not (1 <= start <= end <= net.n):
        raise IndexError(f"interval ({start}, {end}) out of range for n={net.n}")
    if state is None:
        state = SumSweepState(direction="leftward-supplies")
    stack = state.cluster_stack
    tau, c = net.tau, net.capacity
    positions, weights = net.positions, net.weights

    sums = [0.0]
    total = 0.0  # cluster costs measured at the current target vertex
    on_stack = 0.0
    tests = 0
    for j in range(start, end):
        # absorb: vertex j's batch swallows blocked predecessors
        batch = weights[j - 1]
        pj = positions[j - 1]
        while stack:
            tests += 1
            head, mass = stack[-1]
            if tau * (pj - positions[head - 1]) <= batch / c:
                total -= mass * tau * (pj - positions[head - 1]) + mass * mass / (2.0 * c)
                on_stack -= mass
                batch += mass
                stack.pop()
            else:
                break
        stack.append((j, batch))
        total += batch * batch / (2.0 * c)
        on_stack += batch
        # shift the target one vertex right
        total += on_stack * tau * (positions[j] - pj)
        sums.append(total)
    state.running_sum = total
    state.running_weight = on_stack
    state.prefix_weight = on_stack
    state.test_counter += tests
    return sums


def sweep_sum_right(
    net: DynamicPathNetwork,
    start: int,
    end: int,
    state: SumSweepState | None = None,
) -> list[float]:
    """Mirror image of :func:`sweep_sum_left`: result[j - start] is the total
    arrival time of supplies [j+1, end] moved to vertex j, for j = start..end."""
    if not (1 <= start <= end <= net.n):
        raise IndexError(f"interval ({start}, {end}) out of range for n={net.n}")
    if state is None:
        state = SumSweepState(direction="rightward-supplies")
    stack = state.cluster_stack
    tau, c = net.tau, net.capacity
    positions, weights = net.positions, net.weights

    sums = [0.0]
    total = 0.0
    on_stack = 0.0
    tests = 0
    for j in range(end, start, -1):
        batch = weights[j - 1]
        pj = positions[j - 1]
        while stack:
            tests += 1
            head, mass = stack[-1]
            if tau * (positions[head - 1] - pj) <= batch / c:
                total -= mass * tau * (positions[head - 1] - pj) + mass * mass / (2.0 * c)
                on_stack -= mass
                batch += mass
                stack.pop()
            else:
                break
        stack.append((j, batch))
        total += batch * batch / (2.0 * c)
        on_stack += batch
        total += on_stack * tau * (pj - positions[j - 2])
        sums.append(total)
    state.running_sum = total
    state.running_weight = on_stack
    state.prefix_weight = on_stack
    state.test_counter += tests
    sums.reverse()
    return sums


def one_sink_minisum(net: DynamicPathNetwork, i: int, j: int) -> tuple[int, float]:
    """Optimal 1-sink vertex and total cost on [pos(i), pos(j)].

    The optimum is always at a vertex; ties break to the smallest index.
    """
    if not (1 <= i <= j <= net.n):
        raise IndexError(f"interval ({i}, {j}) out of range for n={net.n}")
    left = sweep_sum_left(net, i, j)
    right = sweep_sum_right(net, i, j)
    best_m, best = i, left[0] + right[0]
    for m in range(i + 1, j + 1):
        val = left[m - i] + right[m - i]
        if val < best:
            best_m, best = m, val
    return best_m, best


class MongeWeightOracle:
    """Memoized DAG edge weights: weight(i, j) is the 1-sink minisum cost of
    the subinterval [v_i, v_{j-1}] for DAG nodes 1 <= i < j <= n+1."""

    def __init__(self, net: DynamicPathNetwork) -> None:
        self.net = net
        self.memo: dict[tuple[int, int], float] = {}
        self.query_counter = 0

    def weight(self, i: int, j: int) -> float:
        if not (1 <= i < j <= self.net.n + 1):
            raise IndexError(f"DAG edge ({i}, {j}) out of range for n={self.net.n}")
        key = (i, j)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        self.query_counter += 1
        if j - i == 1:
            value = 0.0
        else:
            _, value = one_sink_minisum(self.net, i, j - 1)
        self.memo[key] = value
        return value


def monge_edge_weight(oracle: MongeWeightOracle, i: int, j: int) -> float:
    return oracle.weight(i, j)


class DecisionMonotonicityError(AssertionError):
    """Raised when a DP layer's argmin row fails to be nondecreasing."""


def _layer_argmin_row(
    oracle: MongeWeightOracle,
    prev: dict[int, float],
    js: list[int],
    i_lo: int,
    i_hi: int,
) -> dict[int, tuple[float, int]]:
    """Divide-and-conquer row minima over concave-Monge weights.

    For each DAG node j in ``js`` (sorted), finds the predecessor i in
    [i_lo, min(i_hi, j-1)] minimizing prev[i] + weight(i, j); decision
    monotonicity confines each half's search window.  Ties take the
    smallest predecessor.
    """
    out: dict[int, tuple[float, int]] = {}

    def rec(lo: int, hi: int, ilo: int, ihi: int) -> None:
        if lo > hi:
            return
        mid = (lo + hi) // 2
        j = js[mid]
        best_val, best_i = float("inf"), -1
        for i in range(ilo, min(ihi, j - 1) + 1):
            base = prev.get(i)
            if base is None:
                continue
            val = base + oracle.weight(i, j)
            if val < best_val:
                best_val, best_i = val, i
        out[j] = (best_val, best_i)
        rec(lo, mid - 1, ilo, best_i)
        rec(mid + 1, hi, best_i, ihi)

    rec(0, len(js) - 1, i_lo, i_hi)
    return out


def minisum_k_sink(
    net: DynamicPathNetwork, k: int, oracle: MongeWeightOracle | None = None
) -> Placement:
    """Optimal minisum k-sink placement via the k-link path DP.

    k is clamped to n (extra sinks are free).  Pass a fresh
    ``MongeWeightOracle`` to read back its query counter.  Raises
    DecisionMonotonicityError if a layer's chosen predecessors are not
    nondecreasing, which would contradict the concave Monge property.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = net.n
    k = min(k, n)
    if oracle is None:
        oracle = MongeWeightOracle(net)

    # layer p maps DAG node j to (best cost of a p-edge path from node 1, predecessor)
    layer: dict[int, tuple[float, int]] = {
        j: (oracle.weight(1, j), 1) for j in range(2, n + 2 - (k - 1))
    }
    parents: dict[int, dict[int, int]] = {1: {j: 1 for j in layer}}
    for p in range(2, k + 1):
        prev = {j: v[0] for j, v in layer.items()}
        js = list(range(p + 1, n + 2 - (k - p)))
        layer = _layer_argmin_row(oracle, prev, js, p, n)
        args = [layer[j][1] for j in js]
        if any(a > b for a, b in zip(args, args[1:])):
            raise DecisionMonotonicityError(
                f"layer {p} argmin row not nondecreasing: {args}"
            )
        parents[p] = {j: layer[j][1] for j in js}

    total = layer[n + 1][0]
    nodes = [n + 1]
    j = n + 1
    for p in range(k, 0, -1):
        j = parents[p][j]
        nodes.append(j)
    nodes.reverse()
    assert nodes[0] == 1

    groups = []
    sinks = []
    for g in range(k):
        f, t = nodes[g], nodes[g + 1] - 1
        vertex, cost = one_sink_minisum(net, f, t)
        groups.append(SinkGroup(f, t, net.pos(vertex), cost))
        sinks.append(net.pos(vertex))
    return Placement(
        objective="minisum",
        k=k,
        sinks=tuple(sinks),
        dividers=tuple(nodes[g] - 1 for g in range(1, k)),
        cost=total,
        groups=tuple(groups),
    )


def _sum_toward_point(
    net: DynamicPathNetwork, first: int, last: int, x: float, leftward: bool
) -> float:
    """Total arrival cost at point x of supplies first..last, all on one side."""
    if first > last:
        return 0.0
    tau, c = net.tau, net.capacity
    stack: list[tuple[float, float]] = []  # (head position, mass)
    total = 0.0
    on_stack = 0.0
    rng = range(first, last + 1) if leftward else range(last, first - 1, -1)
    prev_pos = None
    for j in rng:
        pj = net.pos(j)
        if prev_pos is not None:
            total += on_stack * tau * abs(pj - prev_pos)
        batch = net.weight(j)
        while stack:
            head_pos, mass = stack[-1]
            if tau * abs(pj - head_pos) <= batch / c:
                total -= mass * tau * abs(pj - head_pos) + mass * mass / (2.0 * c)
                on_stack -= mass
                batch += mass
                stack.pop()
            else:
                break
        stack.append((pj, batch))
        total += batch * batch / (2.0 * c)
        on_stack += batch
        prev_pos = pj
    total += on_stack * tau * abs(x - prev_pos)
    return total


def evaluate_minisum(net: DynamicPathNetwork, placement: Placement) -> float:
    """Recompute the minisum objective from scratch, group by group."""
    check_placement(net, placement)
    bounds = (0,) + placement.dividers + (net.n,)
    total = 0.0
    for g in range(placement.k):
        f, t = bounds[g] + 1, bounds[g + 1]
        x = placement.sinks[g]
        # split at the sink; supply exactly at the sink evacuates for free
        left_last = f - 1
        for m in range(f, t + 1):
            if net.pos(m) < x:
                left_last = m
            else:
                break
        right_first = t + 1
        for m in range(t, f - 1, -1):
            if net.pos(m) > x:
                right_first = m
            else:
                break
        total += _sum_toward_point(net, f, left_last, x, leftward=True)
        total += _sum_toward_point(net, right_first, t, x, leftward=False)
    return total
