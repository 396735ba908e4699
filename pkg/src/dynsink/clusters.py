"""Cluster deques for O(1) congestion-time queries with monotone advances.

A cluster is a maximal contiguous batch of supply that passes its target
contiguously at the capacity rate; it is represented by its head vertex (the
critical vertex realizing the batch's completion time) and its mass.  The
left structure covers supplies [origin, frontier-1] evacuating rightward to
the frontier vertex; the right structure covers supplies
[origin+1, frontier] evacuating leftward to the origin vertex.

All four pointer advances are amortized O(1); ``test_counter`` counts merge
tests so callers can assert the amortization bound.
"""

from __future__ import annotations

from collections import deque

from .model import DynamicPathNetwork


class LeftClusterStructure:
    """Cluster decomposition of [origin, frontier-1] toward the frontier.

    Cluster heads are the cluster end boundaries, so each cluster covers
    (previous head, head] and its mass is a prefix-sum difference.  Only the
    head indices are stored; masses are derived, which keeps every advance an
    integer operation and makes structures bitwise path independent.
    """

    __slots__ = ("origin", "frontier", "heads", "test_counter")

    def __init__(self, origin: int, frontier: int) -> None:
        self.origin = origin
        self.frontier = frontier
        self.heads: deque[int] = deque()
        self.test_counter = 0

    def __len__(self) -> int:
        return len(self.heads)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeftClusterStructure):
            return NotImplemented
        return (
            self.origin == other.origin
            and self.frontier == other.frontier
            and list(self.heads) == list(other.heads)
        )

    def masses(self, net: DynamicPathNetwork) -> list[float]:
        """Cluster masses, derived from the prefix sums."""
        prefix = net.prefix
        out = []
        lo = self.origin - 1
        for h in self.heads:
            out.append(prefix[h] - prefix[lo])
            lo = h
        return out

    def query(self, net: DynamicPathNetwork) -> float:
        """Completion time of moving all covered supply to the frontier vertex."""
        if not self.heads:
            return 0.0
        first_mass = net.prefix[self.heads[0]] - net.prefix[self.origin - 1]
        return net.tau * (net.pos(self.frontier) - net.pos(self.heads[0])) + (
            first_mass / net.capacity
        )

    def advance_origin(self, net: DynamicPathNetwork) -> None:
        """Drop vertex ``origin`` from coverage: origin -> origin + 1."""
        if self.origin >= self.frontier:
            raise ValueError("cannot advance origin of an empty structure")
        if self.heads[0] == self.origin:
            self.heads.popleft()
        self.origin += 1

    def advance_frontier(self, net: DynamicPathNetwork) -> None:
        """Extend coverage by one vertex: frontier -> frontier + 1.

        The old frontier vertex joins as a new cluster, merging leftward
        while the preceding cluster's first unit would be blocked behind the
        accumulated batch (merge on equality, so argmax ties resolve toward
        the larger head).
        """
        if self.frontier >= net.n:
            raise ValueError("cannot advance frontier past the last vertex")
        beta = self.frontier
        heads = self.heads
        heads.append(beta)
        tau, c = net.tau, net.capacity
        positions = net.positions
        prefix = net.prefix
        while len(heads) >= 2:
            self.test_counter += 1
            batch = prefix[heads[-1]] - prefix[heads[-2]]
            if tau * (positions[heads[-1] - 1] - positions[heads[-2] - 1]) <= batch / c:
                last = heads.pop()
                heads[-1] = last
            else:
                break
        self.frontier = beta + 1

    def dump(self, net: DynamicPathNetwork) -> str:
        """Debug dump: one line per cluster 'head mass'."""
        return "\n".join(
            f"{r} {s!r}" for r, s in zip(self.heads, self.masses(net))
        )

    def check_invariants(self, net: DynamicPathNetwork) -> None:
        assert 1 <= self.origin <= self.frontier <= net.n
        if self.origin == self.frontier:
            assert not self.heads
            return
        assert self.heads, "nonempty interval must have clusters"
        assert list(self.heads) == sorted(set(self.heads))
        assert self.heads[-1] == self.frontier - 1
        assert self.heads[0] >= self.origin
        masses = self.masses(net)
        total = sum(masses)
        expect = net.interval_weight(self.origin, self.frontier - 1)
        assert abs(total - expect) <= 1e-9 * max(1.0, expect)
        for i in range(len(self.heads) - 1):
            gap = net.tau * (net.pos(self.heads[i + 1]) - net.pos(self.heads[i]))
            assert gap > masses[i + 1] / net.capacity - 1e-12


class RightClusterStructure:
    """Cluster decomposition of [origin+1, frontier] toward the origin.

    Masses are stored as path-suffix totals ``W_i`` (supply of vertices
    head..n) together with the offset ``os(frontier)`` (supply beyond the
    frontier), so that origin advances never touch the stored masses.
    """

    __slots__ = ("origin", "frontier", "heads", "suffix_masses", "offset", "test_counter")

    def __init__(self, net: DynamicPathNetwork, origin: int, frontier: int) -> None:
        self.origin = origin
        self.frontier = frontier
        self.heads: deque[int] = deque()
        self.suffix_masses: deque[float] = deque()
        self.offset = net.suffix_weight(frontier + 1)
        self.test_counter = 0

    def __len__(self) -> int:
        return len(self.heads)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RightClusterStructure):
            return NotImplemented
        return (
            self.origin == other.origin
            and self.frontier == other.frontier
            and self.offset == other.offset
            and list(self.heads) == list(other.heads)
            and list(self.suffix_masses) == list(other.suffix_masses)
        )

    def query(self, net: DynamicPathNetwork) -> float:
        """Completion time of moving all covered supply to the origin vertex."""
        if not self.heads:
            return 0.0
        return net.tau * (net.pos(self.heads[0]) - net.pos(self.origin)) + (
            (self.suffix_masses[0] - self.offset) / net.capacity
        )

    def advance_origin(self, net: DynamicPathNetwork) -> None:
        """Drop vertex ``origin + 1`` from coverage: origin -> origin + 1."""
        if self.origin >= self.frontier:
            raise ValueError("cannot advance origin of an empty structure")
        if self.heads[0] == self.origin + 1:
            self.heads.popleft()
            self.suffix_masses.popleft()
        self.origin += 1

    def advance_frontier(self, net: DynamicPathNetwork) -> None:
        """Extend coverage by one vertex: frontier -> frontier + 1."""
        if self.frontier >= net.n:
            raise ValueError("cannot advance frontier past the last vertex")
        gamma1 = self.frontier + 1
        heads, suffix = self.heads, self.suffix_masses
        w_new = net.suffix_weight(gamma1)
        offset = net.suffix_weight(gamma1 + 1)
        heads.append(gamma1)
        suffix.append(w_new)
        tau, c = net.tau, net.capacity
        positions = net.positions
        value_new = tau * positions[gamma1 - 1] + (w_new - offset) / c
        while len(heads) >= 2:
            self.test_counter += 1
            if value_new >= tau * positions[heads[-2] - 1] + (suffix[-2] - offset) / c:
                heads[-2] = heads[-1]
                heads.pop()
                suffix[-2] = suffix[-1]
                suffix.pop()
            else:
                break
        self.offset = offset
        self.frontier = gamma1

    def dump(self) -> str:
        return "\n".join(f"{m} {w!r}" for m, w in zip(self.heads, self.suffix_masses))

    def check_invariants(self, net: DynamicPathNetwork) -> None:
        assert 1 <= self.origin <= self.frontier <= net.n
        assert abs(self.offset - net.suffix_weight(self.frontier + 1)) <= 1e-9 * max(
            1.0, self.offset
        )
        if self.origin == self.frontier:
            assert not self.heads
            return
        assert self.heads
        assert list(self.heads) == sorted(set(self.heads))
        assert self.heads[-1] == self.frontier
        assert self.heads[0] >= self.origin + 1
        covered = self.suffix_masses[0] - self.offset
        expect = net.interval_weight(self.heads[0], self.frontier)
        assert abs(covered - expect) <= 1e-9 * max(1.0, expect)
        for i in range(len(self.suffix_masses) - 1):
            assert self.suffix_masses[i] > self.suffix_masses[i + 1]


def build_left(net: DynamicPathNetwork, alpha: int, beta: int) -> LeftClusterStructure:
    """Build the maximal cluster decomposition of [alpha, beta-1] toward beta."""
    if not (1 <= alpha <= beta <= net.n):
        raise IndexError(f"interval ({alpha}, {beta}) out of range for n={net.n}")
    s = LeftClusterStructure(alpha, alpha)
    for _ in range(beta - alpha):
        s.advance_frontier(net)
    return s


def build_right(net: DynamicPathNetwork, beta: int, gamma: int) -> RightClusterStructure:
    """Build the maximal cluster decomposition of [beta+1, gamma] toward beta."""
    if not (1 <= beta <= gamma <= net.n):
        raise IndexError(f"interval ({beta}, {gamma}) out of range for n={net.n}")
    s = RightClusterStructure(net, beta, beta)
    for _ in range(gamma - beta):
        s.advance_frontier(net)
    return s


def query_left(s: LeftClusterStructure, net: DynamicPathNetwork) -> float:
    return s.query(net)


def query_right(s: RightClusterStructure, net: DynamicPathNetwork) -> float:
    return s.query(net)


def advance_left_origin(s: LeftClusterStructure, net: DynamicPathNetwork) -> None:
    s.advance_origin(net)


def advance_left_frontier(s: LeftClusterStructure, net: DynamicPathNetwork) -> None:
    s.advance_frontier(net)


def advance_right_origin(s: RightClusterStructure, net: DynamicPathNetwork) -> None:
    s.advance_origin(net)


def advance_right_frontier(s: RightClusterStructure, net: DynamicPathNetwork) -> None:
    s.advance_frontier(net)
