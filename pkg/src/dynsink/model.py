"""Validated dynamic path network instances and the shared solution vocabulary.

Vertices are 1-based everywhere, matching the usual facility-location
indexing on a path: vertex i sits at ``pos(i)`` with supply ``weight(i)``.
Coordinates are translated on ingestion so the first vertex sits at 0; all
cost formulas use coordinate differences only, so this is lossless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

#: Default relative tolerance for cost comparisons.
DEFAULT_REL_TOL = 1e-9

_INSTANCE_KEYS = {"positions", "weights", "capacity", "tau"}


class InvalidInstanceError(ValueError):
    """Raised when an instance description violates the model constraints."""


class MalformedPlacementError(ValueError):
    """Raised when a placement is structurally inconsistent with a network."""


def close(a: float, b: float, rel: float = DEFAULT_REL_TOL, abs_tol: float = 0.0) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=max(abs_tol, rel))


@dataclass(frozen=True)
class DynamicPathNetwork:
    """Immutable path network: positions, supplies, uniform capacity, pace.

    ``capacity`` limits the supply rate entering an edge per unit time and
    ``tau`` is the travel time per unit distance.  ``prefix[i]`` holds the
    cumulative supply of vertices 1..i (``prefix[0] == 0``), giving O(1)
    interval weights.
    """

    positions: tuple[float, ...]
    weights: tuple[float, ...]
    capacity: float
    tau: float
    prefix: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.positions)

    def pos(self, i: int) -> float:
        """Coordinate of vertex i (1-based)."""
        return self.positions[i - 1]

    def weight(self, i: int) -> float:
        return self.weights[i - 1]

    def interval_weight(self, i: int, j: int) -> float:
        """Total supply of vertices i..j inclusive, in O(1)."""
        if not (1 <= i <= j <= self.n):
            raise IndexError(f"interval ({i}, {j}) out of range for n={self.n}")
        return self.prefix[j] - self.prefix[i - 1]

    def suffix_weight(self, i: int) -> float:
        """Total supply of vertices i..n; 0 when i > n."""
        if i > self.n:
            return 0.0
        return self.prefix[self.n] - self.prefix[i - 1]

    def to_dict(self) -> dict:
        return {
            "positions": list(self.positions),
            "weights": list(self.weights),
            "capacity": self.capacity,
            "tau": self.tau,
        }


@dataclass(frozen=True)
class SinkGroup:
    """One sink's group: consecutive vertices first..last served by one sink."""

    first: int
    last: int
    sink: float
    cost: float


@dataclass(frozen=True)
class Placement:
    """A k-sink solution: sink coordinates, (k-1)-divider, and per-group data.

    Group i covers vertices ``dividers[i-1]+1 .. dividers[i]`` with the
    sentinels d_0 = 0 and d_k = n.  ``cost`` is the max over group costs for
    the minimax objective and the sum for minisum.
    """

    objective: str
    k: int
    sinks: tuple[float, ...]
    dividers: tuple[int, ...]
    cost: float
    groups: tuple[SinkGroup, ...]


def _require_number(value, field: str, index: int | None = None) -> float:
    where = f"{field}[{index}]" if index is not None else field
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInstanceError(f"{where} is not a number: {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidInstanceError(f"{where} is not finite: {value!r}")
    return value


def validate_network(raw: Mapping) -> DynamicPathNetwork:
    """Validate a parsed instance description and build the immutable network.

    Positions are normalized so the first vertex sits at coordinate 0.
    Rejections name the offending field and (1-based) index.
    """
    if isinstance(raw, DynamicPathNetwork):
        return raw
    unknown = set(raw) - _INSTANCE_KEYS
    if unknown:
        raise InvalidInstanceError(f"unknown instance keys: {sorted(unknown)}")
    missing = _INSTANCE_KEYS - set(raw)
    if missing:
        raise InvalidInstanceError(f"missing instance keys: {sorted(missing)}")

    raw_positions: Sequence = raw["positions"]
    raw_weights: Sequence = raw["weights"]
    if len(raw_positions) == 0:
        raise InvalidInstanceError("positions: empty vertex list")
    if len(raw_weights) != len(raw_positions):
        raise InvalidInstanceError(
            f"weights: length {len(raw_weights)} does not match positions length {len(raw_positions)}"
        )

    positions = [_require_number(p, "positions", i + 1) for i, p in enumerate(raw_positions)]
    weights = [_require_number(w, "weights", i + 1) for i, w in enumerate(raw_weights)]
    capacity = _require_number(raw["capacity"], "capacity")
    tau = _require_number(raw["tau"], "tau")

    origin = positions[0]
    positions = [p - origin for p in positions]
    for i in range(1, len(positions)):
        if positions[i] <= positions[i - 1]:
            if positions[i] == positions[i - 1]:
                raise InvalidInstanceError(f"zero-length edge at index {i + 1}")
            raise InvalidInstanceError(f"positions not increasing at index {i + 1}")
    for i, w in enumerate(weights):
        if w <= 0:
            raise InvalidInstanceError(f"weights[{i + 1}] must be positive, got {w}")
    if capacity <= 0:
        raise InvalidInstanceError(f"capacity must be positive, got {capacity}")
    if tau <= 0:
        raise InvalidInstanceError(f"tau must be positive, got {tau}")

    prefix = [0.0]
    for w in weights:
        prefix.append(prefix[-1] + w)
    return DynamicPathNetwork(
        positions=tuple(positions),
        weights=tuple(weights),
        capacity=capacity,
        tau=tau,
        prefix=tuple(prefix),
    )


def interval_weight(net: DynamicPathNetwork, i: int, j: int) -> float:
    return net.interval_weight(i, j)


def check_placement(net: DynamicPathNetwork, placement: Placement) -> None:
    """Raise MalformedPlacementError unless the placement fits the network."""
    n = net.n
    k = placement.k
    if k < 1 or k != len(placement.sinks):
        raise MalformedPlacementError(f"k={k} inconsistent with {len(placement.sinks)} sinks")
    if len(placement.dividers) != k - 1:
        raise MalformedPlacementError(
            f"expected {k - 1} dividers, got {len(placement.dividers)}"
        )
    bounds = (0,) + tuple(placement.dividers) + (n,)
    for i in range(1, len(bounds)):
        if bounds[i] <= bounds[i - 1]:
            raise MalformedPlacementError(f"dividers not strictly increasing at {i}")
    if bounds[-1] != n or any(not (1 <= d <= n - 1) for d in placement.dividers):
        raise MalformedPlacementError("divider out of range")
    for i, x in enumerate(placement.sinks, start=1):
        lo, hi = net.pos(bounds[i - 1] + 1), net.pos(bounds[i])
        if not (lo - 1e-12 <= x <= hi + 1e-12):
            raise MalformedPlacementError(
                f"sink {i} at {x} outside its group interval [{lo}, {hi}]"
            )
    for i in range(1, k):
        if placement.sinks[i] < placement.sinks[i - 1]:
            raise MalformedPlacementError("sinks not sorted")
