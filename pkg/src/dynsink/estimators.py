"""scikit-learn style wrappers around the functional solvers.

The locators treat X as a column of point coordinates with optional
per-point supplies; ``fit`` solves for the sink placement and ``predict``
assigns each query point to the group of the nearest fitted boundary.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .minimax import minimax_k_sink
from .minisum import minisum_k_sink
from .model import validate_network


class _BaseSinkLocator(BaseEstimator):
    _objective: str

    def __init__(self, k: int = 1, capacity: float = 1.0, tau: float = 1.0) -> None:
        self.k = k
        self.capacity = capacity
        self.tau = tau

    def _solve(self, net):
        if self._objective == "minimax":
            return minimax_k_sink(net, self.k)
        return minisum_k_sink(net, self.k)

    def fit(self, X, y=None, sample_weight=None):
        """Fit sink locations to the points in X (shape (n, 1) or (n,)).

        ``sample_weight`` carries the per-point supplies; weights default
        to 1.  Duplicate coordinates are merged, summing their supplies.
        """
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"X must have a single column, got shape {X.shape}")
            X = X[:, 0]
        if X.ndim != 1 or X.size == 0:
            raise ValueError("X must be a nonempty 1-d array of coordinates")
        if sample_weight is None:
            sample_weight = np.ones_like(X)
        sample_weight = np.asarray(sample_weight, dtype=float)
        if sample_weight.shape != X.shape:
            raise ValueError("sample_weight must match X in length")

        order = np.argsort(X, kind="stable")
        xs = X[order]
        ws = sample_weight[order]
        positions: list[float] = []
        weights: list[float] = []
        for x, w in zip(xs, ws):
            if positions and x == positions[-1]:
                weights[-1] += w
            else:
                positions.append(float(x))
                weights.append(float(w))

        self.offset_ = positions[0]
        net = validate_network(
            {
                "positions": positions,
                "weights": weights,
                "capacity": self.capacity,
                "tau": self.tau,
            }
        )
        placement = self._solve(net)
        self.placement_ = placement
        self.sinks_ = np.array(placement.sinks) + self.offset_
        self.dividers_ = np.array(placement.dividers, dtype=int)
        self.cost_ = placement.cost
        # group boundaries sit between a divider vertex and its successor
        divs = self.dividers_
        self.boundaries_ = np.array(
            [(net.pos(d) + net.pos(d + 1)) / 2.0 + self.offset_ for d in divs]
        )
        return self

    def predict(self, X):
        """Group index (0..k-1) of each query coordinate."""
        if not hasattr(self, "boundaries_"):
            raise RuntimeError("fit must be called before predict")
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            X = X[:, 0]
        return np.searchsorted(self.boundaries_, X, side="right")

    def fit_predict(self, X, y=None, sample_weight=None):
        return self.fit(X, y, sample_weight=sample_weight).predict(X)


class MinimaxSinkLocator(_BaseSinkLocator):
    """Places k sinks minimizing the latest evacuation completion time."""

    _objective = "minimax"


class MinisumSinkLocator(_BaseSinkLocator):
    """Places k sinks minimizing the total evacuation completion time."""

    _objective = "minisum"
