"""Optimal k-sink evacuation placement on dynamic path networks.

Supplies on a path evacuate toward sinks under a uniform capacity limit;
this package computes optimal sink locations for the minimax (latest
completion time) and minisum (total completion time) objectives, plus
brute-force reference oracles for certification.
"""

from .clusters import (
    LeftClusterStructure,
    RightClusterStructure,
    build_left,
    build_right,
)
from .estimators import MinimaxSinkLocator, MinisumSinkLocator
from .minimax import (
    MinimaxSolver,
    evaluate_minimax,
    minimax_k_sink,
    one_sink_interval,
)
from .minisum import (
    MongeWeightOracle,
    evaluate_minisum,
    minisum_k_sink,
    one_sink_minisum,
    sweep_sum_left,
    sweep_sum_right,
)
from .model import (
    DEFAULT_REL_TOL,
    DynamicPathNetwork,
    InvalidInstanceError,
    MalformedPlacementError,
    Placement,
    SinkGroup,
    validate_network,
)

__all__ = [
    "DEFAULT_REL_TOL",
    "DynamicPathNetwork",
    "InvalidInstanceError",
    "LeftClusterStructure",
    "MalformedPlacementError",
    "MinimaxSinkLocator",
    "MinimaxSolver",
    "MinisumSinkLocator",
    "MongeWeightOracle",
    "Placement",
    "RightClusterStructure",
    "SinkGroup",
    "build_left",
    "build_right",
    "evaluate_minimax",
    "evaluate_minisum",
    "minimax_k_sink",
    "minisum_k_sink",
    "one_sink_interval",
    "one_sink_minisum",
    "sweep_sum_left",
    "sweep_sum_right",
    "validate_network",
]

__version__ = "0.1.0"
