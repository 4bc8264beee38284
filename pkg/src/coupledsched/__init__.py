"""Scheduling of stretched coupled-tasks under compatibility constraints."""

__version__ = "0.1.0"

from .approx import ApproxSolution, NormalizedInstance, approx_solve, build_network, normalize
from .errors import (
    CoupledSchedError,
    IncompleteScheduleError,
    InvalidParameterError,
    InvalidPartitionError,
    InvalidSourceError,
    ParseError,
    SizeLimitError,
    UnsupportedInstanceError,
    UnsupportedTaskShapeError,
)
from .exact import Decomposition, ExactSolution, exact_optimum, timeline_oracle
from .generators import (
    ThreeDMInstance,
    ThreeDMTarget,
    TripartiteGraph,
    brute_3dm,
    brute_pit,
    gen_3dm,
    gen_pit,
    gen_random_quasi_split,
    gen_tightness,
    random_3dm2,
    random_tripartite,
)
from .graphalg import FlowNetwork, FlowResult, MatchingResult, brute_matching, max_flow, max_matching
from .model import (
    ClassReport,
    CompatibilityGraph,
    CoupledTask,
    Instance,
    Schedule,
    Violation,
    classify,
    compatibility_kind,
    makespan,
    new_stretched,
    task_span,
    validate,
)

__all__ = [
    "__version__",
    "ApproxSolution",
    "ClassReport",
    "CompatibilityGraph",
    "CoupledSchedError",
    "CoupledTask",
    "Decomposition",
    "ExactSolution",
    "FlowNetwork",
    "FlowResult",
    "IncompleteScheduleError",
    "Instance",
    "InvalidParameterError",
    "InvalidPartitionError",
    "InvalidSourceError",
    "MatchingResult",
    "NormalizedInstance",
    "ParseError",
    "Schedule",
    "SizeLimitError",
    "ThreeDMInstance",
    "ThreeDMTarget",
    "TripartiteGraph",
    "UnsupportedInstanceError",
    "UnsupportedTaskShapeError",
    "Violation",
    "approx_solve",
    "brute_3dm",
    "brute_matching",
    "brute_pit",
    "build_network",
    "classify",
    "compatibility_kind",
    "exact_optimum",
    "gen_3dm",
    "gen_pit",
    "gen_random_quasi_split",
    "gen_tightness",
    "makespan",
    "max_flow",
    "max_matching",
    "new_stretched",
    "normalize",
    "random_3dm2",
    "random_tripartite",
    "task_span",
    "timeline_oracle",
    "validate",
]
