"""Light-weight bounded-degree spanners of unit ball graphs.

Centralized constructions, LOCAL/CONGEST round-based protocols on a
synchronous simulator, exact verification oracles, and an experiment CLI.
"""

from .metric import (
    EUCLIDEAN,
    Point,
    PointSet,
    distance,
    generate_uniform_square,
    packing_bound,
)
from .graph import (
    EdgeList,
    UnitBallGraph,
    build_ubg,
    k_hop_neighborhood,
    mst_weight,
    segments_properly_cross,
    shortest_path_distance,
    threshold_subgraph,
)
from .spanner import (
    ReplacementRegistry,
    Spanner,
    base_spanner,
    centralized_euclidean_spanner,
    centralized_spanner,
    naive_greedy,
    refine,
)
from .netsim import Model, RoundTrace, W_MAX
from .protocols import (
    CONGEST_OVERHEAD,
    MISResult,
    ProtocolResult,
    congest_spanner,
    distributed_euclidean_spanner,
    distributed_mis,
    distributed_spanner,
    local_mis_greedy,
    span_long_edges,
    span_short_edges,
)
from .verify import (
    Report,
    check_stretch,
    covering_check,
    crossing_report,
    degree_report,
    efficiency,
    lightness,
    replacement_packing_check,
)
from .harness import ExperimentConfig, replay, run_experiment

__all__ = [
    "EUCLIDEAN",
    "Point",
    "PointSet",
    "distance",
    "generate_uniform_square",
    "packing_bound",
    "EdgeList",
    "UnitBallGraph",
    "build_ubg",
    "k_hop_neighborhood",
    "mst_weight",
    "segments_properly_cross",
    "shortest_path_distance",
    "threshold_subgraph",
    "ReplacementRegistry",
    "Spanner",
    "base_spanner",
    "centralized_euclidean_spanner",
    "centralized_spanner",
    "naive_greedy",
    "refine",
    "Model",
    "RoundTrace",
    "W_MAX",
    "CONGEST_OVERHEAD",
    "MISResult",
    "ProtocolResult",
    "congest_spanner",
    "distributed_euclidean_spanner",
    "distributed_mis",
    "distributed_spanner",
    "local_mis_greedy",
    "span_long_edges",
    "span_short_edges",
    "Report",
    "check_stretch",
    "covering_check",
    "crossing_report",
    "degree_report",
    "efficiency",
    "lightness",
    "replacement_packing_check",
    "ExperimentConfig",
    "replay",
    "run_experiment",
]
