"""Incremental maximum arborescence forests with recourse instrumentation."""

from .arrivals import (ArcSequence, bidirected_path_adversary,
                       phase_split_index, uniform_random_sequence)
from .engine import (EngineInvariantError, IncrementalForest, RecourseTrace,
                     StepRecord, VerifyLevel, run_sequence)
from .forest import (ArborescenceForest, FeasiblePath, ForestInvariantError,
                     find_feasible_path, path_update, validate_arc_set)
from .graph import Digraph, SccDecomposition
from .kernels import backend_name
from .mincost import (CertificationError, CertifiedArborescence, DualPacking,
                      TriangleInstance, WeightedDigraph, chu_liu_edmonds,
                      incremental_recourse, min_arborescence_with_certificate,
                      triangle_adversary, verify_dual_certificate)
from .oracle import (brute_force_count_maximum, brute_force_max_forest,
                     is_maximum, max_forest_cardinality)

__version__ = "0.1.0"

__all__ = [
    "ArcSequence", "ArborescenceForest", "CertificationError",
    "CertifiedArborescence", "Digraph", "DualPacking",
    "EngineInvariantError", "FeasiblePath", "ForestInvariantError",
    "IncrementalForest", "RecourseTrace", "SccDecomposition", "StepRecord",
    "TriangleInstance", "VerifyLevel", "WeightedDigraph", "backend_name",
    "bidirected_path_adversary", "brute_force_count_maximum",
    "brute_force_max_forest", "chu_liu_edmonds", "find_feasible_path",
    "incremental_recourse", "is_maximum", "max_forest_cardinality",
    "min_arborescence_with_certificate", "path_update", "phase_split_index",
    "run_sequence", "triangle_adversary", "uniform_random_sequence",
    "validate_arc_set", "verify_dual_certificate",
]
