"""Top-k selection on the Cartesian sum X+Y using layer-ordered heaps."""
from .baselines import all_corners, naive_select, simplified_select
from .errors import (
    AgreementError,
    InvalidConfigError,
    InvalidInputError,
    OutOfRangeError,
    SelectionError,
)
from .linear_select import Partitioned, kth_smallest_value, select_k_smallest
from .loh import Loh, LohConfig, layer_max, layer_min, layer_sizes, lohify
from .pairwise_select import (
    CornerTuple,
    FrontierState,
    SelectionResult,
    SelectionTrace,
    phase1_expand,
    run_phase1,
    run_phase2,
    run_phase3,
    select_cartesian_k,
    select_from_lohs,
)

__all__ = [
    "AgreementError",
    "CornerTuple",
    "FrontierState",
    "InvalidConfigError",
    "InvalidInputError",
    "Loh",
    "LohConfig",
    "OutOfRangeError",
    "Partitioned",
    "SelectionError",
    "SelectionResult",
    "SelectionTrace",
    "all_corners",
    "kth_smallest_value",
    "layer_max",
    "layer_min",
    "layer_sizes",
    "lohify",
    "naive_select",
    "phase1_expand",
    "run_phase1",
    "run_phase2",
    "run_phase3",
    "select_cartesian_k",
    "select_from_lohs",
    "select_k_smallest",
    "simplified_select",
]
