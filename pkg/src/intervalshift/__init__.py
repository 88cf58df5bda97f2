"""Minimum-displacement interval shifting.

Given weighted intervals on a line (or unit squares in the plane), compute
shifts of minimum total weighted displacement so the intersection graph gains
or loses a target structure: a common point, a k-clique, edges, cycles, or
k-connectivity.
"""

from .core import (
    Collection,
    Interval,
    IntersectionGraph,
    ShiftSolution,
    apply_shifts,
    build_intersection_graph,
    kth_endpoint,
    left_right_counts,
    make_shift_solution,
    moving_distance,
    sort_by_center,
    total_moving_distance,
)
from .gather import (
    GatherResult,
    find_optimal_gathering_point,
    gathering_shifts,
    uniform_slope_gathering_point,
)
from .kclique import (
    CliqueResult,
    EndpointIndex,
    solve_kclique,
    update_same_window,
    update_shift_window,
)
from .lp import (
    LinearProgram,
    PropertySpec,
    abs_value_transform,
    build_acyclic_lp,
    build_edgeless_lp,
    build_kconnected_lp,
    build_no_kclique_lp,
    solve_lp,
    solve_property,
    to_lp_text,
)
from .oracle import (
    PropertyReport,
    check_property,
    grid_search_lp,
    max_point_overlap,
    oracle_gathering,
    oracle_kclique_full,
    oracle_kclique_windows,
    oracle_squares,
    verify_shifted_property,
)
from .selection import select
from .squares import (
    SquareGatherResult,
    UnitSquare,
    axis_collections,
    find_optimal_gathering_point_l1,
    square_moving_distance,
    total_square_moving_distance,
)

__version__ = "1.0.0"

__all__ = [
    "Collection",
    "Interval",
    "IntersectionGraph",
    "ShiftSolution",
    "apply_shifts",
    "build_intersection_graph",
    "kth_endpoint",
    "left_right_counts",
    "make_shift_solution",
    "moving_distance",
    "sort_by_center",
    "total_moving_distance",
    "GatherResult",
    "find_optimal_gathering_point",
    "gathering_shifts",
    "uniform_slope_gathering_point",
    "CliqueResult",
    "EndpointIndex",
    "solve_kclique",
    "update_same_window",
    "update_shift_window",
    "LinearProgram",
    "PropertySpec",
    "abs_value_transform",
    "build_acyclic_lp",
    "build_edgeless_lp",
    "build_kconnected_lp",
    "build_no_kclique_lp",
    "solve_lp",
    "solve_property",
    "to_lp_text",
    "PropertyReport",
    "check_property",
    "grid_search_lp",
    "max_point_overlap",
    "oracle_gathering",
    "oracle_kclique_full",
    "oracle_kclique_windows",
    "oracle_squares",
    "verify_shifted_property",
    "select",
    "SquareGatherResult",
    "UnitSquare",
    "axis_collections",
    "find_optimal_gathering_point_l1",
    "square_moving_distance",
    "total_square_moving_distance",
    "__version__",
]
