"""Gathering point for axis-parallel unit squares under the L1 norm.

The L1 moving distance of a square to a point splits into independent x and y
terms, each the moving distance of a unit interval, so the planar problem is
solved as two one-dimensional instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Collection, Interval, ShiftSolution
from .gather import GatherResult, find_optimal_gathering_point

__all__ = [
    "UnitSquare",
    "SquareGatherResult",
    "square_moving_distance",
    "total_square_moving_distance",
    "find_optimal_gathering_point_l1",
    "axis_collections",
]


@dataclass(frozen=True, slots=True)
class UnitSquare:
    """Axis-parallel unit square centered at (x, y) with a positive weight."""

    x: float
    y: float
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.weight > 0:
            raise ValueError(f"square weight must be positive, got {self.weight}")


@dataclass(frozen=True, slots=True)
class SquareGatherResult:
    """Planar optimum point, per-axis optimum ranges, cost, and 2D shifts."""

    point: tuple[float, float]
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    cost: float
    shifts: tuple[tuple[float, float], ...]


def square_moving_distance(square: UnitSquare, p: tuple[float, float]) -> float:
    """Weighted L1 distance to translate the square until it covers p."""
    dx = max(abs(square.x - p[0]) - 0.5, 0.0)
    dy = max(abs(square.y - p[1]) - 0.5, 0.0)
    return square.weight * (dx + dy)


def axis_collections(squares: list[UnitSquare]) -> tuple[Collection, Collection]:
    """Project squares onto the axes as two unit-interval collections.

    Weights are carried into both projections.
    """
    xs = Collection(Interval(s.x, 1.0, s.weight) for s in squares)
    ys = Collection(Interval(s.y, 1.0, s.weight) for s in squares)
    return xs, ys


def find_optimal_gathering_point_l1(
    squares: list[UnitSquare], *, method: str = "median_of_medians"
) -> SquareGatherResult:
    """Minimize the total L1 moving distance over all gathering points.

    Solves the x and y projections independently; any pair of per-axis optima
    is a planar optimum.  The reported point is (x_lo, y_lo).
    """
    if not squares:
        raise ValueError("empty instance")
    xs, ys = axis_collections(squares)
    rx: GatherResult = find_optimal_gathering_point(xs, method=method)
    ry: GatherResult = find_optimal_gathering_point(ys, method=method)
    shifts = tuple(
        (dx, dy) for dx, dy in zip(rx.shifts.displacements, ry.shifts.displacements)
    )
    return SquareGatherResult(
        point=(rx.point_lo, ry.point_lo),
        x_range=(rx.point_lo, rx.point_hi),
        y_range=(ry.point_lo, ry.point_hi),
        cost=rx.cost + ry.cost,
        shifts=shifts,
    )


def total_square_moving_distance(squares: list[UnitSquare], p: tuple[float, float]) -> float:
    """Sum of L1 moving distances of all squares to the point p."""
    if not squares:
        raise ValueError("empty instance")
    cx = np.array([s.x for s in squares])
    cy = np.array([s.y for s in squares])
    w = np.array([s.weight for s in squares])
    dx = np.maximum(np.abs(cx - p[0]) - 0.5, 0.0)
    dy = np.maximum(np.abs(cy - p[1]) - 0.5, 0.0)
    return float(np.sum(w * (dx + dy)))
