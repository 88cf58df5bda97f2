"""Optimal gathering point for weighted intervals in worst-case linear time.

The total moving distance D(x) is convex and piecewise linear with breakpoints
only at interval endpoints, so some endpoint is optimal.  The solver keeps a
shrinking window [lo, hi] of candidate endpoints: it probes the median of the
endpoints still inside the window, compares D there against the nearest
breakpoints on either side, and discards the half of the window that convexity
rules out.  Intervals that fall entirely outside the window are folded into
constant-plus-linear accumulators, so each round costs time proportional to
the surviving window and the rounds sum to O(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Collection, ShiftSolution, total_moving_distance
from .selection import select

__all__ = [
    "GatherResult",
    "gathering_shifts",
    "find_optimal_gathering_point",
    "uniform_slope_gathering_point",
]

# two endpoint costs closer than this are treated as one flat optimum segment
FLAT_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class GatherResult:
    """Optimal gathering segment [point_lo, point_hi], its cost, and shifts."""

    point_lo: float
    point_hi: float
    cost: float
    shifts: ShiftSolution


def gathering_shifts(collection: Collection, x: float) -> ShiftSolution:
    """Smallest per-interval displacements that make every interval contain x."""
    if not len(collection):
        raise ValueError("empty instance")
    _, _, weights, lefts, rights = collection.arrays()
    disp = np.where(rights < x, x - rights, np.where(lefts > x, x - lefts, 0.0))
    total = float(np.sum(weights * np.abs(disp)))
    return ShiftSolution(tuple(disp.tolist()), total)


def _merge_duplicates(
    centers: np.ndarray, lengths: np.ndarray, weights: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Collapse intervals that share center and length, summing their weights.

    Duplicates contribute identical breakpoints; collapsing them keeps the
    candidate endpoint multiset small.  Grouping is one lexicographic sort;
    the endpoint search that follows stays linear.
    """
    order = np.lexsort((lengths, centers))
    sc, sl, sw = centers[order], lengths[order], weights[order]
    fresh = np.empty(sc.size, dtype=bool)
    fresh[0] = True
    np.logical_or(sc[1:] != sc[:-1], sl[1:] != sl[:-1], out=fresh[1:])
    if fresh.all():
        return centers, lengths, weights
    starts = np.flatnonzero(fresh)
    return sc[starts], sl[starts], np.add.reduceat(sw, starts)


def _locate_optimal_endpoint(
    lefts: np.ndarray, rights: np.ndarray, weights: np.ndarray, method: str
) -> float:
    """Windowed median search for an endpoint minimizing D."""
    lo = float(lefts.min())
    hi = float(rights.max())
    # accumulated cost and weight of intervals strictly left/right of the window
    acc_dl = 0.0
    acc_wl = 0.0
    acc_dr = 0.0
    acc_wr = 0.0
    m_l, m_r, m_w = lefts, rights, weights

    def cost_at(x: float) -> float:
        inner = np.maximum(np.maximum(m_l - x, x - m_r), 0.0)
        return (
            acc_dl + acc_wl * (x - lo) + acc_dr + acc_wr * (hi - x) + float(np.sum(m_w * inner))
        )

    while True:
        in_l = (m_l >= lo) & (m_l <= hi)
        in_r = (m_r >= lo) & (m_r <= hi)
        pts = np.concatenate([m_l[in_l], m_r[in_r]])

        if pts.size == 0:
            # no breakpoints left: D is linear on [lo, hi]
            return lo if cost_at(lo) <= cost_at(hi) else hi

        x = select(pts, (pts.size - 1) // 2, method=method)
        below = pts[pts < x]
        above = pts[pts > x]
        # window bounds are endpoint values too; intervals spanning the whole
        # window get dropped below, so the bound may be the nearest breakpoint
        e_minus = float(below.max()) if below.size else (lo if lo < x else None)
        e_plus = float(above.min()) if above.size else (hi if hi > x else None)

        d_x = cost_at(x)
        if e_minus is not None and cost_at(e_minus) < d_x:
            new_lo, new_hi = lo, e_minus
        elif e_plus is not None and cost_at(e_plus) < d_x:
            new_lo, new_hi = e_plus, hi
        else:
            return x

        # fold intervals that left the window into the linear accumulators
        out_left = m_r < new_lo
        if np.any(out_left):
            acc_dl += acc_wl * (new_lo - lo)
            acc_dl += float(np.sum(m_w[out_left] * (new_lo - m_r[out_left])))
            acc_wl += float(np.sum(m_w[out_left]))
        elif new_lo != lo:
            acc_dl += acc_wl * (new_lo - lo)
        out_right = m_l > new_hi
        if np.any(out_right):
            acc_dr += acc_wr * (hi - new_hi)
            acc_dr += float(np.sum(m_w[out_right] * (m_l[out_right] - new_hi)))
            acc_wr += float(np.sum(m_w[out_right]))
        elif new_hi != hi:
            acc_dr += acc_wr * (hi - new_hi)
        # intervals covering the whole window cost zero anywhere inside it
        spans = (m_l <= new_lo) & (m_r >= new_hi)
        keep = ~(out_left | out_right | spans)
        m_l, m_r, m_w = m_l[keep], m_r[keep], m_w[keep]
        lo, hi = new_lo, new_hi


def find_optimal_gathering_point(
    collection: Collection, *, method: str = "median_of_medians"
) -> GatherResult:
    """Minimize the total moving distance over all gathering points.

    Returns the full flat segment of optima.  `method` picks the pivot rule of
    the internal rank selection: "median_of_medians" is deterministic with a
    worst-case linear bound, "random_pivot" is expected linear and usually
    faster in practice.
    """
    if not len(collection):
        raise ValueError("empty instance")
    centers, lengths, weights, _, _ = collection.arrays()
    mc, ml, mw = _merge_duplicates(centers, lengths, weights)
    half = ml / 2
    lefts = mc - half
    rights = mc + half

    x = _locate_optimal_endpoint(lefts, rights, mw, method)

    def direct(pt: float) -> float:
        inner = np.maximum(np.maximum(lefts - pt, pt - rights), 0.0)
        return float(np.sum(mw * inner))

    cost = direct(x)
    # the optimum segment ends at the nearest breakpoints; D has a strictly
    # positive slope jump at every endpoint value, so at most one side is flat
    pts = np.concatenate([lefts, rights])
    below = pts[pts < x]
    above = pts[pts > x]
    point_lo = point_hi = x
    if below.size:
        e_minus = float(below.max())
        if abs(direct(e_minus) - cost) <= FLAT_TOL:
            point_lo = e_minus
    if point_lo == x and above.size:
        e_plus = float(above.min())
        if abs(direct(e_plus) - cost) <= FLAT_TOL:
            point_hi = e_plus

    shifts = gathering_shifts(collection, point_lo)
    return GatherResult(point_lo, point_hi, shifts.total_cost, shifts)


def uniform_slope_gathering_point(collection: Collection) -> GatherResult:
    """Shortcut for uniformly weighted intervals.

    With a single moving-distance slope, D falls by one slope unit at each of
    the first n endpoints and rises afterwards, so the segment between the
    n-th and (n+1)-th smallest endpoints is exactly the optimum.
    """
    if not len(collection):
        raise ValueError("empty instance")
    if collection.uniform_weight() is None:
        raise ValueError("requires unique moving distance function")
    n = len(collection)
    pts = collection.endpoints()
    x_n = select(pts, n - 1)
    x_n1 = select(pts, n)
    shifts = gathering_shifts(collection, x_n)
    return GatherResult(x_n, x_n1, shifts.total_cost, shifts)
