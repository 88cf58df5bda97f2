"""Cheapest shift creating a k-clique among uniform-length intervals.

Sorted by center, some k consecutive intervals admit an optimal solution: a
shorter-than-unit spread window could otherwise be swapped in for cheaper.
The solver slides a window of k intervals left to right and maintains the
window's gathering cost incrementally.  For a window of k intervals the k-th
and (k+1)-th smallest endpoints are both optimal gathering points; the cost
carried between windows is anchored at the old (k+1)-th endpoint, updated by
counting how many window members lie strictly left/right of the anchor points
plus the moving distances of the interval entering and the interval leaving.

Endpoint ranks come from a pair of prefix-count trees over the globally
sorted endpoint values, giving O(log n) select and rank and O(n log n) total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Collection, ShiftSolution

__all__ = [
    "CliqueResult",
    "EndpointIndex",
    "update_same_window",
    "update_shift_window",
    "solve_kclique",
]


@dataclass(frozen=True, slots=True)
class CliqueResult:
    """Best window (1-based start in center-sorted order), point, cost, shifts."""

    window_start: int
    point: float
    cost: float
    shifts: ShiftSolution


class _PrefixCounts:
    """Fenwick tree of multiplicities over compressed coordinates."""

    __slots__ = ("size", "tree")

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, idx: int, delta: int) -> None:
        i = idx + 1
        tree = self.tree
        size = self.size
        while i <= size:
            tree[i] += delta
            i += i & -i

    def count_below(self, idx: int) -> int:
        """Number of stored values with compressed coordinate < idx."""
        i = idx
        tree = self.tree
        total = 0
        while i > 0:
            total += tree[i]
            i -= i & -i
        return total


class EndpointIndex:
    """Order statistics over the endpoint multiset of the active window.

    Left and right endpoints are tracked separately so that rank queries can
    report how many window intervals lie entirely left or entirely right of a
    point, matching left_right_counts restricted to the window.
    """

    def __init__(self, values: Sequence[float] | np.ndarray):
        coords = np.unique(np.asarray(values, dtype=float))
        self._coords = coords
        self._lefts = _PrefixCounts(coords.size)
        self._rights = _PrefixCounts(coords.size)
        self._count = 0
        # highest power of two not above the coordinate count, for select
        self._top = 1
        while self._top * 2 <= coords.size:
            self._top *= 2

    def _coord(self, value: float) -> int:
        idx = int(np.searchsorted(self._coords, value))
        if idx >= self._coords.size or self._coords[idx] != value:
            raise KeyError(f"value {value!r} not in the endpoint universe")
        return idx

    def __len__(self) -> int:
        return self._count

    def insert(self, left: float, right: float) -> None:
        """Add one interval's endpoints to the window."""
        self._lefts.add(self._coord(left), 1)
        self._rights.add(self._coord(right), 1)
        self._count += 2

    def delete(self, left: float, right: float) -> None:
        """Remove one interval's endpoints from the window."""
        self._lefts.add(self._coord(left), -1)
        self._rights.add(self._coord(right), -1)
        self._count -= 2

    def select(self, k: int) -> float:
        """The k-th smallest endpoint of the window, 1-based."""
        if not 1 <= k <= self._count:
            raise IndexError(f"endpoint rank {k} out of range 1..{self._count}")
        lt = self._lefts.tree
        rt = self._rights.tree
        idx = 0
        rem = k
        bit = self._top
        while bit:
            nxt = idx + bit
            if nxt <= self._lefts.size:
                have = lt[nxt] + rt[nxt]
                if have < rem:
                    rem -= have
                    idx = nxt
            bit >>= 1
        return float(self._coords[idx])

    def rank(self, x: float) -> tuple[int, int]:
        """(intervals entirely left of x, intervals entirely right of x).

        Entirely left means right endpoint < x; entirely right means left
        endpoint > x.  Both comparisons are strict.
        """
        coords = self._coords
        below = int(np.searchsorted(coords, x, side="left"))
        at_or_below = int(np.searchsorted(coords, x, side="right"))
        n_left = self._rights.count_below(below)
        n_intervals = self._count // 2
        n_right = n_intervals - self._lefts.count_below(at_or_below)
        return n_left, n_right

    def count_strictly_between(self, a: float, b: float) -> int:
        """Endpoints of the window with value in the open range (a, b)."""
        if a > b:
            a, b = b, a
        coords = self._coords
        lo = int(np.searchsorted(coords, a, side="right"))
        hi = int(np.searchsorted(coords, b, side="left"))
        if hi <= lo:
            return 0
        return (
            self._lefts.count_below(hi)
            - self._lefts.count_below(lo)
            + self._rights.count_below(hi)
            - self._rights.count_below(lo)
        )


def update_same_window(
    d_at_lower: float,
    x_lower: float,
    x_upper: float,
    left_count: int,
    right_count: int,
) -> float:
    """Cost at a higher point of the same window from the cost at a lower one.

    left_count is the number of window intervals entirely left of x_upper;
    right_count is the number entirely right of x_lower.  Valid when no window
    endpoint lies strictly between the two points.
    """
    return d_at_lower + (x_upper - x_lower) * (left_count - right_count)


def update_shift_window(
    d_prev: float,
    x_prev: float,
    x_new: float,
    left_at_prev: int,
    right_at_prev: int,
    left_at_new: int,
    right_at_new: int,
    d_out: float,
    d_in: float,
) -> float:
    """Cost of the shifted window at x_new from the old window's cost at x_prev.

    The counts are taken on the new window.  d_out and d_in are the moving
    distances of the departing and arriving intervals, both measured at
    x_prev.  Valid when the union of the old window and the arriving interval
    has no endpoint strictly between x_prev and x_new.
    """
    delta = abs(x_new - x_prev)
    if x_new >= x_prev:
        return d_prev + delta * (left_at_new - right_at_prev) + d_in - d_out
    return d_prev + delta * (right_at_new - left_at_prev) + d_in - d_out


def _unit_distance(left: float, right: float, x: float) -> float:
    return max(left - x, x - right, 0.0)


def solve_kclique(
    collection: Collection, k: int, *, validate: bool = False
) -> CliqueResult:
    """Minimum-cost shifts so that the intersection graph contains a k-clique.

    Requires uniform weights and uniform lengths.  With validate=True every
    incremental cost is checked against a from-scratch recomputation and the
    no-endpoint-between condition of the update rules is asserted.
    """
    n = len(collection)
    if not len(collection):
        raise ValueError("empty instance")
    if not 1 <= k <= n:
        raise ValueError(f"clique size {k} out of range 1..{n}")
    weight = collection.uniform_weight()
    if weight is None:
        raise ValueError("requires unique moving distance function")
    if collection.uniform_length() is None:
        raise ValueError("requires intervals of one common length")

    centers, lengths, _, _, _ = collection.arrays()
    order = np.argsort(centers, kind="stable")
    half = lengths[0] / 2
    c_sorted = centers[order]
    lefts = c_sorted - half
    rights = c_sorted + half

    index = EndpointIndex(np.concatenate([lefts, rights]))
    for j in range(k):
        index.insert(float(lefts[j]), float(rights[j]))

    def scratch(start: int, x: float) -> float:
        gaps = np.maximum(np.maximum(lefts[start : start + k] - x, x - rights[start : start + k]), 0.0)
        return float(np.sum(gaps))

    x_k = index.select(k)
    x_k1 = index.select(k + 1)
    d_k = scratch(0, x_k)
    l_at_upper, _ = index.rank(x_k1)
    _, r_at_lower = index.rank(x_k)
    d_k1 = update_same_window(d_k, x_k, x_k1, l_at_upper, r_at_lower)
    if validate:
        assert abs(d_k1 - scratch(0, x_k1)) <= 1e-9
        assert abs(d_k - d_k1) <= 1e-9  # both endpoints are optimal

    best_start = 0
    best_point = x_k if d_k <= d_k1 else x_k1
    best_cost = min(d_k, d_k1)

    carry_x = x_k1
    carry_d = d_k1
    for start in range(1, n - k + 1):
        out_i = start - 1
        in_i = start + k - 1
        out_l, out_r = float(lefts[out_i]), float(rights[out_i])
        in_l, in_r = float(lefts[in_i]), float(rights[in_i])
        d_out = _unit_distance(out_l, out_r, carry_x)
        d_in = _unit_distance(in_l, in_r, carry_x)
        index.delete(out_l, out_r)
        index.insert(in_l, in_r)

        x_new = index.select(k)
        l_new, r_new = index.rank(x_new)
        l_prev, r_prev = index.rank(carry_x)
        d_new = update_shift_window(
            carry_d, carry_x, x_new, l_prev, r_prev, l_new, r_new, d_out, d_in
        )
        if validate:
            between = index.count_strictly_between(carry_x, x_new)
            lo_pt, hi_pt = min(carry_x, x_new), max(carry_x, x_new)
            if lo_pt < out_l < hi_pt:
                between += 1
            if lo_pt < out_r < hi_pt:
                between += 1
            assert between == 0, "endpoint strictly between update anchors"
            assert abs(d_new - scratch(start, x_new)) <= 1e-9

        x_next = index.select(k + 1)
        l_upper, _ = index.rank(x_next)
        _, r_lower = index.rank(x_new)
        d_next = update_same_window(d_new, x_new, x_next, l_upper, r_lower)
        if validate:
            assert abs(d_next - scratch(start, x_next)) <= 1e-9
            assert abs(d_new - d_next) <= 1e-9

        cost_here = min(d_new, d_next)
        if cost_here < best_cost:
            best_cost = cost_here
            best_start = start
            best_point = x_new if d_new <= d_next else x_next

        carry_x = x_next
        carry_d = d_next

    # expand to per-interval shifts in the input order
    disp = np.zeros(n)
    for j in range(best_start, best_start + k):
        orig = int(order[j])
        if rights[j] < best_point:
            disp[orig] = best_point - rights[j]
        elif lefts[j] > best_point:
            disp[orig] = best_point - lefts[j]
    total = weight * scratch(best_start, best_point)
    shifts = ShiftSolution(tuple(disp.tolist()), total)
    return CliqueResult(best_start + 1, best_point, total, shifts)
