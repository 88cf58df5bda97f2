"""Domain types and the moving-distance cost model for interval collections.

An interval is a closed weighted segment described by its center.  Moving an
interval so that it covers a point x costs weight times the translation
distance; the distance is zero when the interval already contains x.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Interval",
    "Collection",
    "ShiftSolution",
    "IntersectionGraph",
    "moving_distance",
    "total_moving_distance",
    "sort_by_center",
    "kth_endpoint",
    "left_right_counts",
    "build_intersection_graph",
    "apply_shifts",
    "make_shift_solution",
]


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed segment [center - length/2, center + length/2] with a positive weight.

    The weight is the per-unit cost of translating the interval.
    """

    center: float
    length: float = 1.0
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise ValueError(f"interval length must be positive, got {self.length}")
        if not self.weight > 0:
            raise ValueError(f"interval weight must be positive, got {self.weight}")

    @property
    def left(self) -> float:
        return self.center - self.length / 2

    @property
    def right(self) -> float:
        return self.center + self.length / 2


class Collection:
    """Immutable sequence of intervals with lazily cached coordinate arrays.

    The instance is safe to share between threads once constructed; the array
    cache is idempotent, so a benign race at worst recomputes it.
    """

    __slots__ = ("items", "sorted_by_center", "_arrays")

    def __init__(self, items: Iterable[Interval]):
        self.items: tuple[Interval, ...] = tuple(items)
        self.sorted_by_center: bool = all(
            a.center <= b.center for a, b in zip(self.items, self.items[1:])
        )
        self._arrays: tuple[np.ndarray, ...] | None = None

    @classmethod
    def from_centers(
        cls,
        centers: Iterable[float],
        length: float = 1.0,
        weights: Iterable[float] | None = None,
    ) -> "Collection":
        """Build unit-length (or fixed-length) intervals from bare centers."""
        centers = list(centers)
        if weights is None:
            return cls(Interval(float(c), length) for c in centers)
        return cls(
            Interval(float(c), length, float(w)) for c, w in zip(centers, weights, strict=True)
        )

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.items)

    def __getitem__(self, i: int) -> Interval:
        return self.items[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Collection) and self.items == other.items

    def __hash__(self) -> int:
        return hash(self.items)

    def __repr__(self) -> str:
        return f"Collection({len(self.items)} intervals)"

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return (centers, lengths, weights, lefts, rights) as float64 arrays."""
        if self._arrays is None:
            centers = np.fromiter((iv.center for iv in self.items), dtype=float, count=len(self.items))
            lengths = np.fromiter((iv.length for iv in self.items), dtype=float, count=len(self.items))
            weights = np.fromiter((iv.weight for iv in self.items), dtype=float, count=len(self.items))
            half = lengths / 2
            self._arrays = (centers, lengths, weights, centers - half, centers + half)
        return self._arrays

    def endpoints(self) -> np.ndarray:
        """Endpoint multiset E as an unsorted array of 2n values (duplicates kept)."""
        _, _, _, lefts, rights = self.arrays()
        return np.concatenate([lefts, rights])

    def uniform_weight(self) -> float | None:
        """The common weight if all intervals share one, else None."""
        if not self.items:
            return None
        w = self.items[0].weight
        return w if all(iv.weight == w for iv in self.items) else None

    def uniform_length(self) -> float | None:
        """The common length if all intervals share one, else None."""
        if not self.items:
            return None
        ln = self.items[0].length
        return ln if all(iv.length == ln for iv in self.items) else None


@dataclass(frozen=True, slots=True)
class ShiftSolution:
    """Per-interval displacements plus their weighted total cost."""

    displacements: tuple[float, ...]
    total_cost: float


def make_shift_solution(collection: Collection, displacements: Sequence[float]) -> ShiftSolution:
    """Package displacements for a collection, computing the weighted L1 cost."""
    if len(displacements) != len(collection):
        raise ValueError(
            f"expected {len(collection)} displacements, got {len(displacements)}"
        )
    total = 0.0
    for iv, d in zip(collection.items, displacements):
        total += iv.weight * abs(d)
    return ShiftSolution(tuple(float(d) for d in displacements), total)


def moving_distance(interval: Interval, x: float) -> float:
    """Weighted distance to translate the interval until it contains x."""
    if x > interval.right:
        return interval.weight * (x - interval.center - interval.length / 2)
    if x < interval.left:
        return interval.weight * (interval.center - x - interval.length / 2)
    return 0.0


def total_moving_distance(collection: Collection, x: float) -> float:
    """Sum of moving distances of all intervals to the point x."""
    if not len(collection):
        raise ValueError("empty instance")
    _, _, weights, lefts, rights = collection.arrays()
    gaps = np.maximum(lefts - x, x - rights)
    return float(np.sum(weights * np.maximum(gaps, 0.0)))


def sort_by_center(collection: Collection) -> Collection:
    """Stable sort of the intervals by center."""
    if collection.sorted_by_center:
        return collection
    return Collection(sorted(collection.items, key=lambda iv: iv.center))


def kth_endpoint(collection: Collection, k: int) -> float:
    """The k-th smallest member of the endpoint multiset, 1-based."""
    pts = collection.endpoints()
    if not 1 <= k <= pts.size:
        raise IndexError(f"endpoint rank {k} out of range 1..{pts.size}")
    return float(np.partition(pts, k - 1)[k - 1])


def left_right_counts(collection: Collection, x: float) -> tuple[int, int]:
    """Counts of intervals entirely left of x and entirely right of x.

    Left means right endpoint strictly below x; right means left endpoint
    strictly above x.  An interval containing x is in neither count.
    """
    _, _, _, lefts, rights = collection.arrays()
    return int(np.count_nonzero(rights < x)), int(np.count_nonzero(lefts > x))


class IntersectionGraph:
    """Undirected graph on interval indices; vertices i and j are adjacent
    when the corresponding closed intervals share a point."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        adj: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            if i == j:
                continue
            adj[i].add(j)
            adj[j].add(i)
        self.n = n
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def neighbors(self, i: int) -> frozenset[int]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in sorted(self._adj[i]) if i < j]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntersectionGraph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"IntersectionGraph(n={self.n}, m={self.num_edges})"


def build_intersection_graph(
    collection: Collection, *, naive: bool = False, tol: float = 0.0
) -> IntersectionGraph:
    """Intersection graph of the collection.

    Two intervals are adjacent when their separation gap is at most tol.
    The default tol=0.0 gives closed-interval semantics: touching endpoints
    count as intersecting.  Negative tol demands actual overlap; positive tol
    tolerates a small gap (used by verification at eps/2).

    The default path sorts by left endpoint and scans, O(n log n + m).  The
    naive flag switches to the quadratic all-pairs check used by the oracles.
    """
    n = len(collection)
    if naive:
        edges = []
        for i in range(n):
            a = collection[i]
            for j in range(i + 1, n):
                b = collection[j]
                gap = max(a.left - b.right, b.left - a.right)
                if gap <= tol:
                    edges.append((i, j))
        return IntersectionGraph(n, edges)

    _, _, _, lefts, rights = collection.arrays()
    order = np.argsort(lefts, kind="stable")
    edges = []
    for pos in range(n):
        i = int(order[pos])
        reach = rights[i] + tol
        for qos in range(pos + 1, n):
            j = int(order[qos])
            if lefts[j] > reach:
                break
            edges.append((i, j))
    return IntersectionGraph(n, edges)


def apply_shifts(
    collection: Collection, solution: ShiftSolution | Sequence[float]
) -> Collection:
    """Translate each interval by its displacement; result is re-sorted by center.

    Accepts a ShiftSolution or a bare displacement sequence.
    """
    disp = solution.displacements if isinstance(solution, ShiftSolution) else solution
    if len(disp) != len(collection):
        raise ValueError(f"expected {len(collection)} displacements, got {len(disp)}")
    moved = [
        Interval(iv.center + d, iv.length, iv.weight)
        for iv, d in zip(collection.items, disp)
    ]
    moved.sort(key=lambda iv: iv.center)
    return Collection(moved)
