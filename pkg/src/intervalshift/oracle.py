"""Brute-force reference oracles and graph property checkers.

Everything here favors directness over speed: costs are evaluated straight
from the definitions, candidate sets are enumerated exhaustively, and nothing
is shared with the incremental solvers, so agreement between the two routes
is meaningful evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    Collection,
    Interval,
    IntersectionGraph,
    build_intersection_graph,
)
from .lp import PropertySpec
from .squares import UnitSquare, total_square_moving_distance

__all__ = [
    "PropertyReport",
    "oracle_gathering",
    "oracle_squares",
    "oracle_kclique_full",
    "oracle_kclique_windows",
    "max_point_overlap",
    "check_property",
    "verify_shifted_property",
    "grid_search_lp",
]

FULL_ORACLE_CAP = 12
GRID_ORACLE_CAP = 4
# strictly-negative gap demanded by the grid oracle: touching endpoints from
# exact grid arithmetic do not count as overlap there
STRICT_TOL = -1e-9


@dataclass(frozen=True, slots=True)
class PropertyReport:
    """Outcome of a property check with a certificate where one exists."""

    name: str
    holds: bool
    witness: tuple | None = None


def oracle_gathering(collection: Collection) -> tuple[float, float]:
    """(point, cost) minimizing total moving distance, by trying every endpoint."""
    if not len(collection):
        raise ValueError("empty instance")
    _, _, weights, lefts, rights = collection.arrays()
    pts = np.concatenate([lefts, rights])
    gaps = np.maximum(
        np.maximum(lefts[None, :] - pts[:, None], pts[:, None] - rights[None, :]), 0.0
    )
    costs = gaps @ weights
    idx = int(np.lexsort((pts, costs))[0])
    return float(pts[idx]), float(costs[idx])


def oracle_squares(squares: list[UnitSquare]) -> tuple[tuple[float, float], float]:
    """(point, cost) minimizing total L1 moving distance over the candidate grid.

    Candidates are all pairs of square x-edges and y-edges; every grid point is
    evaluated with the planar definition directly.
    """
    if not squares:
        raise ValueError("empty instance")
    cx = np.array([s.x for s in squares])
    cy = np.array([s.y for s in squares])
    w = np.array([s.weight for s in squares])
    px = np.concatenate([cx - 0.5, cx + 0.5])
    py = np.concatenate([cy - 0.5, cy + 0.5])
    dx = np.maximum(np.abs(cx[None, :] - px[:, None]) - 0.5, 0.0)
    dy = np.maximum(np.abs(cy[None, :] - py[:, None]) - 0.5, 0.0)
    totals = (w[None, None, :] * (dx[:, None, :] + dy[None, :, :])).sum(axis=2)
    flat = int(np.argmin(totals))
    i, j = divmod(flat, py.size)
    return (float(px[i]), float(py[j])), float(totals[i, j])


def oracle_kclique_full(
    collection: Collection, k: int
) -> tuple[float, tuple[int, ...], float]:
    """Cheapest k-clique by trying every k-subset and every subset endpoint.

    Exponential; refuses more than FULL_ORACLE_CAP intervals.
    """
    n = len(collection)
    if not n:
        raise ValueError("empty instance")
    if n > FULL_ORACLE_CAP:
        raise ValueError(f"full oracle limited to {FULL_ORACLE_CAP} intervals")
    if not 1 <= k <= n:
        raise ValueError(f"clique size {k} out of range 1..{n}")
    _, _, weights, lefts, rights = collection.arrays()
    best: tuple[float, tuple[int, ...], float] | None = None
    for subset in itertools.combinations(range(n), k):
        idx = list(subset)
        sl, sr, sw = lefts[idx], rights[idx], weights[idx]
        pts = np.concatenate([sl, sr])
        gaps = np.maximum(
            np.maximum(sl[None, :] - pts[:, None], pts[:, None] - sr[None, :]), 0.0
        )
        costs = gaps @ sw
        at = int(np.lexsort((pts, costs))[0])
        cand = (float(costs[at]), subset, float(pts[at]))
        if best is None or cand[0] < best[0]:
            best = cand
    assert best is not None
    return best


def oracle_kclique_windows(collection: Collection, k: int) -> tuple[float, int, float]:
    """(cost, window_start, point) over windows of k center-consecutive intervals.

    Every endpoint of each window is tried as the gathering point.
    window_start is 1-based in center-sorted order.
    """
    n = len(collection)
    if not n:
        raise ValueError("empty instance")
    if not 1 <= k <= n:
        raise ValueError(f"clique size {k} out of range 1..{n}")
    centers, _, weights, lefts, rights = collection.arrays()
    order = np.argsort(centers, kind="stable")
    lefts, rights, weights = lefts[order], rights[order], weights[order]
    best: tuple[float, int, float] | None = None
    for start in range(n - k + 1):
        sl = lefts[start : start + k]
        sr = rights[start : start + k]
        sw = weights[start : start + k]
        pts = np.concatenate([sl, sr])
        gaps = np.maximum(
            np.maximum(sl[None, :] - pts[:, None], pts[:, None] - sr[None, :]), 0.0
        )
        costs = gaps @ sw
        at = int(np.lexsort((pts, costs))[0])
        cand = (float(costs[at]), start + 1, float(pts[at]))
        if best is None or cand[0] < best[0]:
            best = cand
    assert best is not None
    return best


def max_point_overlap(collection: Collection, tol: float = 0.0) -> tuple[int, float]:
    """(largest number of intervals sharing a point, such a point).

    Intervals are widened by tol/2 per side, so a pair counts as overlapping
    exactly when its separation gap is at most tol.  For interval graphs this
    is the clique number.
    """
    if not len(collection):
        return 0, 0.0
    events: list[tuple[float, int]] = []
    for iv in collection:
        events.append((iv.left - tol / 2, 0))
        events.append((iv.right + tol / 2, 1))
    events.sort()
    best = 0
    best_point = events[0][0]
    depth = 0
    for coord, kind in events:
        if kind == 0:
            depth += 1
            if depth > best:
                best = depth
                best_point = coord
        else:
            depth -= 1
    return best, float(best_point)


def _adjacency(subject: Collection | IntersectionGraph, tol: float) -> IntersectionGraph:
    if isinstance(subject, Collection):
        return build_intersection_graph(subject, naive=True, tol=tol)
    return subject


def _connected_without(graph: IntersectionGraph, removed: frozenset[int]) -> bool:
    alive = [v for v in range(graph.n) if v not in removed]
    if not alive:
        return True
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for u in graph.neighbors(v):
            if u not in removed and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(alive)


def _kconnected_exhaustive(graph: IntersectionGraph, k: int) -> PropertyReport:
    n = graph.n
    if n <= k:
        return PropertyReport("kconnected", False, ("needs_more_vertices",))
    for size in range(k):
        for cut in itertools.combinations(range(n), size):
            if not _connected_without(graph, frozenset(cut)):
                return PropertyReport("kconnected", False, cut)
    return PropertyReport("kconnected", True)


def _kconnected_index_gap(collection: Collection, k: int, tol: float) -> PropertyReport:
    """Sorted unit intervals are k-connected iff every pair k apart intersects."""
    n = len(collection)
    if n <= k:
        return PropertyReport("kconnected", False, ("needs_more_vertices",))
    if collection.uniform_length() is None:
        raise ValueError("index-gap connectivity check needs a common interval length")
    centers, _, _, lefts, rights = collection.arrays()
    order = np.argsort(centers, kind="stable")
    lefts, rights = lefts[order], rights[order]
    for i in range(n - k):
        if lefts[i + k] - rights[i] > tol:
            return PropertyReport("kconnected", False, (int(order[i]), int(order[i + k])))
    return PropertyReport("kconnected", True)


def _find_cycle(graph: IntersectionGraph) -> tuple[int, ...] | None:
    """Return some cycle's vertices via union-find plus a forest path."""
    parent = list(range(graph.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    forest: dict[int, set[int]] = {v: set() for v in range(graph.n)}
    for i, j in graph.edges():
        ri, rj = find(i), find(j)
        if ri == rj:
            # i..j already linked in the forest: that path plus (i, j) closes a cycle
            prev = {i: i}
            queue = [i]
            while queue:
                v = queue.pop(0)
                if v == j:
                    break
                for u in forest[v]:
                    if u not in prev:
                        prev[u] = v
                        queue.append(u)
            path = [j]
            while path[-1] != i:
                path.append(prev[path[-1]])
            return tuple(path)
        parent[ri] = rj
        forest[i].add(j)
        forest[j].add(i)
    return None


def check_property(
    subject: Collection | IntersectionGraph,
    name: str,
    k: int | None = None,
    *,
    tol: float = 0.0,
) -> PropertyReport:
    """Check a graph property of an interval collection or a prebuilt graph.

    Supported names: complete, edgeless, acyclic, kclique (contains one),
    no_kclique (contains none), kconnected.  tol is the intersection slack
    used when building the graph from a collection: a pair is adjacent when
    its gap is at most tol.
    """
    if name in ("complete", "edgeless", "acyclic"):
        graph = _adjacency(subject, tol)
        if name == "complete":
            for i in range(graph.n):
                for j in range(i + 1, graph.n):
                    if not graph.has_edge(i, j):
                        return PropertyReport(name, False, (i, j))
            return PropertyReport(name, True)
        if name == "edgeless":
            for i, j in graph.edges():
                return PropertyReport(name, False, (i, j))
            return PropertyReport(name, True)
        cycle = _find_cycle(graph)
        return PropertyReport(name, cycle is None, cycle)

    if name in ("kclique", "no_kclique"):
        if k is None:
            raise ValueError(f"{name} needs a clique size k")
        if isinstance(subject, Collection):
            count, point = max_point_overlap(subject, tol)
            if count >= k:
                members = tuple(
                    i
                    for i, iv in enumerate(subject)
                    if iv.left - tol / 2 <= point <= iv.right + tol / 2
                )
                witness: tuple | None = members[:k] if name == "kclique" else members
                has = True
            else:
                witness = None
                has = False
        else:
            graph = subject
            if graph.n > 20:
                raise ValueError("clique check on a bare graph is capped at 20 vertices")
            has = False
            witness = None
            if k <= graph.n:
                for cand in itertools.combinations(range(graph.n), k):
                    if all(graph.has_edge(a, b) for a, b in itertools.combinations(cand, 2)):
                        has = True
                        witness = cand
                        break
        if name == "kclique":
            return PropertyReport(name, has, witness)
        return PropertyReport(name, not has, witness)

    if name == "kconnected":
        if k is None:
            raise ValueError("kconnected needs a connectivity k")
        if isinstance(subject, Collection) and len(subject) > FULL_ORACLE_CAP:
            return _kconnected_index_gap(subject, k, tol)
        graph = _adjacency(subject, tol)
        if not isinstance(subject, Collection) and graph.n > FULL_ORACLE_CAP:
            raise ValueError(
                f"exhaustive connectivity is capped at {FULL_ORACLE_CAP} vertices"
            )
        report = _kconnected_exhaustive(graph, k)
        return report

    raise ValueError(f"unknown property {name!r}")


def verify_shifted_property(
    collection: Collection,
    spec: PropertySpec,
    displacements: tuple[float, ...],
) -> PropertyReport:
    """Check a shift solution against its target property at slack eps/2.

    The intersection test is widened by eps/2: a pair not separated by more
    than eps/2 counts as adjacent.  Avoid-properties must therefore clear a
    real margin (solutions separate by a full eps), while kconnected reads
    the same widening as forgiveness, so verification is robust on both
    sides without ever accepting a touching pair as separated.
    """
    moved = Collection(
        Interval(iv.center + d, iv.length, iv.weight)
        for iv, d in zip(collection.items, displacements, strict=True)
    )
    return check_property(moved, spec.property, spec.k, tol=spec.eps / 2)


def _grid_feasible_mask(
    positions: np.ndarray, halves: np.ndarray, name: str, k: int | None
) -> np.ndarray:
    """Feasibility of each grid point, from the pairwise gap definition.

    positions is (points, n) shifted centers.  A pair intersects when its gap
    |c_i - c_j| - (h_i + h_j) is at most STRICT_TOL, the same closed-form rule
    check_property applies; grid_search_lp re-confirms its answer through
    check_property so the two routes stay tied together.
    """
    g, n = positions.shape
    edge = np.empty((g, n, n), dtype=bool)
    for i in range(n):
        edge[:, i, i] = False
        for j in range(i + 1, n):
            gap = np.abs(positions[:, i] - positions[:, j]) - (halves[i] + halves[j])
            edge[:, i, j] = edge[:, j, i] = gap <= STRICT_TOL

    if name == "edgeless":
        return ~edge.any(axis=(1, 2))
    if name == "acyclic":
        # interval graphs are chordal: any cycle implies a triangle
        ok = np.ones(g, dtype=bool)
        for a, b, c in itertools.combinations(range(n), 3):
            ok &= ~(edge[:, a, b] & edge[:, b, c] & edge[:, a, c])
        return ok
    if name == "no_kclique":
        assert k is not None
        ok = np.ones(g, dtype=bool)
        if k > n:
            return ok
        for cand in itertools.combinations(range(n), k):
            all_pairs = np.ones(g, dtype=bool)
            for a, b in itertools.combinations(cand, 2):
                all_pairs &= edge[:, a, b]
            ok &= ~all_pairs
        return ok
    assert name == "kconnected" and k is not None
    if n <= k:
        return np.zeros(g, dtype=bool)
    ok = np.ones(g, dtype=bool)
    for size in range(k):
        for cut in itertools.combinations(range(n), size):
            keep = [v for v in range(n) if v not in cut]
            reach = edge[:, keep][:, :, keep] | np.eye(len(keep), dtype=bool)
            for _ in range(2):  # closure: path length <= 3 suffices for n <= 4
                reach = reach | (
                    np.matmul(reach.astype(np.uint8), reach.astype(np.uint8)) > 0
                )
            ok &= reach[:, 0, :].all(axis=1)
    return ok


def _grid_pass(
    collection: Collection,
    spec: PropertySpec,
    base: np.ndarray,
    half_range: float,
    step: float,
) -> tuple[np.ndarray, float] | None:
    """Cheapest feasible grid point in a box around `base`, or None."""
    n = len(collection)
    _, lengths, weights, _, _ = collection.arrays()
    steps = int(round(half_range / step))
    offsets = (np.arange(2 * steps + 1) - steps) * step
    axes = [base[i] + offsets for i in range(n)]
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.stack([m.ravel() for m in mesh], axis=1)
    centers = np.array([iv.center for iv in collection])
    mask = _grid_feasible_mask(centers[None, :] + grid, lengths / 2, spec.property, spec.k)
    if not mask.any():
        return None
    costs = np.abs(grid) @ weights
    costs[~mask] = np.inf
    at = int(np.argmin(costs))
    shifts = grid[at]
    moved = Collection(
        Interval(iv.center + float(d), iv.length, iv.weight)
        for iv, d in zip(collection.items, shifts)
    )
    if not check_property(moved, spec.property, spec.k, tol=STRICT_TOL).holds:
        raise RuntimeError("grid mask and property checker disagree")
    return shifts, float(costs[at])


def grid_search_lp(
    collection: Collection,
    spec: PropertySpec,
    bounds: float = 5.0,
    step: float = 0.5,
) -> float:
    """Exhaustive shift-grid search for the target property, refined twice.

    Evaluates every grid point, keeps the cheapest feasible one, then shrinks
    the step by 4 around the incumbent, twice.  The intersection test is
    strict (touching does not count), so no eps enters the search.  Returns
    the best cost found, inf if the coarse grid has no feasible point.
    """
    n = len(collection)
    if not n:
        raise ValueError("empty instance")
    if n > GRID_ORACLE_CAP:
        raise ValueError(f"grid oracle limited to {GRID_ORACLE_CAP} intervals")
    found = _grid_pass(collection, spec, np.zeros(n), bounds, step)
    if found is None:
        return float("inf")
    shifts, cost = found
    for _ in range(2):
        finer = step / 4
        found = _grid_pass(collection, spec, shifts, step, finer)
        if found is not None and found[1] <= cost:
            shifts, cost = found
        step = finer
    return cost
