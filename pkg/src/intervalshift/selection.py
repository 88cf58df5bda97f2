"""Linear-time rank selection over float arrays.

The deterministic path is classic median-of-medians (groups of five), which
keeps the worst case linear.  The randomized path is quickselect with a random
pivot, expected linear with a smaller constant.
"""

from __future__ import annotations

import numpy as np

__all__ = ["select"]

_SMALL = 32


def _mom_pivot(a: np.ndarray) -> float:
    """Median of the group-of-five medians; guarantees a 30/70 split."""
    m = a.size
    t = m - m % 5
    meds = np.sort(a[:t].reshape(-1, 5), axis=1)[:, 2]
    if m % 5:
        tail = np.sort(a[t:])
        meds = np.append(meds, tail[tail.size // 2])
    if meds.size == 1:
        return float(meds[0])
    return _select(meds, (meds.size - 1) // 2, None)


def _select(a: np.ndarray, rank: int, rng: np.random.Generator | None) -> float:
    while True:
        m = a.size
        if m <= _SMALL:
            return float(np.sort(a)[rank])
        if rng is None:
            pivot = _mom_pivot(a)
        else:
            pivot = float(a[int(rng.integers(m))])
        less = a[a < pivot]
        if rank < less.size:
            a = less
            continue
        n_eq = int(np.count_nonzero(a == pivot))
        if rank < less.size + n_eq:
            return pivot
        rank -= less.size + n_eq
        a = a[a > pivot]


def select(
    values: np.ndarray,
    rank: int,
    *,
    method: str = "median_of_medians",
    rng: np.random.Generator | None = None,
) -> float:
    """Return the element of `values` with the given 0-based rank.

    method is "median_of_medians" (deterministic, worst-case linear) or
    "random_pivot" (expected linear).
    """
    a = np.asarray(values, dtype=float)
    if not 0 <= rank < a.size:
        raise IndexError(f"rank {rank} out of range for {a.size} values")
    if method == "median_of_medians":
        return _select(a, rank, None)
    if method == "random_pivot":
        return _select(a, rank, rng if rng is not None else np.random.default_rng())
    raise ValueError(f"unknown selection method {method!r}")
