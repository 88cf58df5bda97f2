"""Shared instance builders.

All random data lives on a half-integer grid with small integer weights, so
endpoint arithmetic and cost sums stay exact in 64-bit floats and solver vs
oracle comparisons can demand exact equality.
"""

import numpy as np

from intervalshift import Collection, Interval, UnitSquare


def grid_centers(rng, n, span=None):
    span = span if span is not None else 2 * n
    steps = max(int(span / 0.5), 1)
    return rng.integers(-steps, steps + 1, size=n) * 0.5


def weighted_collection(rng, n, span=None, lengths=(1.0,)):
    centers = grid_centers(rng, n, span)
    lens = rng.choice(lengths, size=n)
    weights = rng.integers(1, 6, size=n).astype(float)
    return Collection(
        Interval(float(c), float(l), float(w))
        for c, l, w in zip(centers, lens, weights)
    )


def uniform_collection(rng, n, span=None):
    centers = grid_centers(rng, n, span)
    return Collection.from_centers(centers.tolist())


def square_instance(rng, n, span=30.0):
    steps = int(span / 0.5)
    xs = rng.integers(-steps, steps + 1, size=n) * 0.5
    ys = rng.integers(-steps, steps + 1, size=n) * 0.5
    ws = rng.integers(1, 6, size=n).astype(float)
    return [UnitSquare(float(x), float(y), float(w)) for x, y, w in zip(xs, ys, ws)]
