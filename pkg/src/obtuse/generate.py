"""Seeded random bases.

All randomness flows from ``numpy.random.SeedSequence(seed)``; independent
streams for subcomponents come from ``SeedSequence.spawn`` and drive PCG64
generators, so results match across platforms.
"""
from __future__ import annotations

import numpy as np

from .core import DegenerateBasis, LatticeBasis

KINDS = ("uniform", "knapsack")


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def spawn(seed: int, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


def uniform_basis(n: int, bound: int, rng: np.random.Generator, m: int | None = None) -> LatticeBasis:
    """Entries i.i.d. in ``[-bound, bound]``, redrawn until independent."""
    m = n if m is None else m
    while True:
        rows = rng.integers(-bound, bound + 1, size=(n, m)).tolist()
        try:
            return LatticeBasis(rows)
        except DegenerateBasis:
            continue


def knapsack_basis(n: int, bound: int, rng: np.random.Generator) -> LatticeBasis:
    """Rows ``[e_i | w_i]`` with weights ``w_i`` uniform in ``[1, bound]``."""
    w = rng.integers(1, bound + 1, size=n).tolist()
    return LatticeBasis([[int(i == j) for j in range(n)] + [w[i]] for i in range(n)])


def gen(kind: str, n: int, bound: int, seed: int | np.random.SeedSequence) -> LatticeBasis:
    if n < 1:
        raise ValueError("n must be at least 1")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    rng = make_rng(seed)
    if kind == "uniform":
        return uniform_basis(n, bound, rng)
    if kind == "knapsack":
        return knapsack_basis(n, bound, rng)
    raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
