"""Volume model for the fraction of good nodes.

A node at level ``l`` is good when its interval holds both a negative and a
positive integer. Counting lattice points by volume, the fraction of such
nodes among the ``d = n - l`` dimensional ones is ``V_{d-1} / V_d``, i.e.

    Gamma(d/2 + 1) / Gamma((d-1)/2 + 1) / (sqrt(pi) R),

which tends to ``sqrt(d - 1) / (sqrt(2 pi) R)``. Only ``d`` and ``R`` enter.
When comparing with a real search, ``R`` is taken per level in units of
``|b*_l|`` (the natural scale of that level's interval).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .enumeration import EnumStats

SQRT_PI = math.sqrt(math.pi)


def log_ball_volume(d: int, R: float) -> float:
    if d < 0 or R <= 0:
        raise ValueError("need d >= 0 and R > 0")
    return 0.5 * d * math.log(math.pi) - math.lgamma(d / 2 + 1) + d * math.log(R)


def ball_volume(d: int, R: float) -> float:
    """``pi^(d/2) / Gamma(d/2 + 1) * R^d``."""
    return math.exp(log_ball_volume(d, R))


def gamma_ratio(d: int) -> float:
    """``Gamma(d/2 + 1) / Gamma((d - 1)/2 + 1)`` via log-gamma."""
    return math.exp(math.lgamma(d / 2 + 1) - math.lgamma((d - 1) / 2 + 1))


def good_fraction_exact(d: int, R: float) -> float:
    if d < 1 or R <= 0:
        raise ValueError("need d >= 1 and R > 0")
    return gamma_ratio(d) / (SQRT_PI * R)


def good_fraction_asymptotic(d: int, R: float) -> float:
    if d < 1 or R <= 0:
        raise ValueError("need d >= 1 and R > 0")
    return math.sqrt(d - 1) / (math.sqrt(2 * math.pi) * R)


@dataclass(frozen=True)
class GoodNodeModel:
    n: int
    level: int
    R: float
    gs_normsq: float
    exact_fraction: float
    asymptotic_fraction: float

    @classmethod
    def at(cls, n: int, level: int, R: float, gs_normsq: float = 1.0) -> GoodNodeModel:
        """Model values at ``level`` with ``R`` rescaled by ``|b*_level|``."""
        d = n - level
        r = R / math.sqrt(gs_normsq)
        return cls(n, level, R, gs_normsq, good_fraction_exact(d, r), good_fraction_asymptotic(d, r))


def tree_estimate(n: int, R: float, mean_interval: float) -> dict:
    """The averaged tree-size heuristic ``alpha^n I^n`` with ``alpha = 1 - 1/(4 sqrt(2 pi) R)``.

    Reported only; it assumes every interval has the same length ``I``.
    """
    alpha = 1 - 1 / (4 * math.sqrt(2 * math.pi) * R)
    base = mean_interval ** n
    return {
        "alpha": alpha,
        "mean_interval": mean_interval,
        "unrestricted": base,
        "restricted": alpha ** n * base if alpha > 0 else None,
    }


def compare_model(stats: EnumStats, R: float | Sequence[float],
                  gs_normsq: Sequence[float]) -> dict:
    """Empirical good-node fractions per level next to the model.

    ``R`` is the search radius, or the per-level radii of a profile. Levels
    with no visited node report ``empirical: None``. Row ``level = 0`` is the
    one the theorem's ``sqrt(n - 1)`` refers to.
    """
    n = stats.n
    radii = [float(R)] * n if isinstance(R, (int, float)) else [float(r) for r in R]
    rows = []
    for level in range(n):
        m = GoodNodeModel.at(n, level, radii[level], float(gs_normsq[level]))
        visited = stats.nodes_visited[level]
        emp = stats.good_nodes[level] / visited if visited else None
        rows.append({
            "level": level,
            "dim": n - level,
            "radius_scaled": radii[level] / math.sqrt(float(gs_normsq[level])),
            "nodes": visited,
            "good": stats.good_nodes[level],
            "empirical": emp,
            "exact": m.exact_fraction,
            "asymptotic": m.asymptotic_fraction,
            "ratio": emp / m.exact_fraction if emp is not None and m.exact_fraction > 0 else None,
        })
    counts = sum(stats.interval_count)
    mean_len = sum(stats.interval_len_sum) / counts if counts else 0.0
    log_det = sum(math.log(float(x)) for x in gs_normsq) / 2
    r_norm = radii[0] / math.exp(log_det / n)
    return {
        "levels": rows,
        "theorem_level0": rows[0],
        "tree_estimate": tree_estimate(n, r_norm, mean_len),
        "radius_normalized": r_norm,
    }
