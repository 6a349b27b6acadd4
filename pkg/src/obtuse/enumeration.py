"""Depth-first enumeration of lattice vectors inside a ball.

Levels run from ``n-1`` down to ``0``. At level ``l`` the admissible values
of ``v_l`` form the integer interval around ``c_l = -sum_{k>l} mu[k][l] v_k``
of half-width ``sqrt(budget_l) / |b*_l|``, where ``budget_l`` is what is
left of the squared radius after the levels above.

On an obtuse basis some shortest vector has coefficients of one sign, so
``sign_restricted`` drops every negative value. Without it the search still
halves the tree by keeping the topmost nonzero coefficient positive.

Centers are computed from the integral Gram-Schmidt data (``lam``, ``D``)
whenever exact data is available: bases produced by the obtuse reduction
have ``mu`` entries far outside double range, while ``|b*_l|^2`` and the
budgets stay moderate and are kept as floats.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .core import GramMatrix, GsData, LatticeBasis, gram, integral_gs, is_obtuse

EPS = 1e-9
THREADS_ENV = "OBTUSE_THREADS"
_MAX_WIDTH = 2.0 ** 62


class NotObtuse(ValueError):
    pass


@dataclass(frozen=True)
class EnumConfig:
    """Search radius, sign restriction, optional per-level radii and node budget.

    ``profile[l]`` is the radius used at level ``l``; it must not increase
    from level 0 upward and must stay within ``radius``.
    """

    radius: float
    sign_restricted: bool = False
    profile: tuple[float, ...] | None = None
    node_budget: int | None = None

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.profile is not None:
            prof = tuple(float(r) for r in self.profile)
            object.__setattr__(self, "profile", prof)
            if any(r <= 0 or r > self.radius * (1 + EPS) for r in prof):
                raise ValueError("profile radii must lie in (0, radius]")
            if any(prof[i] < prof[i + 1] for i in range(len(prof) - 1)):
                raise ValueError("profile must be nondecreasing from level n-1 down to 0")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node_budget must be positive")


def linear_profile(n: int, radius: float) -> tuple[float, ...]:
    """``R_l^2 = R^2 (n - l) / n``."""
    return tuple(radius * math.sqrt((n - l) / n) for l in range(n))


@dataclass
class EnumStats:
    """Per-level counters; index ``l`` is the level.

    ``good_nodes`` counts intervals holding both a negative and a positive
    integer, ``zero_feasible`` those holding 0, ``sign_pruned`` the negative
    values discarded by the sign restriction.
    """

    n: int
    nodes_visited: list[int] = field(default_factory=list)
    good_nodes: list[int] = field(default_factory=list)
    zero_feasible: list[int] = field(default_factory=list)
    sign_pruned: list[int] = field(default_factory=list)
    interval_len_sum: list[int] = field(default_factory=list)
    interval_count: list[int] = field(default_factory=list)
    leaves: int = 0

    def __post_init__(self):
        for name in ("nodes_visited", "good_nodes", "zero_feasible", "sign_pruned",
                     "interval_len_sum", "interval_count"):
            if not getattr(self, name):
                setattr(self, name, [0] * self.n)

    @property
    def total_nodes(self) -> int:
        return sum(self.nodes_visited)

    @property
    def total_good(self) -> int:
        return sum(self.good_nodes)

    @property
    def total_sign_pruned(self) -> int:
        return sum(self.sign_pruned)

    def mean_interval_length(self, level: int) -> float | None:
        c = self.interval_count[level]
        return self.interval_len_sum[level] / c if c else None

    def merge(self, other: EnumStats) -> None:
        for name in ("nodes_visited", "good_nodes", "zero_feasible", "sign_pruned",
                     "interval_len_sum", "interval_count"):
            mine = getattr(self, name)
            for i, x in enumerate(getattr(other, name)):
                mine[i] += x
        self.leaves += other.leaves

    def to_dict(self) -> dict:
        return {
            "nodes_visited": list(self.nodes_visited),
            "good_nodes": list(self.good_nodes),
            "zero_feasible": list(self.zero_feasible),
            "sign_pruned": list(self.sign_pruned),
            "interval_len_sum": list(self.interval_len_sum),
            "interval_count": list(self.interval_count),
            "leaves": self.leaves,
            "total_nodes": self.total_nodes,
            "total_good": self.total_good,
            "total_sign_pruned": self.total_sign_pruned,
        }


@dataclass(frozen=True)
class EnumResult:
    found: bool
    coeffs: tuple[int, ...] | None = None
    vector: tuple[int, ...] | None = None
    norm_sq: int | None = None
    budget_exceeded: bool = False

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "coeffs": list(self.coeffs) if self.coeffs is not None else None,
            "vector": list(self.vector) if self.vector is not None else None,
            "norm_sq": self.norm_sq,
            "budget_exceeded": self.budget_exceeded,
        }


class Levels:
    """Gram-Schmidt data arranged for interval computations.

    Built from exact data the centers are exact: ``c_l`` is held as an
    integer part plus a fractional float. From float data everything is
    a double.
    """

    def __init__(self, gs: GsData | GramMatrix):
        if isinstance(gs, GramMatrix):
            D, lam = integral_gs(gs)
            self.exact = True
            n = gs.n
        elif gs.precision_mode == "exact":
            n = gs.n
            D = [1]
            for x in gs.normsq:
                D.append(D[-1] * x)
            if any(Fraction(d).denominator != 1 for d in D):
                raise ValueError("exact data does not come from an integral Gram matrix")
            D = [int(d) for d in D]
            lam = [[int(gs.mu[i][j] * D[j + 1]) if j < i else 0 for j in range(n)] for i in range(n)]
            self.exact = True
        else:
            n = gs.n
            self.exact = False
        self.n = n
        if self.exact:
            self.den = [D[l + 1] for l in range(n)]
            self.cols = [[(k, lam[k][l]) for k in range(l + 1, n) if lam[k][l]] for l in range(n)]
            self.normsq = [_ratio(D[l + 1], D[l]) for l in range(n)]
            self.inv_normsq = [_ratio(D[l], D[l + 1]) for l in range(n)]
        else:
            self.cols = [[(k, gs.mu[k][l]) for k in range(l + 1, n) if gs.mu[k][l]] for l in range(n)]
            self.normsq = [float(x) for x in gs.normsq]
            self.inv_normsq = [1.0 / x for x in self.normsq]

    def center(self, level: int, v: Sequence[int]) -> tuple[int, float]:
        """``c_level`` split as integer part ``q`` and fraction ``f`` in ``[0, 1)``."""
        if self.exact:
            num = 0
            for k, a in self.cols[level]:
                vk = v[k]
                if vk:
                    num -= a * vk
            q, r = divmod(num, self.den[level])
            return q, r / self.den[level]
        c = 0.0
        for k, a in self.cols[level]:
            vk = v[k]
            if vk:
                c -= a * vk
        q = math.floor(c)
        return q, c - q

    def interval(self, level: int, v: Sequence[int], budget: float) -> tuple[int, int, int, float]:
        """``(lo, hi, q, f)`` for the admissible values at ``level``."""
        q, f = self.center(level, v)
        if budget < 0:
            if budget < -EPS:
                return q + 1, q, q, f
            budget = 0.0
        w = math.sqrt(budget * self.inv_normsq[level]) * (1 + EPS) if budget else 0.0
        if not w < _MAX_WIDTH:
            raise ValueError(f"interval at level {level} is too wide to enumerate "
                             f"(|b*|^2 underflows); reorder or reduce the basis first")
        return q + math.ceil(f - w), q + math.floor(f + w), q, f


def _ratio(a: int, b: int) -> float:
    try:
        return a / b
    except OverflowError:
        return math.inf


def level_interval(gs: GsData | Levels, partial: Sequence[int],
                   remaining_budget: float) -> tuple[int, int, float]:
    """Integer range for the next coefficient given ``v_{level+1..n-1}``.

    ``partial`` lists those coefficients from level ``level+1`` upward, so the
    level is ``n - 1 - len(partial)``. Returns ``(lo, hi, center)``; the
    interval is empty when ``lo > hi``.
    """
    lv = gs if isinstance(gs, Levels) else Levels(gs)
    level = lv.n - 1 - len(partial)
    if level < 0:
        raise ValueError("too many partial coefficients")
    v = [0] * (level + 1) + list(partial)
    lo, hi, q, f = lv.interval(level, v, remaining_budget)
    return lo, hi, q + f


def radius_default(basis: LatticeBasis, gs: GsData | None = None) -> float:
    """Shortest basis vector length; some nonzero lattice vector lies within it."""
    try:
        return math.sqrt(min(basis.norms_sq()))
    except OverflowError:
        raise ValueError("basis vectors are too long for a floating-point radius") from None


NodeHook = Callable[[int, int, int, tuple], None]


class _Search:
    def __init__(self, basis: LatticeBasis, levels: Levels, config: EnumConfig,
                 G: GramMatrix, on_node: NodeHook | None = None):
        n = basis.n
        self.n = n
        self.lv = levels
        self.cfg = config
        self.G = G
        radii = config.profile if config.profile is not None else (config.radius,) * n
        if len(radii) != n:
            raise ValueError(f"profile has {len(radii)} entries for dimension {n}")
        self.R2 = [r * r for r in radii]
        self.leaf_bound = config.radius ** 2 * (1 + EPS)
        self.stats = EnumStats(n)
        self.v = [0] * n
        self.best: tuple[int, float, tuple[int, ...]] | None = None
        self.nodes = 0
        self.budget_hit = False
        self.on_node = on_node

    def run(self, top: tuple[int, int] | None = None, count_top: bool = True) -> None:
        self._visit(self.n - 1, 0.0, True, top, count_top)

    def top_interval(self) -> tuple[int, int]:
        lo, hi, _, _ = self.lv.interval(self.n - 1, self.v, self.R2[self.n - 1])
        return lo, hi

    def _visit(self, level: int, above: float, zero_prefix: bool,
               restrict: tuple[int, int] | None = None, count: bool = True) -> None:
        budget_cap = self.cfg.node_budget
        if budget_cap is not None and self.nodes >= budget_cap:
            self.budget_hit = True
            return
        st, lv, v = self.stats, self.lv, self.v
        lo, hi, q, f = lv.interval(level, v, self.R2[level] - above)
        if count:
            self.nodes += 1
            st.nodes_visited[level] += 1
            st.interval_count[level] += 1
            if hi >= lo:
                st.interval_len_sum[level] += hi - lo + 1
            if lo <= -1 and hi >= 1:
                st.good_nodes[level] += 1
            if lo <= 0 <= hi:
                st.zero_feasible[level] += 1
        if self.on_node is not None:
            self.on_node(level, lo, hi, tuple(v[level + 1:]))
        start = lo
        if self.cfg.sign_restricted:
            if lo < 0:
                if count and hi >= lo:
                    st.sign_pruned[level] += min(hi, -1) - lo + 1
                start = 0
        elif zero_prefix and lo < 0:
            start = 0
        stop = hi
        if restrict is not None:
            start, stop = max(start, restrict[0]), min(stop, restrict[1])
        nsq = lv.normsq[level]
        for t in range(start, stop + 1):
            u = (t - q) - f
            d = above + u * u * nsq if u else above
            v[level] = t
            if level == 0:
                if not (zero_prefix and t == 0):
                    self._leaf(d)
            else:
                self._visit(level - 1, d, zero_prefix and t == 0)
            if self.budget_hit:
                break
        v[level] = 0

    def _leaf(self, approx: float) -> None:
        self.stats.leaves += 1
        if self.best is not None and approx > self.best[1] * (1 + 1e-6):
            return
        norm = self.G.quadratic_form(self.v)
        if norm > self.leaf_bound:
            return
        if self.best is None or norm < self.best[0]:
            self.best = (norm, approx, tuple(self.v))

    def result(self, basis: LatticeBasis) -> EnumResult:
        if self.best is None:
            return EnumResult(False, budget_exceeded=self.budget_hit)
        norm, _, coeffs = self.best
        return EnumResult(True, coeffs, tuple(basis.combination(coeffs)), norm, self.budget_hit)


def _prepare(basis: LatticeBasis, gs: GsData | None) -> tuple[Levels, GramMatrix]:
    G = gram(basis)
    return (Levels(G) if gs is None else Levels(gs)), G


def _run_chunk(args) -> tuple[EnumStats, tuple | None, bool]:
    basis, gs, config, chunk, count_top = args
    lv, G = _prepare(basis, gs)
    s = _Search(basis, lv, config, G)
    s.run(chunk, count_top)
    return s.stats, s.best, s.budget_hit


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def enumerate_svp(basis: LatticeBasis, gs: GsData | None = None,
                  config: EnumConfig | None = None, *, threads: int | None = None,
                  on_node: NodeHook | None = None) -> tuple[EnumResult, EnumStats]:
    """Shortest nonzero vector within ``config.radius``, plus node statistics.

    ``gs`` defaults to exact data derived from the basis. With ``threads > 1``
    the top-level range is cut into contiguous chunks searched in worker
    processes; merged counters and the reported vector equal a sequential
    run. A node budget or an ``on_node`` hook forces a sequential run.
    """
    if config is None:
        config = EnumConfig(radius_default(basis))
    if config.sign_restricted and not is_obtuse(basis):
        raise NotObtuse("sign-restricted enumeration needs an obtuse basis")
    threads = default_threads() if threads is None else max(1, threads)
    lv, G = _prepare(basis, gs)
    if threads == 1 or config.node_budget is not None or on_node is not None or basis.n == 1:
        s = _Search(basis, lv, config, G, on_node)
        s.run()
        return s.result(basis), s.stats

    probe = _Search(basis, lv, config, G)
    lo, hi = probe.top_interval()
    lo = max(lo, 0)  # the top level never takes negative values in either mode
    if hi < lo:
        probe.run()
        return probe.result(basis), probe.stats
    parts = min(threads, hi - lo + 1)
    step = -(-(hi - lo + 1) // parts)
    chunks = [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]
    jobs = [(basis, gs, config, ch, i == 0) for i, ch in enumerate(chunks)]
    with ProcessPoolExecutor(max_workers=parts) as ex:
        outs = list(ex.map(_run_chunk, jobs))
    merged = EnumStats(basis.n)
    best = None
    for stats, b, _ in outs:
        merged.merge(stats)
        if b is not None and (best is None or b[0] < best[0]):
            best = b
    if best is None:
        return EnumResult(False), merged
    norm, _, coeffs = best
    return EnumResult(True, coeffs, tuple(basis.combination(coeffs)), norm), merged
