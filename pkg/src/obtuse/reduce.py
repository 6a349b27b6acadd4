"""Turning an arbitrary basis into an obtuse one.

An obtuse clique ``K`` is grown one vector at a time. The vector ``b_j``
joining ``K`` is replaced by ``b'_j = y b_j + sum_i v_i b_i`` over ``i`` in
``K``, where ``v`` solves ``A v <= y c`` with ``A`` the Gram matrix of ``K``
(an M-matrix) and ``c_l = -(b_j . b_l)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .core import (DegenerateBasis, InvariantViolation, LatticeBasis, ReductionReport,
                   UnimodularTransform, dot, gram, is_obtuse)
from .signgraph import SignGraph, build_sign_graph, sign_flip_reduce


class NotMMatrix(ValueError):
    pass


@dataclass(frozen=True)
class MMatrixSystem:
    """The inequality system ``A v <= y c`` over integer ``v``."""

    A: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]
    y: int = 1

    @property
    def k(self) -> int:
        return len(self.c)

    @property
    def rhs(self) -> list[int]:
        return [self.y * ci for ci in self.c]

    def check(self) -> None:
        """Raise NotMMatrix unless ``A`` is symmetric, Z-sign and positive definite."""
        A, k = self.A, self.k
        for i in range(k):
            for j in range(k):
                if A[i][j] != A[j][i]:
                    raise NotMMatrix("A is not symmetric")
                if i != j and A[i][j] > 0:
                    raise NotMMatrix(f"A[{i}][{j}] = {A[i][j]} > 0")
        if any(m <= 0 for m in linalg.leading_minors(A)):
            raise NotMMatrix("A is not positive definite")

    def inverse(self) -> tuple[list[list[int]], int]:
        """``A^{-1}`` as ``(N, d)``, meaning ``N / d`` with ``d > 0``."""
        return linalg.inverse(self.A)

    def solution(self) -> list[Fraction]:
        """The rational vertex ``x = y A^{-1} c``."""
        (X,), d = linalg.solve_columns(self.A, [self.rhs])
        return [Fraction(x, d) for x in X]

    def satisfied_by(self, v: Sequence[int]) -> bool:
        return all(lhs <= r for lhs, r in zip(linalg.matvec(self.A, v), self.rhs))


def floor_solution(sys: MMatrixSystem) -> list[int]:
    return [math.floor(x) for x in sys.solution()]


def _block_bound(A, b, v, S):
    """Rational ``u`` with rows ``S`` tight and the other coordinates held at ``v``.

    For every integer solution ``z <= v`` the M-matrix property gives
    ``z <= u``, so ``floor(u)`` is a valid upper bound.
    """
    out = [i for i in range(len(v)) if i not in S]
    A_SS = [[A[i][j] for j in S] for i in S]
    rhs = [b[i] - sum(A[i][j] * v[j] for j in out) for i in S]
    (X,), d = linalg.solve_columns(A_SS, [rhs])
    u = [Fraction(x) for x in v]
    for x, i in zip(X, S):
        u[i] = Fraction(x, d)
    return u


def cone_direction(A: Sequence[Sequence[int]],
                   ones: tuple[list[int], int] | None = None) -> tuple[list[int], list[int]]:
    """A short integer ``q`` with every entry of ``A q`` at least 1, and ``A q``.

    Tries ``ceil(s A^{-1} 1)`` for ``s = 1, 2, 4, ...``; the rounding error
    ``A (ceil - exact)`` is bounded by the off-diagonal row sums, so the
    doubling stops. Scanning upward keeps ``q`` short, which matters more
    than the extra products. ``ones`` may pass ``A^{-1} 1`` in as
    ``(numerators, d)``.
    """
    if ones is None:
        (p,), d = linalg.solve_columns(A, [[1] * len(A)])
    else:
        p, d = ones
    # A q = s 1 + A e / d with e_j = (-s p_j) mod d, so the test only needs
    # products of A with residues below d.
    pm = [x % d for x in p]
    k = len(p)
    s = 1
    while True:
        r = [(-s * x) % d for x in pm]
        if all(s * d + sum(A[i][j] * r[j] for j in range(k) if r[j]) >= d for i in range(k)):
            q = [-(-s * pi // d) for pi in p]
            return q, linalg.matvec(A, q)
        s *= 2


def raise_greedily(A: Sequence[Sequence[int]], b: Sequence[int], v: Sequence[int],
                   max_sweeps: int) -> list[int]:
    """Raise coordinates of a feasible ``v`` while ``A v <= b`` stays true."""
    v = list(v)
    Av = linalg.matvec(A, v)
    for _ in range(max_sweeps):
        moved = False
        for i in range(len(v)):
            step = (b[i] - Av[i]) // A[i][i]
            if step > 0:
                v[i] += step
                for r in range(len(v)):
                    Av[r] += A[r][i] * step
                moved = True
        if not moved:
            break
    return v


def greatest_solution(A: Sequence[Sequence[int]], b: Sequence[int], v: Sequence[int],
                      max_rounds: int = 8,
                      ones: tuple[list[int], int] | None = None) -> tuple[list[int], bool]:
    """Integer ``z <= v`` with ``A z <= b``; exact greatest one when affordable.

    Solutions are closed under componentwise max, so a greatest one exists.
    Each descent round makes the violated rows tight over the rationals with
    the rest held at ``v`` and floors, which never overshoots the greatest
    solution. When the feasible cone is thin the descent crawls; after
    ``max_rounds`` it jumps along ``cone_direction`` to a feasible point and
    raises it greedily instead. Returns ``(z, exact)``.
    """
    k = len(v)
    v = list(v)
    for _ in range(max_rounds):
        Av = linalg.matvec(A, v)
        S = [i for i in range(k) if Av[i] > b[i]]
        if not S:
            return v, True
        u = _block_bound(A, b, v, S)
        v = [min(vi, math.floor(ui)) for vi, ui in zip(v, u)]
    Av = linalg.matvec(A, v)
    if all(x <= y for x, y in zip(Av, b)):
        return v, True
    q, Aq = cone_direction(A, ones)
    t = max(-(-(x - y) // a) for x, y, a in zip(Av, b, Aq))
    v = [vi - t * qi for vi, qi in zip(v, q)]
    return raise_greedily(A, b, v, max_sweeps=4 * max_rounds), False


def solve_coefficients(sys: MMatrixSystem, *, check: bool = True,
                       x: Sequence[Fraction] | None = None,
                       ones: tuple[list[int], int] | None = None) -> list[int]:
    """Greatest integer ``v`` with ``A v <= y c``.

    Starts from ``floor(y A^{-1} c)``, which bounds every integer solution
    from above. That floor alone can violate a row (A the 3x3 path matrix
    with c = (0, 1, 0) is the smallest example), in which case it is lowered
    to the greatest feasible point by ``greatest_solution``.
    """
    if check:
        sys.check()
    start = floor_solution(sys) if x is None else [math.floor(t) for t in x]
    v, _ = greatest_solution(sys.A, sys.rhs, start, ones=ones)
    if not sys.satisfied_by(v):
        raise InvariantViolation("coefficient solve left a violated inequality")
    return v


def initial_clique(g: SignGraph) -> list[int]:
    """Greedy inclusion-maximal clique with no blue edge.

    Seeds with the highest red-degree vertex and keeps adding the
    highest red-degree vertex compatible with every member. Ties go to the
    smaller index.
    """
    deg = [g.red_degree(i) for i in range(g.n)]
    K = [max(range(g.n), key=lambda i: (deg[i], -i))]
    while True:
        cand = [i for i in range(g.n) if i not in K and all(g.weight[i][k] <= 0 for k in K)]
        if not cand:
            return K
        K.append(max(cand, key=lambda i: (deg[i], -i)))


@dataclass(frozen=True)
class Candidate:
    y: int
    v: tuple[int, ...]
    vector: tuple[int, ...]
    norm_sq: int
    floor_feasible: bool


@dataclass(frozen=True)
class SystemRecord:
    """One solved system, kept for auditing a reduction run."""

    system: MMatrixSystem
    x: tuple[Fraction, ...]
    floor: tuple[int, ...]
    v: tuple[int, ...]


def multiplier_range(n: int, allow_sublattice: bool = False) -> list[int]:
    if not allow_sublattice:
        return [1, -1]
    return sorted((y for y in range(-n, n + 1) if y), key=lambda y: (abs(y), -y))


def choose_multiplier(vectors: Sequence[Sequence[int]], j: int, K: Sequence[int], *,
                      multipliers: Sequence[int] = (1, -1),
                      on_system: Callable[[SystemRecord], None] | None = None) -> Candidate:
    """Best replacement for ``vectors[j]`` that is obtuse to every ``vectors[K]``.

    Each multiplier ``y`` yields a candidate; the shortest wins, then
    smaller ``|y|``, then positive ``y``.
    """
    KV = [vectors[i] for i in K]
    A = tuple(tuple(dot(a, b) for b in KV) for a in KV)
    c = tuple(-dot(vectors[j], b) for b in KV)
    MMatrixSystem(A, c, 1).check()
    (xc, p), d = linalg.solve_columns(A, [c, [1] * len(c)])
    x1 = [Fraction(t, d) for t in xc]
    best: Candidate | None = None
    for y in multipliers:
        sys = MMatrixSystem(A, c, y)
        x = [y * xi for xi in x1]
        fl = [math.floor(xi) for xi in x]
        v = solve_coefficients(sys, check=False, x=x, ones=(p, d))
        if on_system is not None:
            on_system(SystemRecord(sys, tuple(x), tuple(fl), tuple(v)))
        vec = [y * t for t in vectors[j]]
        for vi, kv in zip(v, KV):
            if vi:
                for t, kt in enumerate(kv):
                    vec[t] += vi * kt
        cand = Candidate(y, tuple(v), tuple(vec), dot(vec, vec), fl == v)
        key = (cand.norm_sq, abs(y), -y)
        if best is None or key < (best.norm_sq, abs(best.y), -best.y):
            best = cand
    return best


def obtuse_reduce(basis: LatticeBasis, *, allow_sublattice: bool = False,
                  on_system: Callable[[SystemRecord], None] | None = None) -> ReductionReport:
    """Replace vectors one at a time until every pairwise product is ``<= 0``.

    Output vectors keep their input positions. With ``allow_sublattice`` the
    multiplier ranges over ``[-n, n]`` and the result may span a sublattice.
    """
    n = basis.n
    vectors = [list(v) for v in basis.vectors]
    U = linalg.identity(n)
    G = gram(basis)
    if is_obtuse(G):
        return ReductionReport(basis, UnimodularTransform.identity(n), "obtuse", 0, True)
    K = initial_clique(build_sign_graph(G))
    rest = [i for i in range(n) if i not in K]
    mults = multiplier_range(n, allow_sublattice)
    iterations = 0
    while rest:
        j = max(rest, key=lambda i: (sum(1 for k in K if dot(vectors[i], vectors[k]) < 0), -i))
        try:
            cand = choose_multiplier(vectors, j, K, multipliers=mults, on_system=on_system)
        except ZeroDivisionError:
            raise DegenerateBasis("singular Gram submatrix") from None
        vectors[j] = list(cand.vector)
        row = [cand.y * t for t in U[j]]
        for vi, k in zip(cand.v, K):
            if vi:
                row = [a + vi * b for a, b in zip(row, U[k])]
        U[j] = row
        K.append(j)
        rest.remove(j)
        iterations += 1
    out = LatticeBasis(vectors, check=False)
    T = UnimodularTransform(tuple(map(tuple, U)))
    if not is_obtuse(out):
        raise InvariantViolation("obtuse reduction produced a non-obtuse basis")
    if not allow_sublattice and not T.is_unimodular:
        raise InvariantViolation(f"transform determinant {T.det} is not +-1")
    return ReductionReport(out, T, "obtuse", iterations, True, tuple(K))


def auto_reduce(basis: LatticeBasis, **kw) -> ReductionReport:
    """Already obtuse, else sign flips, else the clique-growing reduction."""
    if is_obtuse(basis):
        return ReductionReport(basis, UnimodularTransform.identity(basis.n), "signflip", 0, True)
    rep = sign_flip_reduce(basis)
    if rep.success:
        return rep
    return obtuse_reduce(basis, **kw)
