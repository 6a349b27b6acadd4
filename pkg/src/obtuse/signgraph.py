"""Sign graph of a basis and the pure sign-flip reduction.

Vertices are basis vectors; the edge ``ij`` carries ``b_i . b_j``. Negative
edges are red, positive edges blue. A set of negations makes the basis
obtuse exactly when the vertices split into two sides with red edges inside
each side and blue edges across.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .core import (GramMatrix, LatticeBasis, ReductionReport, UnimodularTransform,
                   gram, is_obtuse)


class Color(enum.Enum):
    RED = -1
    ZERO = 0
    BLUE = 1


@dataclass(frozen=True)
class SignGraph:
    weight: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.weight)

    def color(self, i: int, j: int) -> Color:
        w = self.weight[i][j]
        return Color.BLUE if w > 0 else Color.RED if w < 0 else Color.ZERO

    def edges(self):
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j

    def edge_counts(self) -> tuple[int, int, int]:
        """``(red, blue, zero)`` edge counts."""
        red = blue = zero = 0
        for i, j in self.edges():
            w = self.weight[i][j]
            if w < 0:
                red += 1
            elif w > 0:
                blue += 1
            else:
                zero += 1
        return red, blue, zero

    def has_zero_edges(self) -> bool:
        return self.edge_counts()[2] > 0

    def red_degree(self, i: int) -> int:
        return sum(1 for j in range(self.n) if j != i and self.weight[i][j] < 0)

    def flip(self, i: int) -> SignGraph:
        """The sign graph after negating vertex ``i``."""
        W = [list(row) for row in self.weight]
        for j in range(self.n):
            if j != i:
                W[i][j] = -W[i][j]
                W[j][i] = -W[j][i]
        return SignGraph(tuple(map(tuple, W)))

    def flip_many(self, flips) -> SignGraph:
        s = [-1 if f else 1 for f in flips]
        return SignGraph(tuple(tuple(w * s[i] * s[j] if i != j else w for j, w in enumerate(row))
                               for i, row in enumerate(self.weight)))

    def is_all_nonpositive(self) -> bool:
        return all(self.weight[i][j] <= 0 for i, j in self.edges())


def build_sign_graph(G: GramMatrix | LatticeBasis) -> SignGraph:
    if isinstance(G, LatticeBasis):
        G = gram(G)
    return SignGraph(G.entries)


def parity_signature(g: SignGraph) -> int:
    """``(x - y) mod 4`` with x red and y blue edges; zero edges are skipped."""
    red, blue, _ = g.edge_counts()
    return (red - blue) % 4


@dataclass(frozen=True)
class SignPartition:
    A: frozenset[int]
    B: frozenset[int]


def _valid_partition(g: SignGraph, side: list[int]) -> bool:
    for i, j in g.edges():
        w = g.weight[i][j]
        if w < 0 and side[i] != side[j]:
            return False
        if w > 0 and side[i] == side[j]:
            return False
    return True


def _partition_from(g: SignGraph, u: int) -> list[int] | None:
    # side 0 is A, side 1 is B
    n = g.n
    side = [-1] * n
    side[u] = 0
    for j in range(n):
        if j != u:
            c = g.color(u, j)
            if c is Color.RED:
                side[j] = 0
            elif c is Color.BLUE:
                side[j] = 1
    # Zero neighbours of u only matter through nonzero edges to other vertices.
    queue = deque(i for i in range(n) if side[i] >= 0)
    while True:
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or side[j] >= 0:
                    continue
                c = g.color(i, j)
                if c is Color.RED:
                    side[j] = side[i]
                    queue.append(j)
                elif c is Color.BLUE:
                    side[j] = 1 - side[i]
                    queue.append(j)
        rest = [i for i in range(n) if side[i] < 0]
        if not rest:
            break
        side[rest[0]] = 0
        queue.append(rest[0])
    return side if _valid_partition(g, side) else None


def find_partition(g: SignGraph) -> SignPartition | None:
    """Split vertices into (A, B) with red inside each side and blue across.

    Every start vertex ``u`` is tried in index order: ``A`` holds ``u`` and its
    red neighbours, ``B`` its blue neighbours. Vertices joined to ``u`` by a
    zero edge are placed by propagating along nonzero edges, since a zero
    edge constrains nothing. Returns None when no such split exists.
    """
    for u in range(g.n):
        side = _partition_from(g, u)
        if side is not None:
            return SignPartition(frozenset(i for i in range(g.n) if side[i] == 0),
                                 frozenset(i for i in range(g.n) if side[i] == 1))
    return None


def sign_flip_reduce(basis: LatticeBasis) -> ReductionReport:
    """Negate the vectors of side ``B`` of a valid partition.

    On failure the input comes back unchanged with ``success=False``.
    """
    n = basis.n
    G = gram(basis)
    if is_obtuse(G):
        return ReductionReport(basis, UnimodularTransform.identity(n), "signflip", 0, True)
    part = find_partition(build_sign_graph(G))
    if part is None:
        return ReductionReport(basis, UnimodularTransform.identity(n), "signflip", 0, False)
    diag = [-1 if i in part.B else 1 for i in range(n)]
    U = UnimodularTransform(tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))
    out = LatticeBasis([[diag[i] * x for x in v] for i, v in enumerate(basis.vectors)], check=False)
    return ReductionReport(out, U, "signflip", 1, True)
