"""Lattice bases, Gram data and exact lattice-equivalence checks.

Conventions: a basis is a list of *row* vectors ``b_0 .. b_{n-1}`` in
``Z^m`` with ``m >= n``. A transform ``U`` acts on the left, so the new
basis is ``U @ B``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Literal, Sequence

from . import linalg

Mode = Literal["exact", "float"]


class DegenerateBasis(ValueError):
    """Raised when vectors are linearly dependent or malformed."""


class InvariantViolation(RuntimeError):
    """An internal postcondition failed; signals a bug, not bad input."""


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class LatticeBasis:
    """``n`` linearly independent integer row vectors of common length ``m``."""

    vectors: tuple[tuple[int, ...], ...]

    def __init__(self, vectors: Iterable[Iterable[int]], *, check: bool = True):
        rows = tuple(tuple(int(x) for x in v) for v in vectors)
        object.__setattr__(self, "vectors", rows)
        if check:
            self._validate()

    def _validate(self) -> None:
        if not self.vectors:
            raise DegenerateBasis("basis must contain at least one vector")
        m = len(self.vectors[0])
        if any(len(v) != m for v in self.vectors):
            raise DegenerateBasis("basis vectors have different dimensions")
        if m < self.n:
            raise DegenerateBasis(f"{self.n} vectors in dimension {m} cannot be independent")
        if linalg.det(gram(self).entries) == 0:
            raise DegenerateBasis("basis vectors are linearly dependent")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def m(self) -> int:
        return len(self.vectors[0])

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)

    def tolist(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]

    def norms_sq(self) -> list[int]:
        return [dot(v, v) for v in self.vectors]

    def combination(self, coeffs: Sequence[int]) -> list[int]:
        """The lattice vector ``sum_i coeffs[i] * b_i``."""
        out = [0] * self.m
        for c, v in zip(coeffs, self.vectors):
            if c:
                for k, x in enumerate(v):
                    out[k] += c * x
        return out

    def max_coeff_bits(self) -> int:
        return max(abs(x).bit_length() for v in self.vectors for x in v)


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.n) for j in range(i))

    def is_positive_definite(self) -> bool:
        return self.is_symmetric() and all(d > 0 for d in linalg.leading_minors(self.entries))

    def quadratic_form(self, v: Sequence[int]) -> int:
        """``v^T G v``, i.e. the squared norm of ``sum v_i b_i``."""
        G = self.entries
        total = 0
        for i, vi in enumerate(v):
            if vi:
                total += vi * sum(g * vj for g, vj in zip(G[i], v))
        return total


def gram(basis: LatticeBasis) -> GramMatrix:
    vs = basis.vectors
    n = len(vs)
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            G[i][j] = G[j][i] = dot(vs[i], vs[j])
    return GramMatrix(tuple(map(tuple, G)))


@dataclass(frozen=True)
class GsData:
    """Gram-Schmidt coefficients ``mu[i][j]`` (j < i) and ``normsq[i] = |b*_i|^2``."""

    mu: tuple[tuple, ...]
    normsq: tuple
    precision_mode: Mode = "exact"

    @property
    def n(self) -> int:
        return len(self.normsq)

    def to_float(self) -> GsData:
        if self.precision_mode == "float":
            return self
        return GsData(tuple(tuple(float(x) for x in row) for row in self.mu),
                      tuple(float(x) for x in self.normsq), "float")


def integral_gs(G: GramMatrix | Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Integral Gram-Schmidt data ``(D, lam)`` of an integer Gram matrix.

    ``D[i]`` is the i-th leading Gram minor (``D[0] = 1``), so
    ``|b*_i|^2 = D[i+1] / D[i]``, and ``lam[i][j] = D[j+1] mu[i][j]`` is an
    integer for ``j < i``. Every division in the recurrence is exact.
    """
    G = G.entries if isinstance(G, GramMatrix) else G
    n = len(G)
    D = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = int(G[i][j])
            for k in range(j):
                u = (D[k + 1] * u - lam[i][k] * lam[j][k]) // D[k]
            if j < i:
                lam[i][j] = u
            else:
                if u <= 0:
                    raise DegenerateBasis(f"|b*_{i}|^2 = 0: vectors are dependent")
                D[i + 1] = u
    return D, lam


def gram_schmidt(basis: LatticeBasis | GramMatrix, mode: Mode = "exact") -> GsData:
    """Gram-Schmidt data computed from the Gram matrix.

    ``mode="exact"`` yields Fractions via the integral recurrence;
    ``mode="float"`` runs the classical recurrence in double precision.
    """
    G = basis.entries if isinstance(basis, GramMatrix) else gram(basis).entries
    n = len(G)
    if mode == "exact":
        D, lam = integral_gs(G)
        mu = tuple(tuple(Fraction(lam[i][j], D[j + 1]) if j < i else Fraction(int(i == j))
                         for j in range(n)) for i in range(n))
        return GsData(mu, tuple(Fraction(D[i + 1], D[i]) for i in range(n)), "exact")
    mu = [[0.0] * n for _ in range(n)]
    r = [[0.0] * n for _ in range(n)]
    normsq = [0.0] * n
    for i in range(n):
        mu[i][i] = 1.0
        for j in range(i + 1):
            s = float(G[i][j])
            for k in range(j):
                s -= mu[j][k] * r[i][k]
            r[i][j] = s
            if j < i:
                mu[i][j] = s / normsq[j]
        if r[i][i] <= 0:
            raise DegenerateBasis(f"|b*_{i}|^2 <= 0 in floating point; use exact mode")
        normsq[i] = r[i][i]
    return GsData(tuple(map(tuple, mu)), tuple(normsq), "float")


def is_obtuse(basis: LatticeBasis | GramMatrix) -> bool:
    G = basis if isinstance(basis, GramMatrix) else gram(basis)
    return all(G.entries[i][j] <= 0 for i in range(G.n) for j in range(i))


def obtuseness(basis: LatticeBasis) -> int:
    """Number of pairs with a strictly positive inner product (0 means obtuse)."""
    G = gram(basis).entries
    return sum(1 for i in range(len(G)) for j in range(i) if G[i][j] > 0)


def change_of_basis(b1: LatticeBasis, b2: LatticeBasis) -> list[list[Fraction]] | None:
    """The rational matrix ``U`` with ``b2 = U @ b1``, or None if ``b2`` leaves span(b1)."""
    if b1.n != b2.n or b1.m != b2.m:
        raise ValueError("bases must have equal shape")
    try:
        N, d = linalg.inverse(gram(b1).entries)
    except ZeroDivisionError:
        raise DegenerateBasis("first basis is degenerate") from None
    cross = [[dot(u, v) for v in b1.vectors] for u in b2.vectors]
    U = [[Fraction(x, d) for x in row] for row in linalg.matmul(cross, N)]
    for urow, target in zip(U, b2.vectors):
        recon = [sum(c * v[k] for c, v in zip(urow, b1.vectors)) for k in range(b1.m)]
        if recon != list(target):
            return None
    return U


def same_lattice(b1: LatticeBasis, b2: LatticeBasis) -> bool:
    """True iff ``b2 = U @ b1`` for an integer ``U`` with ``det U = +-1``."""
    U = change_of_basis(b1, b2)
    if U is None or any(x.denominator != 1 for row in U for x in row):
        return False
    return abs(linalg.det([[int(x) for x in row] for row in U])) == 1


@dataclass(frozen=True)
class UnimodularTransform:
    """Integer ``U`` with new basis ``= U @ old``. ``det`` is cached."""

    matrix: tuple[tuple[int, ...], ...]
    det: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "det", linalg.det(self.matrix))

    @classmethod
    def identity(cls, n: int) -> UnimodularTransform:
        return cls(tuple(map(tuple, linalg.identity(n))))

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def apply(self, basis: LatticeBasis) -> LatticeBasis:
        return LatticeBasis(linalg.matmul(self.matrix, basis.vectors), check=False)

    def then(self, other: UnimodularTransform) -> UnimodularTransform:
        """The transform applying ``self`` first, then ``other``."""
        return UnimodularTransform(tuple(map(tuple, linalg.matmul(other.matrix, self.matrix))))


Method = Literal["signflip", "obtuse", "lll", "composed"]


@dataclass(frozen=True)
class ReductionReport:
    """Result of a reduction.

    ``order`` lists output positions in the order the vectors were fixed,
    when the method has one (the clique-growing reduction does).
    """

    output: LatticeBasis
    transform: UnimodularTransform
    method: Method
    iterations: int = 0
    success: bool = True
    order: tuple[int, ...] | None = None
    max_coeff_bits: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "max_coeff_bits", self.output.max_coeff_bits())

    def summary(self) -> dict:
        return {
            "method": self.method,
            "success": self.success,
            "iterations": self.iterations,
            "max_coeff_bits": self.max_coeff_bits,
            "transform_det": self.transform.det,
            "is_obtuse": is_obtuse(self.output),
            "order": list(self.order) if self.order is not None else None,
        }


# -- basis text format -------------------------------------------------------

_INT = re.compile(r"-?\d+")


def parse_basis(text: str) -> LatticeBasis:
    """Parse whitespace-separated integer rows, optionally fplll-bracketed.

    Bracketed input ``[[1 2][3 4]]`` is split on ``]``; plain input is read
    one row per non-empty line.
    """
    body = text.strip()
    if body.startswith("["):
        chunks = [c for c in body.replace(",", " ").split("]") if _INT.search(c)]
    else:
        chunks = [line for line in body.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    rows = []
    for chunk in chunks:
        cleaned = chunk.replace("[", " ").replace(",", " ")
        tokens = cleaned.split()
        if not all(_INT.fullmatch(t) for t in tokens):
            raise ValueError(f"non-integer entry in row {chunk.strip()!r}")
        rows.append([int(t) for t in tokens])
    if not rows:
        raise ValueError("no basis rows found")
    return LatticeBasis(rows)


def format_basis(basis: LatticeBasis) -> str:
    return "".join(" ".join(str(x) for x in v) + "\n" for v in basis.vectors)


def read_basis(path: str | Path) -> LatticeBasis:
    return parse_basis(Path(path).read_text())


def write_basis(path: str | Path, basis: LatticeBasis) -> None:
    Path(path).write_text(format_basis(basis))
