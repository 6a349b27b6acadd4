"""Fraction-free exact linear algebra over Python integers.

Every routine here works on lists of lists of ``int`` and never rounds.
Rational results are returned as an integer numerator matrix together with
a common positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from gmpy2 import mpz

Matrix = list[list[int]]


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss elimination with row pivoting."""
    n = len(M)
    if n == 0:
        return 1
    a = [[mpz(x) for x in row] for row in M]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        p = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (p * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = p
    return sign * int(a[n - 1][n - 1])


def leading_minors(M: Sequence[Sequence[int]]) -> list[int]:
    """All leading principal minors ``det(M[:k, :k])`` for k = 1..n.

    Uses a single pivot-free Bareiss pass, whose k-th pivot is the k-th
    leading minor; falls back to direct determinants after a zero pivot.
    """
    n = len(M)
    a = [[mpz(x) for x in row] for row in M]
    minors: list[int] = []
    prev = mpz(1)
    for k in range(n):
        p = a[k][k]
        minors.append(int(p))
        if p == 0:
            minors.extend(det([row[:i] for row in M[:i]]) for i in range(k + 2, n + 1))
            return minors
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (p * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = p
    return minors


def solve_columns(M: Sequence[Sequence[int]],
                  cols: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Exact ``M^{-1} B`` for the columns ``cols`` of ``B``.

    Returns ``(X, d)`` with ``d > 0`` and ``M^{-1} B = X / d``, where ``X``
    is stored column by column like ``cols``. Runs fraction-free
    Gauss-Jordan on ``[M | B]`` with GMP integers; every division is exact.

    Raises ZeroDivisionError if ``M`` is singular.
    """
    n = len(M)
    a = [[mpz(x) for x in row] + [mpz(c[i]) for c in cols] for i, row in enumerate(M)]
    w = n + len(cols)
    prev = mpz(1)
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    break
            else:
                raise ZeroDivisionError("singular matrix")
        p = a[k][k]
        rk = a[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            f = ri[k]
            if f == 0:
                # row i is only rescaled: p * r / prev
                for j in range(k + 1, w):
                    ri[j] = p * ri[j] // prev
                continue
            for j in range(k + 1, w):
                ri[j] = (p * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = p
    # columns before the pivot are never read again; the last pivot is the denominator
    d = int(prev)
    sign = -1 if d < 0 else 1
    X = [[sign * int(a[i][n + c]) for i in range(n)] for c in range(len(cols))]
    return X, sign * d


def inverse(M: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Exact inverse of a nonsingular integer matrix as ``(N, d)``, ``M^{-1} = N / d``.

    Raises ZeroDivisionError if ``M`` is singular.
    """
    n = len(M)
    X, d = solve_columns(M, identity(n))
    return [list(row) for row in zip(*X)], d


def solve(M: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Exact solution of ``M x = b`` as a list of Fractions."""
    N, d = inverse(M)
    return [Fraction(sum(nij * bj for nij, bj in zip(row, b)), d) for row in N]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]
