"""Textbook LLL in exact integer arithmetic.

Uses the integral variant (Cohen, *A Course in Computational Algebraic
Number Theory*, Alg. 2.6.7): Gram-Schmidt data is held as the integers
``d_i`` (leading Gram minors) and ``lam[i][j] = d_{j+1} mu[i][j]``, so no
rational arithmetic is needed.
"""
from __future__ import annotations

from fractions import Fraction

from .core import (DegenerateBasis, GsData, LatticeBasis, ReductionReport, UnimodularTransform,
                   dot, gram_schmidt)


def lll_reduce(basis: LatticeBasis, delta: float | Fraction = Fraction(99, 100)) -> ReductionReport:
    delta = Fraction(delta).limit_denominator(10**6)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    p, q = delta.numerator, delta.denominator
    n = basis.n
    b = [list(v) for v in basis.vectors]
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    lam = [[0] * n for _ in range(n)]
    D = [1] + [0] * n
    D[1] = dot(b[0], b[0])
    if D[1] == 0:
        raise DegenerateBasis("zero vector in basis")

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > D[l + 1]:
            r = (2 * lam[k][l] + D[l + 1]) // (2 * D[l + 1])
            b[k] = [x - r * y for x, y in zip(b[k], b[l])]
            H[k] = [x - r * y for x, y in zip(H[k], H[l])]
            lam[k][l] -= r * D[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (D[k - 1] * D[k + 1] + lk * lk) // D[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (D[k + 1] * lam[i][k - 1] - lk * t) // D[k]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // D[k + 1]
        D[k] = B

    k, kmax, swaps = 1, 0, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (D[i + 1] * u - lam[k][i] * lam[j][i]) // D[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise DegenerateBasis("basis vectors are linearly dependent")
                    D[k + 1] = u
        red(k, k - 1)
        if q * D[k + 1] * D[k - 1] < p * D[k] ** 2 - q * lam[k][k - 1] ** 2:
            swap(k, kmax)
            swaps += 1
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    out = LatticeBasis(b, check=False)
    return ReductionReport(out, UnimodularTransform(tuple(map(tuple, H))), "lll", swaps, True)


def is_lll_reduced(basis: LatticeBasis | GsData, delta: float | Fraction = Fraction(99, 100)) -> bool:
    """Size reduction ``|mu_ij| <= 1/2`` and the Lovasz condition, checked exactly."""
    gs = basis if isinstance(basis, GsData) else gram_schmidt(basis, "exact")
    delta = Fraction(delta).limit_denominator(10**6)
    half = Fraction(1, 2)
    for i in range(gs.n):
        if any(abs(gs.mu[i][j]) > half for j in range(i)):
            return False
        if i and gs.normsq[i] < (delta - gs.mu[i][i - 1] ** 2) * gs.normsq[i - 1]:
            return False
    return True
