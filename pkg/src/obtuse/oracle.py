"""Brute-force ground truth for small lattices.

Nothing here touches the enumeration engine. Shortest vectors come from a
plain scan of a coefficient box with exact integer norms, and flip patterns
from trying all ``2^n`` of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .core import LatticeBasis, gram, is_obtuse
from .lll import lll_reduce
from .signgraph import SignGraph

MAX_SVP_DIM = 8
MAX_FLIP_DIM = 12
MAX_WITNESSES = 10_000
MAX_BOX_POINTS = 60_000_000
_CHUNK = 1 << 18


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    """``witnesses`` are coefficient vectors in the input basis.

    ``box_bound`` is the per-coordinate bound of the scanned box, taken in
    the coordinates of ``scan_basis`` (the LLL-reduced basis unless the scan
    ran on the input directly).
    """

    lambda1_sq: int
    witnesses: tuple[tuple[int, ...], ...]
    box_bound: tuple[int, ...]
    overflow: bool = False
    scan_basis: LatticeBasis | None = None


def dual_box(basis: LatticeBasis, radius_sq: int | None = None, scale: int = 1) -> list[int]:
    """Bounds ``C_i`` with ``|v_i| <= C_i`` for every ``sum v_i b_i`` of norm at most ``R``.

    ``v_i`` is the inner product of the vector with the i-th dual basis
    vector ``d_i``, and ``|d_i|^2 = (G^{-1})_ii``, so ``|v_i| <= R |d_i|``.
    ``R^2`` defaults to the shortest basis norm.
    """
    G = gram(basis).entries
    if radius_sq is None:
        radius_sq = min(G[i][i] for i in range(len(G)))
    N, d = linalg.inverse(G)
    return [scale * math.isqrt(radius_sq * N[i][i] // d) for i in range(len(G))]


def _scan(G: np.ndarray | list, box: list[int], exact: bool):
    """Minimum nonzero quadratic form over the box and all its minimizers."""
    n = len(box)
    sizes = [2 * c + 1 for c in box]
    total = math.prod(sizes)
    if total > MAX_BOX_POINTS:
        raise ValueError(f"coefficient box has {total} points; too large to scan")
    offs = np.array(box, dtype=np.int64)
    best = None
    found: list[np.ndarray] = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        V = np.stack(np.unravel_index(idx, sizes), axis=1).astype(np.int64) - offs
        if exact:
            Vo = V.astype(object)
            norms = np.einsum("ij,jk,ik->i", Vo, np.asarray(G, dtype=object), Vo)
        else:
            norms = np.einsum("ij,jk,ik->i", V, G, V)
        nz = V.any(axis=1)
        if not nz.any():
            continue
        m = norms[nz].min()
        if best is None or m < best:
            best = m
            found = []
        if m == best:
            found.append(V[nz & (norms == best)])
    return int(best), np.concatenate(found) if found else np.zeros((0, n), dtype=np.int64)


def brute_force_svp(basis: LatticeBasis, *, reduce: bool = True, scale: int = 1,
                    max_witnesses: int = MAX_WITNESSES) -> OracleResult:
    """Exhaustive shortest-vector search for ``n <= 8``.

    With ``reduce`` (the default) the box is scanned in an LLL-reduced basis
    of the same lattice, where it is small, and every minimizer is mapped
    back to coefficients of the input basis exactly. ``scale`` multiplies
    every box bound.
    """
    n = basis.n
    if n > MAX_SVP_DIM:
        raise DimensionTooLarge(f"brute force is limited to n <= {MAX_SVP_DIM}, got {n}")
    if reduce:
        rep = lll_reduce(basis)
        scan, U = rep.output, rep.transform.matrix
    else:
        scan, U = basis, None
    G = gram(scan).entries
    box = dual_box(scan, scale=scale)
    bound = sum(abs(g) for row in G for g in row) * max(box) ** 2
    exact = bound >= 2 ** 62
    Gm = G if exact else np.array(G, dtype=np.int64)
    lam1, W = _scan(Gm, box, exact)
    overflow = len(W) > max_witnesses
    W = W[:max_witnesses]
    wit = []
    for w in W.tolist():
        if U is not None:
            w = [sum(wk * U[k][j] for k, wk in enumerate(w)) for j in range(n)]
        wit.append(tuple(int(x) for x in w))
    return OracleResult(lam1, tuple(sorted(wit)), tuple(box), overflow, scan)


def check_same_sign(basis: LatticeBasis, result: OracleResult) -> bool:
    """True iff some shortest witness has all coefficients >= 0 or all <= 0."""
    if not is_obtuse(basis):
        raise ValueError("check_same_sign expects an obtuse basis")
    return any(all(x >= 0 for x in w) or all(x <= 0 for x in w) for w in result.witnesses)


def exhaustive_flip_search(g: SignGraph) -> tuple[bool, ...] | None:
    """First flip pattern, in binary counting order, leaving every edge ``<= 0``.

    Bit ``i`` of the pattern negates vertex ``i``.
    """
    n = g.n
    if n > MAX_FLIP_DIM:
        raise DimensionTooLarge(f"flip search is limited to n <= {MAX_FLIP_DIM}, got {n}")
    W = g.weight
    pairs = [(i, j, W[i][j]) for i in range(n) for j in range(i + 1, n) if W[i][j]]
    for mask in range(1 << n):
        ok = True
        for i, j, w in pairs:
            flipped = ((mask >> i) ^ (mask >> j)) & 1
            if (w > 0) != bool(flipped):
                ok = False
                break
        if ok:
            return tuple(bool(mask >> i & 1) for i in range(n))
    return None
