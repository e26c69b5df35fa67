"""Exact linear algebra over the rationals.

Dense routines use fraction-free (Bareiss) elimination on Python integers after
clearing row denominators.  Large sparse spans of polynomial coefficient
vectors are tracked modulo a 61-bit prime: a vector that is nonzero modulo the
prime after reduction is certainly independent over Q, because reduction mod p
can only lower rank.
"""
from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

PRIME = (1 << 61) - 1


def _integer_rows(M) -> list[list[int]]:
    rows = []
    for row in M:
        vals = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in vals)) if vals else 1
        rows.append([int(x * den) for x in vals])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[int, list[list[int]], list[int]]:
    """In-place fraction-free echelon form; returns (rank, rows, pivot columns)."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, n):
            a = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, m):
                ri[j] = (p * ri[j] - a * rr[j]) // prev
            ri[c] = 0
        prev = p
        pivots.append(c)
        r += 1
        if r == n:
            break
    return r, rows, pivots


def exact_rank(M) -> int:
    """Rank over Q of a matrix of ints/Fractions (any 2-D array-like)."""
    rows = _integer_rows(M)
    if not rows or not rows[0]:
        return 0
    # eliminate along the shorter side
    if len(rows) > len(rows[0]):
        rows = [list(col) for col in zip(*rows)]
    return _bareiss(rows)[0]


def exact_det(M) -> Fraction:
    """Determinant over Q of a square matrix."""
    vals = [[Fraction(x) for x in row] for row in M]
    n = len(vals)
    if any(len(row) != n for row in vals):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    dens = [math.lcm(*(x.denominator for x in row)) for row in vals]
    rows = [[int(x * d) for x in row] for row, d in zip(vals, dens)]
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, n):
            a = rows[i][c]
            for j in range(c + 1, n):
                rows[i][j] = (p * rows[i][j] - a * rows[c][j]) // prev
            rows[i][c] = 0
        prev = p
    return Fraction(sign * rows[n - 1][n - 1], math.prod(dens))


def kernel(M) -> list[list[Fraction]]:
    """Basis of the right kernel {x : M x = 0} over Q."""
    rows = [[Fraction(x) for x in row] for row in M]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def left_kernel(M) -> list[list[Fraction]]:
    """Basis of {y : y^T M = 0}."""
    if not len(M):
        return []
    return kernel([list(col) for col in zip(*M)])


def modular_rank(M, p: int = PRIME) -> int:
    """Rank of an integer matrix modulo ``p`` (a lower bound for the rank over Q)."""
    rows = [[int(x) % p for x in row] for row in M]
    n = len(rows)
    m = len(rows[0]) if n else 0
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rr = [(x * inv) % p for x in rows[r]]
        rows[r] = rr
        for i in range(r + 1, n):
            a = rows[i][c]
            if a:
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], rr)]
        r += 1
    return r


class SparseSpan:
    """Incrementally maintained span of sparse integer vectors, reduced mod p.

    Vectors are mappings ``key -> coefficient`` with hashable, orderable keys
    (monomials).  ``add`` reduces against the current echelon rows and keeps the
    vector if anything survives; a surviving vector is certainly independent
    over Q.
    """

    def __init__(self, p: int = PRIME):
        self.p = p
        self.rows: dict[Hashable, dict[Hashable, int]] = {}  # pivot key -> normalised row
        self._order: list = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[Hashable, int]) -> dict[Hashable, int]:
        p = self.p
        v = {k: c % p for k, c in vec.items() if c % p}
        # a row only has keys >= its pivot, so one ascending pass over the pivots suffices
        for piv in self._order:
            a = v.get(piv)
            if not a:
                continue
            for k, c in self.rows[piv].items():
                nv = (v.get(k, 0) - a * c) % p
                if nv:
                    v[k] = nv
                else:
                    del v[k]
        return v

    def add(self, vec: Mapping[Hashable, int]) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = pow(v[piv], -1, self.p)
        self.rows[piv] = {k: (c * inv) % self.p for k, c in v.items()}
        bisect.insort(self._order, piv)
        return True

    def contains(self, vec: Mapping[Hashable, int]) -> bool:
        return not self.reduce(vec)


def sparse_rank(vectors: Iterable[Mapping[Hashable, int]], p: int = PRIME) -> int:
    span = SparseSpan(p)
    for v in vectors:
        span.add(v)
    return len(span)


def to_fraction_matrix(M) -> np.ndarray:
    arr = np.asarray(M, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = Fraction(arr[idx])
    return out


def matmul_exact(X: Sequence[Sequence], Y: Sequence[Sequence]) -> list[list]:
    Yt = list(zip(*Y))
    return [[sum(a * b for a, b in zip(row, col)) for col in Yt] for row in X]
