"""Determinantal equations: the 3b x 3c block matrix psi_T, the degree-9 hypersurface
equation for 3x3x3 tensors, maximal-minor classes, and flattening ranks."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

import numpy as np

from .algebra import Dims, Monomial, Polynomial, canonicalize
from .linalg import exact_det, exact_rank
from .tensor import Tensor3

# block (R, S) of psi is BLOCKS[R][S] = (sign, A-index) or None for a zero block
BLOCKS = (
    (None, (1, 2), (-1, 1)),
    ((-1, 2), None, (1, 0)),
    ((1, 1), (-1, 0), None),
)


def build_psi(T: Tensor3) -> np.ndarray:
    """``[[0, T3, -T2], [-T3, 0, T1], [T2, -T1, 0]]`` where ``T_i`` is the i-th A-slice (b x c)."""
    a, b, c = T.dims
    if a != 3:
        raise ValueError(f"psi needs a = 3 (three slices), got dims {T.dims}; compress first")
    dtype = object if T.exact else float
    out = np.zeros((3 * b, 3 * c), dtype=dtype)
    if T.exact:
        out[...] = Fraction(0)
    for R in range(3):
        for S in range(3):
            blk = BLOCKS[R][S]
            if blk is None:
                continue
            sign, i = blk
            out[R * b:(R + 1) * b, S * c:(S + 1) * c] = sign * T.slice(i, "A")
    return out


def psi_rank(T: Tensor3) -> int:
    return exact_rank(build_psi(T))


def strassen_det(T: Tensor3) -> Fraction:
    """``det psi_T`` for a 3x3x3 tensor."""
    if T.dims != (3, 3, 3):
        raise ValueError(f"the 9x9 determinant needs dims (3,3,3), got {T.dims}")
    return exact_det(build_psi(T))


def strassen_commutator_form(T: Tensor3) -> Fraction:
    """``det(T1)^2 det(T2 T1^-1 T3 - T3 T1^-1 T2)``; requires T1 invertible."""
    if T.dims != (3, 3, 3):
        raise ValueError(f"commutator form needs dims (3,3,3), got {T.dims}")
    T1, T2, T3 = (_fmat(T.slice(i, "A")) for i in range(3))
    d1 = exact_det(T1)
    if d1 == 0:
        raise ValueError("T1 is singular")
    inv = _inverse(T1)
    M = _sub(_mul(_mul(T2, inv), T3), _mul(_mul(T3, inv), T2))
    return d1 * d1 * exact_det(M)


def _fmat(arr) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in arr]


def _mul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]


def _sub(X, Y):
    return [[x - y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _inverse(M):
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _symbolic_psi(b: int, c: int):
    """Entry (row, col) -> (sign, variable) for the nonzero entries of psi."""
    entries = {}
    for R in range(3):
        for S in range(3):
            blk = BLOCKS[R][S]
            if blk is None:
                continue
            sign, i = blk
            for j in range(b):
                for k in range(c):
                    entries[(R * b + j, S * c + k)] = (sign, (i, j, k))
    return entries


def strassen_poly(dims: Dims = (3, 3, 3)) -> Polynomial:
    """Symbolic expansion of ``det psi_T`` in the 27 coordinates of a 3x3x3 tensor.

    Rows are expanded one at a time with the polynomial for every set of used
    columns memoised (a Laplace expansion), so the zero blocks are skipped for
    free.
    """
    if tuple(dims) != (3, 3, 3):
        raise ValueError(f"the hypersurface equation lives on dims (3,3,3), got {dims}")
    n = 9
    entries = _symbolic_psi(3, 3)
    row_cols = [[(col, entries[(r, col)]) for col in range(n) if (r, col) in entries] for r in range(n)]
    layer: dict[int, dict[Monomial, int]] = {0: {(): 1}}
    for r in range(n):
        nxt: dict[int, dict[Monomial, int]] = {}
        for mask, poly in layer.items():
            for col, (sign, var) in row_cols[r]:
                if mask >> col & 1:
                    continue
                # inversions created by placing column `col` after the already used ones
                s = sign * (-1 if bin(mask >> (col + 1)).count("1") % 2 else 1)
                target = nxt.setdefault(mask | 1 << col, {})
                for m, coef in poly.items():
                    nm = tuple(sorted(m + (var,)))
                    v = target.get(nm, 0) + s * coef
                    if v:
                        target[nm] = v
                    else:
                        del target[nm]
        layer = nxt
    return canonicalize(Polynomial(layer[(1 << n) - 1], (3, 3, 3)))


def strassen_raw_sign() -> int:
    """Sign relating ``det psi`` to the canonical ``strassen_poly``.

    ``det psi_T = strassen_raw_sign() * strassen_poly()(T)``.  Computed from
    one unit-coefficient evaluation so the relation is never assumed.
    """
    p = strassen_poly()
    T = _sign_probe()
    v = p.evaluate(T)
    return 1 if strassen_det(T) == v else -1


def _sign_probe() -> Tensor3:
    rng = np.random.default_rng(12345)
    return Tensor3(rng.integers(-9, 10, size=(3, 3, 3)))


# -- maximal minors ------------------------------------------------------------

def column_blocks(c: int) -> list[range]:
    return [range(s * c + 1, (s + 1) * c + 1) for s in range(3)]


def minor_class(I: Iterable[int], dims: Dims = (3, 3, 4)) -> tuple[int, int, int] | str:
    """Intersection pattern of a 9-column selection with the three column blocks.

    Returns the pattern sorted in decreasing order when it is one of (3,3,3),
    (4,3,2) or (4,4,1), and ``"other"`` otherwise.
    """
    cols = sorted(set(int(x) for x in I))
    b, c = dims[1], dims[2]
    if len(cols) != 3 * b:
        raise ValueError(f"a maximal minor needs {3 * b} columns, got {len(cols)}")
    if cols[0] < 1 or cols[-1] > 3 * c:
        raise ValueError(f"column indices must lie in 1..{3 * c}")
    pattern = tuple(sorted((sum(1 for x in cols if x in blk) for blk in column_blocks(c)), reverse=True))
    return pattern if pattern in ((3, 3, 3), (4, 3, 2), (4, 4, 1)) else "other"


def minor_class_counts(dims: Dims = (3, 3, 4)) -> dict:
    """Number of maximal minors in each class."""
    from itertools import combinations
    b, c = dims[1], dims[2]
    out: dict = {}
    for I in combinations(range(1, 3 * c + 1), 3 * b):
        key = minor_class(I, dims)
        out[key] = out.get(key, 0) + 1
    assert sum(out.values()) == comb(3 * c, 3 * b)
    return out


# -- flattenings and subspace varieties --------------------------------------

def flattening(T: Tensor3, mode: str | int) -> np.ndarray:
    """Mode-A gives an a x (b*c) matrix, columns lex in (j, k); likewise for B and C."""
    return T.flattening(mode)


def flattening_ranks(T: Tensor3) -> tuple[int, int, int]:
    return tuple(exact_rank(T.flattening(f)) for f in range(3))


def subspace_test(T: Tensor3, target: Dims) -> bool:
    """Membership in Sub_{a',b',c'}: every flattening rank is at most its target."""
    return all(r <= t for r, t in zip(flattening_ranks(T), target))
