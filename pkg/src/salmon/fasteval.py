"""Exact batch evaluation of many polynomials by multi-modular arithmetic.

Each polynomial is evaluated modulo several primes below 2^31 with vectorised
int64 numpy code, and the integer value is recovered by the Chinese remainder
theorem.  The number of primes is chosen from the a priori bound
``sum |coeff| * max|entry|^d`` so that the product of the moduli exceeds twice
the largest possible absolute value: the reconstruction is exact, not a
heuristic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import Polynomial
from .tensor import Tensor3


@lru_cache(maxsize=None)
def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    n = limit - 1
    while len(out) < count:
        if n % 2 and all(n % q for q in range(3, math.isqrt(n) + 1, 2)):
            out.append(n)
        n -= 1
    return tuple(out)


def primes(count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2^31, in decreasing order."""
    return _primes_below(1 << 31, count)


class CompiledPolynomials:
    """A fixed list of homogeneous polynomials of one degree, ready for evaluation."""

    def __init__(self, polys: Sequence[Polynomial], dims):
        self.dims = tuple(dims)
        self.count = len(polys)
        degs = {p.degree for p in polys if p}
        if len(degs) > 1:
            raise ValueError(f"polynomials of mixed degrees {sorted(degs)}")
        self.degree = degs.pop() if degs else 0
        a, b, c = self.dims
        var_rows = []
        coefs = []
        lengths = []
        self.coef_bound = 0
        for p in polys:
            lengths.append(len(p))
            s = 0
            for m, coef in p.terms.items():
                var_rows.append([v[0] * b * c + v[1] * c + v[2] for v in m])
                coefs.append(int(coef))
                s += abs(int(coef))
            self.coef_bound = max(self.coef_bound, s)
        self.vars = np.asarray(var_rows, dtype=np.int64).reshape(len(var_rows), self.degree)
        self._cols = [np.ascontiguousarray(self.vars[:, k]) for k in range(self.degree)]
        self.coefs = coefs
        self.lengths = np.asarray(lengths, dtype=np.int64)
        self.starts = np.concatenate([[0], np.cumsum(self.lengths)[:-1]]).astype(np.int64)
        self._coef_mod: dict[int, np.ndarray] = {}

    def _coefs_mod(self, p: int) -> np.ndarray:
        arr = self._coef_mod.get(p)
        if arr is None:
            arr = np.asarray([c % p for c in self.coefs], dtype=np.int64)
            self._coef_mod[p] = arr
        return arr

    def _residues(self, flat: np.ndarray, p: int) -> np.ndarray:
        vals = np.asarray([x % p for x in flat], dtype=np.int64)
        if not len(self.coefs):
            return np.zeros(self.count, dtype=np.int64)
        acc = self._coefs_mod(p).copy()
        for col in self._cols:
            acc *= vals[col]
            acc %= p
        out = np.zeros(self.count, dtype=np.int64)
        nonempty = self.lengths > 0
        # partial sums of < 2^31 residues stay far below 2^63 for any realistic term count
        sums = np.add.reduceat(acc, self.starts[nonempty]) if nonempty.any() else np.zeros(0, np.int64)
        out[nonempty] = sums % p
        return out

    def integer_values(self, ints: Sequence[int]) -> list[int]:
        """Exact values at an integer point given as a flat row-major list."""
        flat = [int(x) for x in ints]
        M = max((abs(x) for x in flat), default=0)
        bound = self.coef_bound * M ** self.degree
        need = 1
        prod = 1
        while prod <= 2 * bound:
            need += 1
            prod = math.prod(primes(need))
        mods = primes(need)
        res = [self._residues(np.asarray(flat, dtype=object), p).tolist() for p in mods]
        # incremental CRT: x_{s+1} = x_s + m_s * ((r_s - x_s) * m_s^{-1} mod p_s)
        moduli = [1]
        for p in mods:
            moduli.append(moduli[-1] * p)
        invs = [pow(m % p, -1, p) for m, p in zip(moduli, mods)]
        out = []
        for idx in range(self.count):
            x = 0
            for p, r, m, inv in zip(mods, res, moduli, invs):
                x += m * (((r[idx] - x) * inv) % p)
            if x > moduli[-1] // 2:
                x -= moduli[-1]
            out.append(x)
        return out

    def values(self, tensor: Tensor3) -> list[Fraction]:
        """Exact values at a rational tensor."""
        if tuple(tensor.dims) != self.dims:
            raise ValueError(f"tensor dims {tensor.dims} differ from polynomial dims {self.dims}")
        N, D = tensor.integer_scaled()
        ints = self.integer_values(N.reshape(-1).tolist())
        scale = D ** self.degree
        return [Fraction(v, scale) for v in ints]

    def nonzero_indices(self, tensor: Tensor3) -> list[int]:
        return [i for i, v in enumerate(self.values(tensor)) if v != 0]

    def float_values(self, tensor) -> tuple[np.ndarray, np.ndarray]:
        """Double-precision values and the matching scale ``sum|coeff| * max|entry|^d`` per polynomial."""
        arr = np.asarray(tensor.entries if hasattr(tensor, "entries") else tensor, dtype=float).reshape(-1)
        coefs = np.asarray([float(c) for c in self.coefs])
        acc = coefs.copy()
        for col in self._cols:
            acc *= arr[col]
        out = np.zeros(self.count)
        scale = np.zeros(self.count)
        nonempty = self.lengths > 0
        if nonempty.any():
            out[nonempty] = np.add.reduceat(acc, self.starts[nonempty])
            scale[nonempty] = np.add.reduceat(np.abs(coefs), self.starts[nonempty])
        scale *= float(np.max(np.abs(arr), initial=0.0)) ** self.degree
        return out, scale
