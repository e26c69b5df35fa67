"""Dense three-way tensors with exact rational or float entries."""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Dims, factor_axis


def _as_fraction_array(data) -> np.ndarray:
    arr = np.asarray(data, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = Fraction(arr[idx])
    return out


class Tensor3:
    """An ``a x b x c`` array.

    In exact mode (the default) entries are ``Fraction`` objects held in an
    object array; numeric mode stores float64.
    """

    def __init__(self, entries, exact: bool = True):
        if exact:
            arr = _as_fraction_array(entries)
        else:
            arr = np.asarray(entries, dtype=float)
        if arr.ndim != 3:
            raise ValueError(f"expected a 3-way array, got shape {arr.shape}")
        self.entries = arr
        self.exact = exact

    @classmethod
    def zeros(cls, dims: Dims, exact: bool = True) -> Tensor3:
        return cls(np.zeros(dims, dtype=int), exact=exact)

    @classmethod
    def unit(cls, i: int, j: int, k: int, dims: Dims) -> Tensor3:
        """The basis tensor e_i (x) e_j (x) e_k (0-based)."""
        arr = np.zeros(dims, dtype=int)
        arr[i, j, k] = 1
        return cls(arr)

    @classmethod
    def rank_one(cls, a: Sequence, b: Sequence, c: Sequence) -> Tensor3:
        a, b, c = (np.asarray([Fraction(x) for x in v], dtype=object) for v in (a, b, c))
        return cls(np.einsum("i,j,k->ijk", a, b, c))

    @property
    def dims(self) -> Dims:
        return tuple(self.entries.shape)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and bool(np.all(self.entries == other.entries))

    def __add__(self, other: Tensor3) -> Tensor3:
        return Tensor3(self.entries + other.entries, exact=self.exact and other.exact)

    def __sub__(self, other: Tensor3) -> Tensor3:
        return Tensor3(self.entries - other.entries, exact=self.exact and other.exact)

    def __mul__(self, s) -> Tensor3:
        return Tensor3(self.entries * (Fraction(s) if self.exact else s), exact=self.exact)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Tensor3(dims={self.dims}, exact={self.exact})"

    def to_numeric(self) -> Tensor3:
        return Tensor3(self.entries.astype(float), exact=False)

    def slice(self, index: int, factor: str | int = "C") -> np.ndarray:
        """The matrix obtained by fixing one factor index (0-based).

        For ``factor="C"`` this is the ``a x b`` matrix ``T_k``; for ``"A"`` it is
        the ``b x c`` slice ``T_i``, so that ``T = sum_i a_i (x) T_i``.
        """
        ax = factor_axis(factor)
        return np.take(self.entries, index, axis=ax)

    def flattening(self, factor: str | int) -> np.ndarray:
        """Matrix with rows indexed by one factor, columns by the other two in lex order."""
        ax = factor_axis(factor)
        order = [ax] + [f for f in range(3) if f != ax]
        arr = np.transpose(self.entries, order)
        return arr.reshape(arr.shape[0], -1)

    def permute_factors(self, order: Sequence[int]) -> Tensor3:
        return Tensor3(np.transpose(self.entries, order), exact=self.exact)

    def embed(self, dims: Dims) -> Tensor3:
        """Zero-pad into a larger ambient space."""
        if any(n < m for n, m in zip(dims, self.dims)):
            raise ValueError(f"cannot embed {self.dims} into {dims}")
        arr = np.zeros(dims, dtype=object if self.exact else float)
        if self.exact:
            arr[...] = Fraction(0)
        a, b, c = self.dims
        arr[:a, :b, :c] = self.entries
        return Tensor3(arr, exact=self.exact)

    def contract(self, phiA, phiB, phiC) -> Tensor3:
        """``T'[i',j',k'] = sum phiA[i,i'] phiB[j,j'] phiC[k,k'] T[i,j,k]``."""
        mats = []
        for phi, n in zip((phiA, phiB, phiC), self.dims):
            M = np.asarray(phi, dtype=object if self.exact else float)
            if M.ndim != 2 or M.shape[0] != n:
                raise ValueError(f"compression map of shape {M.shape} does not match factor dimension {n}")
            mats.append(M)
        out = self.entries
        for ax, M in enumerate(mats):
            out = np.tensordot(out, M, axes=([0], [0]))
        # tensordot moves each contracted axis to the end, so after three steps order is restored
        return Tensor3(out, exact=self.exact)

    def apply_basis_change(self, gA, gB, gC) -> Tensor3:
        """Action of (gA, gB, gC) in GL(a) x GL(b) x GL(c): T' = (gA (x) gB (x) gC) T."""
        return self.contract(np.asarray(gA, dtype=object).T, np.asarray(gB, dtype=object).T,
                             np.asarray(gC, dtype=object).T)

    def integer_scaled(self) -> tuple[np.ndarray, int]:
        """Integer array ``N`` and denominator ``D`` with ``T = N / D``."""
        if not self.exact:
            raise ValueError("integer scaling needs exact entries")
        den = math.lcm(1, *(x.denominator for x in self.entries.flat))
        out = np.empty(self.dims, dtype=object)
        for idx in np.ndindex(self.dims):
            out[idx] = int(self.entries[idx] * den)
        return out, den

    # -- JSON ---------------------------------------------------------------
    def to_json_obj(self) -> dict:
        flat = [str(x) if self.exact else repr(float(x)) for x in self.entries.reshape(-1)]
        a, b, c = self.dims
        entries = [flat[i * b * c:(i + 1) * b * c] for i in range(a)]
        return {"dims": list(self.dims), "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict, exact: bool = True) -> Tensor3:
        try:
            dims = tuple(int(n) for n in obj["dims"])
            raw = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed tensor JSON: {exc}") from None
        if len(dims) != 3:
            raise ValueError("tensor JSON needs three dims")
        flat = []
        for row in raw:
            if isinstance(row, list):
                flat.extend(row)
            else:
                flat.append(row)
        if len(flat) != dims[0] * dims[1] * dims[2]:
            raise ValueError(f"tensor JSON has {len(flat)} entries, expected {dims[0] * dims[1] * dims[2]}")
        vals = [Fraction(str(x)) for x in flat]
        arr = np.empty(len(vals), dtype=object)
        arr[:] = vals
        t = cls(arr.reshape(dims))
        return t if exact else t.to_numeric()

    @classmethod
    def from_json(cls, text: str, exact: bool = True) -> Tensor3:
        return cls.from_json_obj(json.loads(text), exact=exact)


def random_matrix(rng: np.random.Generator, shape: tuple[int, int], bound: int) -> np.ndarray:
    """Integer matrix with entries uniform in [-bound, bound], as Python ints."""
    raw = rng.integers(-bound, bound + 1, size=shape)
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(shape):
        out[idx] = int(raw[idx])
    return out
