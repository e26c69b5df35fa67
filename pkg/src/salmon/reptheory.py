"""Partitions, semistandard tableaux, characters of S_d and Kronecker coefficients.

Partitions are plain tuples of positive integers in weakly decreasing order.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

Partition = tuple[int, ...]

MAX_DEGREE = 9


def as_partition(parts) -> Partition:
    p = tuple(int(x) for x in parts if int(x) != 0)
    if any(x < 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"{parts!r} is not a partition")
    return p


@lru_cache(maxsize=None)
def partitions(n: int, max_length: int | None = None, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n``, reverse-lexicographic (``(n)`` first)."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    if max_length == 0:
        return ()
    out = []
    for first in range(max_part, 0, -1):
        rest_len = None if max_length is None else max_length - 1
        for rest in partitions(n - first, rest_len, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(p: Partition) -> Partition:
    return tuple(sum(1 for x in p if x > c) for c in range(p[0])) if p else ()


def cells(shape: Partition) -> list[tuple[int, int]]:
    """Cells (row, col) in row-major order."""
    return [(r, c) for r, n in enumerate(shape) for c in range(n)]


def hook_length(shape: Partition, r: int, c: int) -> int:
    return shape[r] - c + conjugate(shape)[c] - r - 1


def weyl_dimension(shape: Partition, n: int) -> int:
    """Dimension of the Schur module S_shape(C^n) by the hook-content formula."""
    if len(shape) > n:
        return 0
    num = 1
    den = 1
    conj = conjugate(shape)
    for r, c in cells(shape):
        num *= n + c - r
        den *= shape[r] - c + conj[c] - r - 1
    return num // den


def num_standard_tableaux(shape: Partition) -> int:
    conj = conjugate(shape)
    hooks = math.prod(shape[r] - c + conj[c] - r - 1 for r, c in cells(shape))
    return math.factorial(sum(shape)) // hooks


@dataclass(frozen=True)
class SemistandardFilling:
    """A tableau given by its rows; entries are 1-based factor indices."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for r in rows:
            if any(r[i] > r[i + 1] for i in range(len(r) - 1)):
                raise ValueError(f"row {r} is not weakly increasing")
        for r in range(len(rows) - 1):
            if len(rows[r + 1]) > len(rows[r]):
                raise ValueError("row lengths must weakly decrease")
            for c in range(len(rows[r + 1])):
                if rows[r + 1][c] <= rows[r][c]:
                    raise ValueError(f"column {c + 1} is not strictly increasing")

    @classmethod
    def highest(cls, shape: Partition) -> SemistandardFilling:
        """Row ``r`` filled with ``r`` (the highest weight filling)."""
        return cls(tuple((r + 1,) * n for r, n in enumerate(shape)))

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def weight(self, n: int) -> tuple[int, ...]:
        w = [0] * n
        for r in self.rows:
            for x in r:
                w[x - 1] += 1
        return tuple(w)

    def __getitem__(self, cell: tuple[int, int]) -> int:
        return self.rows[cell[0]][cell[1]]

    def encode(self) -> str:
        shape = ",".join(map(str, self.shape))
        body = ";".join(",".join(map(str, r)) for r in self.rows)
        return f"({shape}):[{body}]"

    @classmethod
    def parse(cls, text: str) -> SemistandardFilling:
        m = re.fullmatch(r"\s*\(([\d,\s]*)\)\s*:\s*\[([\d,;\s]*)\]\s*", text)
        if not m:
            raise ValueError(f"malformed filling {text!r}")
        rows = tuple(tuple(int(x) for x in r.split(",")) for r in m[2].split(";"))
        f = cls(rows)
        if m[1].strip() and f.shape != tuple(int(x) for x in m[1].split(",")):
            raise ValueError(f"filling {text!r} does not match its declared shape")
        return f

    def __str__(self) -> str:
        return self.encode()


def enumerate_ssyt(shape: Partition, max_entry: int) -> list[SemistandardFilling]:
    """All semistandard fillings with entries in 1..max_entry.

    Cells are filled in row-major order, smallest entries first, so the order is
    lexicographic in the row-major reading word.
    """
    shape = as_partition(shape)
    if len(shape) > max_entry:
        return []
    cs = cells(shape)
    grid: dict[tuple[int, int], int] = {}
    out = []

    def fill(pos: int) -> None:
        if pos == len(cs):
            out.append(SemistandardFilling(tuple(tuple(grid[(r, c)] for c in range(n))
                                                 for r, n in enumerate(shape))))
            return
        r, c = cs[pos]
        lo = 1
        if c > 0:
            lo = max(lo, grid[(r, c - 1)])
        if r > 0:
            lo = max(lo, grid[(r - 1, c)] + 1)
        # leave room for the strictly increasing column below
        hi = max_entry - (sum(1 for x in shape[r + 1:] if x > c))
        for v in range(lo, hi + 1):
            grid[(r, c)] = v
            fill(pos + 1)
        grid.pop((r, c), None)

    fill(0)
    return out


def standard_tableaux(shape: Partition) -> list[SemistandardFilling]:
    """Standard fillings with 1..|shape|, row-major reading order lexicographic."""
    d = sum(shape)
    out = []
    grid = [[0] * n for n in shape]
    placed = [0] * len(shape)

    def place(v: int) -> None:
        if v > d:
            out.append(SemistandardFilling(tuple(tuple(r) for r in grid)))
            return
        for r in range(len(shape)):
            c = placed[r]
            if c < shape[r] and (r == 0 or placed[r - 1] > c):
                grid[r][c] = v
                placed[r] += 1
                place(v + 1)
                placed[r] -= 1

    place(1)
    return sorted(out, key=lambda t: [x for r in t.rows for x in r])


# -- characters of the symmetric group -------------------------------------

def class_size(cycle_type: Partition) -> int:
    d = sum(cycle_type)
    den = 1
    for j in set(cycle_type):
        m = cycle_type.count(j)
        den *= math.factorial(m) * j ** m
    return math.factorial(d) // den


@lru_cache(maxsize=None)
def mn_character(shape: Partition, cycle_type: Partition) -> int:
    """chi_shape at a permutation of the given cycle type (Murnaghan-Nakayama).

    Rim hooks are removed via the beta-set (first-column hook lengths): removing a
    hook of length k moves a bead from x to x - k, with sign given by the parity
    of the beads jumped over.
    """
    shape = as_partition(shape)
    cycle_type = as_partition(cycle_type)
    if sum(shape) != sum(cycle_type):
        raise ValueError(f"size mismatch: |{shape}| != |{cycle_type}|")
    if not cycle_type:
        return 1
    k = cycle_type[0]
    rest = cycle_type[1:]
    L = len(shape)
    beta = [shape[i] + L - 1 - i for i in range(L)]
    beads = set(beta)
    total = 0
    for x in beta:
        y = x - k
        if y < 0 or y in beads:
            continue
        jumped = sum(1 for z in beta if y < z < x)
        new_beta = sorted((beads - {x}) | {y}, reverse=True)
        new_shape = tuple(b - (L - 1 - i) for i, b in enumerate(new_beta))
        total += (-1) ** jumped * mn_character(as_partition(new_shape), rest)
    return total


def kronecker_mult(p1: Partition, p2: Partition, p3: Partition) -> int:
    """Multiplicity of the trivial character in chi_p1 chi_p2 chi_p3.

    This is the multiplicity of S_p1 A (x) S_p2 B (x) S_p3 C in S^d(A (x) B (x) C).
    """
    p1, p2, p3 = as_partition(p1), as_partition(p2), as_partition(p3)
    d = sum(p1)
    if sum(p2) != d or sum(p3) != d:
        raise ValueError(f"size mismatch among {p1}, {p2}, {p3}")
    total = 0
    for ct in partitions(d):
        total += class_size(ct) * mn_character(p1, ct) * mn_character(p2, ct) * mn_character(p3, ct)
    q, r = divmod(total, math.factorial(d))
    assert r == 0 and q >= 0, f"non-integral Kronecker coefficient {Fraction(total, math.factorial(d))}"
    return q


@dataclass(frozen=True)
class IsotypicComponent:
    triple: tuple[Partition, Partition, Partition]
    multiplicity: int
    component_dim: int

    def to_json_obj(self) -> dict:
        return {"triple": [list(p) for p in self.triple], "multiplicity": self.multiplicity,
                "dim": self.component_dim}


def isotypic_decomposition(d: int, dims: tuple[int, int, int],
                           allow_large: bool = False) -> list[IsotypicComponent]:
    """Schur-module triples occurring in S^d(A* (x) B* (x) C*) with multiplicities.

    Triples come in reverse-lex order of (pi1, pi2, pi3).
    """
    if d > MAX_DEGREE and not allow_large:
        raise ValueError(f"degree {d} exceeds the default cap {MAX_DEGREE}; pass allow_large=True")
    a, b, c = dims
    out = []
    for p1, p2, p3 in product(partitions(d, a), partitions(d, b), partitions(d, c)):
        m = kronecker_mult(p1, p2, p3)
        if m:
            dim = m * weyl_dimension(p1, a) * weyl_dimension(p2, b) * weyl_dimension(p3, c)
            out.append(IsotypicComponent((p1, p2, p3), m, dim))
    return out
