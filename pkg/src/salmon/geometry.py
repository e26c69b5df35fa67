"""Sampling secant and subspace varieties, dimension counts, and the degree-d ideal scan."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import Dims
from .fasteval import CompiledPolynomials
from .linalg import SparseSpan, exact_rank
from .reptheory import (MAX_DEGREE, SemistandardFilling, isotypic_decomposition, standard_tableaux)
from .schur import PositionTableau, construct_hwv_polynomial
from .tensor import Tensor3

SAMPLE_BOUND = 100
DEFAULT_SCAN_SAMPLES = 40
SCAN_DEGREE_CAP = 6


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _int_vector(rng: np.random.Generator, n: int, bound: int = SAMPLE_BOUND) -> list[int]:
    return [int(x) for x in rng.integers(-bound, bound + 1, size=n)]


@dataclass
class SecantSample:
    dims: Dims
    r: int
    factors: list[tuple[list[int], list[int], list[int]]]
    tensor: Tensor3


def sample_secant(r: int, dims: Dims, seed=0) -> SecantSample:
    """Sum of ``r`` rank-one tensors with integer factor entries in [-100, 100]."""
    if r < 1:
        raise ValueError("a secant sample needs r >= 1")
    rng = _rng(seed)
    factors = []
    arr = np.zeros(dims, dtype=object)
    arr[...] = 0
    for _ in range(r):
        a, b, c = (_int_vector(rng, n) for n in dims)
        factors.append((a, b, c))
        arr = arr + np.einsum("i,j,k->ijk", np.array(a, dtype=object), np.array(b, dtype=object),
                              np.array(c, dtype=object))
    return SecantSample(tuple(dims), r, factors, Tensor3(arr))


@dataclass
class SubspaceSample:
    dims: Dims
    target: Dims
    inclusions: list[list[list[int]]]
    core: Tensor3
    tensor: Tensor3


def sample_subspace(target: Dims, dims: Dims, seed=0) -> SubspaceSample:
    """Random core tensor of size ``target`` pushed into ``dims`` by random inclusions."""
    if any(t > n or t < 1 for t, n in zip(target, dims)):
        raise ValueError(f"target {target} must fit inside dims {dims}")
    rng = _rng(seed)
    core = Tensor3(rng.integers(-SAMPLE_BOUND, SAMPLE_BOUND + 1, size=tuple(target)))
    incl = [np.array([_int_vector(rng, n) for _ in range(t)], dtype=object) for t, n in zip(target, dims)]
    tensor = core.contract(*incl)
    return SubspaceSample(tuple(dims), tuple(target), [m.tolist() for m in incl], core, tensor)


def terracini_jacobian(factors, dims: Dims) -> list[list[int]]:
    """Jacobian (abc rows) of (a_i, b_i, c_i)_i -> sum a_i (x) b_i (x) c_i."""
    a, b, c = dims
    cols = []
    for fa, fb, fc in factors:
        fa, fb, fc = (np.array(v, dtype=object) for v in (fa, fb, fc))
        for p in range(a):
            e = np.zeros(a, dtype=object)
            e[p] = 1
            cols.append(np.einsum("i,j,k->ijk", e, fb, fc).reshape(-1))
        for p in range(b):
            e = np.zeros(b, dtype=object)
            e[p] = 1
            cols.append(np.einsum("i,j,k->ijk", fa, e, fc).reshape(-1))
        for p in range(c):
            e = np.zeros(c, dtype=object)
            e[p] = 1
            cols.append(np.einsum("i,j,k->ijk", fa, fb, e).reshape(-1))
    return [list(row) for row in zip(*cols)]


def terracini_dim(r: int, dims: Dims, seed=0) -> int:
    """Projective dimension of the r-th secant variety from the exact Jacobian rank at a random point."""
    sample = sample_secant(r, dims, seed)
    return exact_rank(terracini_jacobian(sample.factors, dims)) - 1


def subspace_dim(target: Dims, dims: Dims) -> int:
    """Projective dimension of Sub_{a',b',c'}: a'b'c' - 1 plus the three Grassmannians."""
    if any(t > n or t < 0 for t, n in zip(target, dims)):
        raise ValueError(f"target {target} must fit inside dims {dims}")
    a1, b1, c1 = target
    return a1 * b1 * c1 - 1 + sum((n - t) * t for n, t in zip(dims, target))


def subspace_jacobian_dim(target: Dims, dims: Dims, seed=0) -> int:
    """Same dimension estimated from the parametrization (U, V, W, G) -> (U (x) V (x) W) G."""
    sample = sample_subspace(target, dims, seed)
    U, V, W = (np.array(m, dtype=object) for m in sample.inclusions)  # t x n
    G = sample.core.entries
    cols = []
    # derivatives with respect to the core entries
    for idx in np.ndindex(tuple(target)):
        cols.append(np.einsum("i,j,k->ijk", U[idx[0]], V[idx[1]], W[idx[2]]).reshape(-1))
    mats = [U, V, W]
    for f in range(3):
        t, n = mats[f].shape
        for p in range(t):
            for q in range(n):
                E = np.zeros((t, n), dtype=object)
                E[...] = 0
                E[p, q] = 1
                ms = list(mats)
                ms[f] = E
                cols.append(np.einsum("abc,ai,bj,ck->ijk", G, *ms).reshape(-1))
    return exact_rank([list(row) for row in zip(*cols)]) - 1


# -- ideal scan ------------------------------------------------------------------

@dataclass
class ScanComponent:
    triple: tuple
    multiplicity: int
    rank: int
    kernel_dim: int
    fillings: list[str] = field(default_factory=list)

    @property
    def vanishing(self) -> bool:
        return self.kernel_dim > 0

    def to_json_obj(self) -> dict:
        return {"triple": [list(p) for p in self.triple], "multiplicity": self.multiplicity,
                "rank": self.rank, "kernel_dim": self.kernel_dim,
                "verdict": "vanishing" if self.vanishing else "non-vanishing",
                "fillings": self.fillings}


@dataclass
class ScanResult:
    degree: int
    dims: Dims
    samples: int
    seed: int
    components: list[ScanComponent]

    @property
    def vanishing(self) -> list[ScanComponent]:
        return [c for c in self.components if c.vanishing]

    def to_json_obj(self) -> dict:
        return {"degree": self.degree, "dims": list(self.dims), "samples": self.samples, "seed": self.seed,
                "components": [c.to_json_obj() for c in self.components],
                "vanishing": [[list(p) for p in c.triple] for c in self.vanishing],
                "note": "evaluation-based evidence at random rank-4 points; consistent with, not a proof of, "
                        "the ideal statement"}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def _slot_layout(t: SemistandardFilling) -> tuple[tuple[int, ...], ...]:
    return t.rows


def highest_weight_space(triple, dims: Dims, multiplicity: int, max_random: int = 2000, seed=0):
    """Polynomials spanning the highest weight space of one isotypic component.

    The A factor keeps row-major slots; the B and C slot layouts run over pairs of
    standard tableaux (read as slot numberings) until the span reaches the
    multiplicity, then over random slot permutations if needed.  Returns the
    polynomials and the slot layouts that produced them.
    """
    p1, p2, p3 = triple
    A = PositionTableau(SemistandardFilling.highest(p1))
    fb, fc = SemistandardFilling.highest(p2), SemistandardFilling.highest(p3)
    span = SparseSpan()
    polys, used = [], []

    def attempt(sb, sc) -> bool:
        p = construct_hwv_polynomial(A, PositionTableau(fb, sb), PositionTableau(fc, sc), dims)
        if p and span.add(p.terms):
            polys.append(p)
            used.append(f"B@{_enc(sb)} C@{_enc(sc)}")
        return len(polys) == multiplicity

    for tb, tc in itertools.product(standard_tableaux(p2), standard_tableaux(p3)):
        if attempt(_slot_layout(tb), _slot_layout(tc)):
            return polys, used
    rng = _rng(seed)
    d = sum(p1)
    for _ in range(max_random):
        sb = _random_layout(p2, rng.permutation(d))
        sc = _random_layout(p3, rng.permutation(d))
        if attempt(sb, sc):
            return polys, used
    raise RuntimeError(f"could not span the multiplicity {multiplicity} space of {triple}")


def _random_layout(shape, perm) -> tuple[tuple[int, ...], ...]:
    it = iter(int(x) + 1 for x in perm)
    return tuple(tuple(next(it) for _ in range(n)) for n in shape)


def _enc(layout) -> str:
    return ";".join(",".join(map(str, r)) for r in layout)


def ideal_scan(d: int, dims: Dims = (3, 3, 4), samples: int = DEFAULT_SCAN_SAMPLES, seed: int = 0,
               allow_large: bool = False) -> ScanResult:
    """Which isotypic components of degree ``d`` contain equations vanishing on rank-4 samples."""
    if d > SCAN_DEGREE_CAP and not allow_large:
        raise ValueError(f"degree {d} exceeds the scan cap {SCAN_DEGREE_CAP}; pass allow_large=True")
    dims = tuple(dims)
    points = [sample_secant(4, dims, seed=[seed, s]).tensor for s in range(samples)]
    comps = []
    for comp in isotypic_decomposition(d, dims, allow_large=allow_large or d <= MAX_DEGREE):
        polys, used = highest_weight_space(comp.triple, dims, comp.multiplicity, seed=seed)
        compiled = CompiledPolynomials(polys, dims)
        rows = list(zip(*(compiled.values(T) for T in points)))  # polynomial x sample
        rank = exact_rank(rows)
        comps.append(ScanComponent(comp.triple, comp.multiplicity, rank, comp.multiplicity - rank, used))
    return ScanResult(d, dims, samples, seed, comps)
