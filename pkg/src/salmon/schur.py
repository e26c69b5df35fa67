"""Polynomial bases of Schur modules S_p1 A* (x) S_p2 B* (x) S_p3 C* inside S^d.

A highest weight polynomial is built one factor at a time: a Young symmetrizer
acts on the tensor positions ("slots") of a pre-highest weight vector, the three
images are multiplied slot by slot through x[i,j,k], and the product over the
d slots is read as a commutative monomial.  Bases of the whole module are then
swept out with lowering operators or with index swaps.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import (FACTORS, Dims, Monomial, Polynomial, canonicalize, factor_axis,
                      multidegree_of, permute_factors, substitute_indices)
from .linalg import SparseSpan
from .reptheory import (Partition, SemistandardFilling, as_partition, cells, enumerate_ssyt,
                        weyl_dimension)

COLUMNS_FIRST = "columns-first"
ROWS_FIRST = "rows-first"

Assignment = tuple[int, ...]


class ContractViolation(ValueError):
    """An input broke a documented precondition (e.g. not a highest weight vector)."""


@dataclass(frozen=True)
class PositionTableau:
    """Young diagram carrying a tensor slot (1..d) and a content index per cell.

    ``slots`` has the same row shape as ``content``; ``slots[r][c]`` is the slot
    of cell (r, c).  Row-major slots are the default.
    """

    content: SemistandardFilling
    slots: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        shape = self.content.shape
        if not self.slots:
            it = itertools.count(1)
            object.__setattr__(self, "slots", tuple(tuple(next(it) for _ in range(n)) for n in shape))
        else:
            object.__setattr__(self, "slots", tuple(tuple(int(x) for x in r) for r in self.slots))
        if tuple(len(r) for r in self.slots) != shape:
            raise ValueError(f"slot rows {self.slots} do not match shape {shape}")
        flat = sorted(x for r in self.slots for x in r)
        if flat != list(range(1, sum(shape) + 1)):
            raise ValueError(f"slots {self.slots} are not a bijection onto 1..{sum(shape)}")

    @classmethod
    def of(cls, content_rows, slot_rows=None) -> PositionTableau:
        return cls(SemistandardFilling(tuple(tuple(r) for r in content_rows)),
                   tuple(tuple(r) for r in slot_rows) if slot_rows else ())

    @property
    def shape(self) -> Partition:
        return self.content.shape

    @property
    def degree(self) -> int:
        return sum(self.shape)

    def slot_of(self, cell: tuple[int, int]) -> int:
        return self.slots[cell[0]][cell[1]] - 1

    def pre_highest_weight(self) -> Assignment:
        """0-based content index sitting in each slot."""
        f = [0] * self.degree
        for cell in cells(self.shape):
            f[self.slot_of(cell)] = self.content[cell] - 1
        return tuple(f)

    def row_slots(self) -> list[list[int]]:
        return [[self.slots[r][c] - 1 for c in range(n)] for r, n in enumerate(self.shape)]

    def column_slots(self) -> list[list[int]]:
        shape = self.shape
        return [[self.slots[r][c] - 1 for r in range(len(shape)) if shape[r] > c] for c in range(shape[0])]

    def encode(self) -> str:
        enc = self.content.encode()
        default = tuple(tuple(x) for x in PositionTableau(self.content).slots)
        if self.slots != default:
            enc += "@" + ";".join(",".join(map(str, r)) for r in self.slots)
        return enc


@lru_cache(maxsize=None)
def _signed_perms(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for q in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if q[i] > q[j])
        out.append((q, -1 if inv % 2 else 1))
    return tuple(out)


def _skew(terms: dict[Assignment, int], blocks: list[list[int]]) -> dict[Assignment, int]:
    for blk in blocks:
        if len(blk) < 2:
            continue
        out: dict[Assignment, int] = {}
        perms = _signed_perms(len(blk))
        for g, c in terms.items():
            vals = [g[s] for s in blk]
            if len(set(vals)) < len(vals):
                continue  # antisymmetrizing equal entries gives zero
            h = list(g)
            for q, sgn in perms:
                for t, s in enumerate(blk):
                    h[s] = vals[q[t]]
                key = tuple(h)
                out[key] = out.get(key, 0) + sgn * c
        terms = {k: v for k, v in out.items() if v}
    return terms


def _sym(terms: dict[Assignment, int], blocks: list[list[int]]) -> dict[Assignment, int]:
    for blk in blocks:
        if len(blk) < 2:
            continue
        out: dict[Assignment, int] = {}
        for g, c in terms.items():
            vals = [g[s] for s in blk]
            # sum over the whole row group = each distinct arrangement times prod(mult!)
            weight = math.prod(math.factorial(m) for m in Counter(vals).values())
            h = list(g)
            for arr in _distinct_perms(tuple(sorted(vals))):
                for t, s in enumerate(blk):
                    h[s] = arr[t]
                key = tuple(h)
                out[key] = out.get(key, 0) + weight * c
        terms = {k: v for k, v in out.items() if v}
    return terms


@lru_cache(maxsize=None)
def _distinct_perms(vals: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(itertools.permutations(vals))))


def symmetrizer_image(pt: PositionTableau, order: str = COLUMNS_FIRST) -> dict[Assignment, int]:
    """Young symmetrizer applied to the pre-highest weight vector of ``pt``.

    Returns a map from slot assignments (0-based index per slot) to integer
    coefficients.  No division by group orders takes place.
    """
    start = {pt.pre_highest_weight(): 1}
    if order == COLUMNS_FIRST:
        return _sym(_skew(start, pt.column_slots()), pt.row_slots())
    if order == ROWS_FIRST:
        return _skew(_sym(start, pt.row_slots()), pt.column_slots())
    raise ValueError(f"unknown symmetrizer order {order!r}")


# -- the highest weight polynomial -----------------------------------------

_INT64_SAFE = 1 << 62
_CHUNK = 1 << 22


def _reduce_sorted(keys: np.ndarray, coefs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coefs = coefs[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    summed = np.add.reduceat(coefs, starts)
    keys = keys[starts]
    keep = summed != 0
    return keys[keep], summed[keep]


def _product_python(images, dims: Dims) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for (ga, ca), (gb, cb), (gc, cc) in itertools.product(*(im.items() for im in images)):
        m = tuple(sorted(zip(ga, gb, gc)))
        out[m] = out.get(m, 0) + ca * cb * cc
    return {m: c for m, c in out.items() if c}


def _product_numpy(images, dims: Dims) -> dict[Monomial, int]:
    a, b, c = dims
    N = a * b * c
    A, B, C = (list(im.items()) for im in images)
    d = len(A[0][0])
    Bk = np.array([k for k, _ in B], dtype=np.int64)
    Bc = np.array([v for _, v in B], dtype=np.int64)
    Ck = np.array([k for k, _ in C], dtype=np.int64)
    Cc = np.array([v for _, v in C], dtype=np.int64)
    BC_var = (Bk[:, None, :] * c + Ck[None, :, :]).reshape(-1, d)
    BC_coef = (Bc[:, None] * Cc[None, :]).reshape(-1)
    powers = N ** np.arange(d - 1, -1, -1, dtype=np.int64)
    keys_acc: list[np.ndarray] = []
    coef_acc: list[np.ndarray] = []
    pending = 0
    acc_keys = np.empty(0, dtype=np.int64)
    acc_coefs = np.empty(0, dtype=np.int64)
    for ka, ca in A:
        var = np.asarray(ka, dtype=np.int64)[None, :] * (b * c) + BC_var
        var.sort(axis=1)
        keys_acc.append(var @ powers)
        coef_acc.append(ca * BC_coef)
        pending += len(BC_coef)
        if pending >= _CHUNK:
            acc_keys, acc_coefs = _reduce_sorted(np.concatenate([acc_keys] + keys_acc),
                                                 np.concatenate([acc_coefs] + coef_acc))
            keys_acc, coef_acc, pending = [], [], 0
    if keys_acc:
        acc_keys, acc_coefs = _reduce_sorted(np.concatenate([acc_keys] + keys_acc),
                                             np.concatenate([acc_coefs] + coef_acc))
    digits = (acc_keys[:, None] // powers[None, :]) % N
    ii, rem = np.divmod(digits, b * c)
    jj, kk = np.divmod(rem, c)
    out = {}
    for row_i, row_j, row_k, coef in zip(ii.tolist(), jj.tolist(), kk.tolist(), acc_coefs.tolist()):
        out[tuple(zip(row_i, row_j, row_k))] = coef
    return out


def construct_hwv_polynomial(ptA: PositionTableau, ptB: PositionTableau, ptC: PositionTableau,
                             dims: Dims, order: str | Sequence[str] = COLUMNS_FIRST,
                             canonical: bool = True) -> Polynomial:
    """Polynomial in S^d obtained from three Young-symmetrized factors.

    ``order`` is one symmetrizer order for all factors or one per factor.
    """
    pts = (ptA, ptB, ptC)
    d = ptA.degree
    if ptB.degree != d or ptC.degree != d:
        raise ValueError(f"shape sizes differ: {[pt.degree for pt in pts]}")
    for f, pt in enumerate(pts):
        top = max(x for r in pt.content.rows for x in r)
        if top > dims[f]:
            raise ValueError(f"factor {FACTORS[f]} content uses index {top} > dimension {dims[f]}")
    orders = [order] * 3 if isinstance(order, str) else list(order)
    images = [symmetrizer_image(pt, o) for pt, o in zip(pts, orders)]
    if not all(images):
        return Polynomial({}, dims)
    bound = math.prod(sum(abs(v) for v in im.values()) for im in images)
    N = dims[0] * dims[1] * dims[2]
    if bound < _INT64_SAFE and N ** d < _INT64_SAFE:
        terms = _product_numpy(images, dims)
    else:
        terms = _product_python(images, dims)
    p = Polynomial(terms, dims)
    return canonicalize(p) if canonical else p


# -- Lie algebra action ------------------------------------------------------

def lowering_operator(p: Polynomial, factor: str | int, src: int, dst: int) -> Polynomial:
    """Derivation sending factor index ``src`` to ``dst`` (0-based) in one variable at a time.

    With ``src < dst`` this lowers the weight; with ``src > dst`` it raises.
    """
    if src == dst:
        raise ValueError("lowering operator needs two distinct indices")
    ax = factor_axis(factor)
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        for pos, v in enumerate(m):
            if v[ax] != src:
                continue
            if pos > 0 and m[pos - 1] == v:
                continue  # one replacement per distinct variable, weighted by its exponent
            e = 1
            while pos + e < len(m) and m[pos + e] == v:
                e += 1
            w = list(v)
            w[ax] = dst
            nm = tuple(sorted(m[:pos] + m[pos + 1:] + (tuple(w),)))
            out[nm] = out.get(nm, 0) + e * c
    return Polynomial(out, p.dims)


def raising_operators(dims: Dims):
    for ax in range(3):
        for i in range(dims[ax]):
            for j in range(i + 1, dims[ax]):
                yield ax, j, i


def lowering_operators(dims: Dims):
    for ax in range(3):
        for i in range(dims[ax]):
            for j in range(i + 1, dims[ax]):
                yield ax, i, j


def is_highest_weight(p: Polynomial) -> bool:
    return all(not lowering_operator(p, ax, s, t) for ax, s, t in raising_operators(p.dims))


# -- module bases ------------------------------------------------------------

@dataclass
class ModuleBasis:
    """Polynomial basis of a Schur module with per-polynomial provenance."""

    triple: tuple[Partition, Partition, Partition]
    dims: Dims
    polys: list[Polynomial] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)
    fillings: list[tuple[SemistandardFilling, ...] | None] = field(default_factory=list)
    name: str = ""
    note: str = ""

    def __len__(self) -> int:
        return len(self.polys)

    @property
    def degree(self) -> int:
        return sum(self.triple[0])

    def expected_dim(self) -> int:
        return math.prod(weyl_dimension(p, n) for p, n in zip(self.triple, self.dims))

    def monomial_counts(self) -> Counter:
        return Counter(len(p) for p in self.polys)

    def rank(self) -> int:
        """Rank of the coefficient matrix (grouped by multidegree, modular, certified if full)."""
        groups: dict = {}
        for p in self.polys:
            groups.setdefault(p.multidegree, []).append(p)
        total = 0
        for polys in groups.values():
            span = SparseSpan()
            for p in polys:
                span.add(p.terms)
            total += len(span)
        return total

    def is_independent(self) -> bool:
        return self.rank() == len(self.polys)

    def restrict(self, dims: Dims) -> ModuleBasis:
        """Restriction to a coordinate subspace, keeping an independent subset."""
        out = ModuleBasis(self.triple, tuple(dims), name=self.name, note=self.note)
        spans: dict = {}
        for p, prov, fill in zip(self.polys, self.provenance, self.fillings or [None] * len(self.polys)):
            terms = {m: c for m, c in p.terms.items() if all(v[f] < dims[f] for v in m for f in range(3))}
            if not terms:
                continue
            q = canonicalize(Polynomial(terms, dims))
            if spans.setdefault(q.multidegree, SparseSpan()).add(q.terms):
                out.polys.append(q)
                out.provenance.append(prov)
                out.fillings.append(fill)
        return out


def weight_multiplicity(shape: Partition, weight: Sequence[int]) -> int:
    n = len(weight)
    return sum(1 for f in enumerate_ssyt(shape, n) if f.weight(n) == tuple(weight))


def _fillings_by_weight(triple, dims) -> dict:
    """multidegree -> list of filling triples of that weight, in SSYT enumeration order."""
    per_factor = []
    for shape, n in zip(triple, dims):
        per_factor.append(enumerate_ssyt(shape, n))
    table: dict = {}
    for fa, fb, fc in itertools.product(*per_factor):
        key = (fa.weight(dims[0]), fb.weight(dims[1]), fc.weight(dims[2]))
        table.setdefault(key, []).append((fa, fb, fc))
    return table


def _label(basis: ModuleBasis, table: dict, used: Counter, p: Polynomial):
    md = p.multidegree
    pool = table.get(md, [])
    i = used[md]
    used[md] += 1
    return pool[i] if i < len(pool) else None


def module_basis_from_hwv(hwv: Polynomial, triple, dims: Dims | None = None,
                          name: str = "", provenance: str = "hwv") -> ModuleBasis:
    """Close a highest weight polynomial under all elementary lowering operators."""
    dims = tuple(dims) if dims else hwv.dims
    hwv = canonicalize(hwv.embed(dims))
    if not hwv:
        raise ContractViolation("highest weight polynomial is zero")
    for ax, s, t in raising_operators(dims):
        if lowering_operator(hwv, ax, s, t):
            raise ContractViolation(f"polynomial is not highest weight: raising {FACTORS[ax]}{s + 1}->{t + 1} "
                                    "is nonzero")
    triple = tuple(as_partition(p) for p in triple)
    basis = ModuleBasis(triple, dims, name=name)
    table = _fillings_by_weight(triple, dims)
    used: Counter = Counter()
    spans: dict = {}
    target = basis.expected_dim()

    def offer(p: Polynomial, prov: str) -> bool:
        span = spans.setdefault(p.multidegree, SparseSpan())
        full = len(table.get(p.multidegree, ()))
        if len(span) >= full or not span.add(p.terms):
            return False
        basis.polys.append(p)
        basis.provenance.append(prov)
        basis.fillings.append(_label(basis, table, used, p))
        return True

    offer(hwv, provenance)
    queue = deque([(hwv, provenance)])
    while queue and len(basis) < target:
        p, prov = queue.popleft()
        for ax, s, t in lowering_operators(dims):
            md = p.multidegree
            new_md = list(list(v) for v in md)
            if new_md[ax][s] == 0:
                continue
            new_md[ax][s] -= 1
            new_md[ax][t] += 1
            key = tuple(tuple(v) for v in new_md)
            if len(spans.get(key, ())) >= len(table.get(key, ())):
                continue
            q = lowering_operator(p, ax, s, t)
            if not q:
                continue
            q = canonicalize(q)
            word = f"{prov}>{FACTORS[ax]}{s + 1}{t + 1}"
            if offer(q, word):
                queue.append((q, word))
    return basis


def _permuted_multidegree(md, ax: int, perm: Sequence[int]):
    out = [list(v) for v in md]
    new = [0] * len(perm)
    for old, val in enumerate(md[ax]):
        new[perm[old]] = val
    out[ax] = new
    return tuple(tuple(v) for v in out)


def module_basis_by_swaps(reps: Sequence[tuple[str, Polynomial]], triple, dims: Dims,
                          name: str = "") -> ModuleBasis:
    """Expand representative polynomials to a basis by factor-index transpositions.

    Each representative is a pair (label, polynomial).  Swaps are applied
    breadth-first; a candidate is kept when it enlarges the span of its weight
    space, and weight spaces stop accepting once they hold as many polynomials as
    there are semistandard filling triples of that weight.
    """
    dims = tuple(dims)
    triple = tuple(as_partition(p) for p in triple)
    basis = ModuleBasis(triple, dims, name=name)
    table = _fillings_by_weight(triple, dims)
    used: Counter = Counter()
    spans: dict = {}
    target = basis.expected_dim()

    def offer(p: Polynomial, prov: str) -> bool:
        md = p.multidegree
        if md not in table:
            raise ContractViolation(f"{prov}: multidegree {md} is not a weight of the module {triple}")
        span = spans.setdefault(md, SparseSpan())
        if len(span) >= len(table[md]) or not span.add(p.terms):
            return False
        basis.polys.append(p)
        basis.provenance.append(prov)
        basis.fillings.append(_label(basis, table, used, p))
        return True

    queue = deque()
    for label, p in reps:
        p = canonicalize(p.embed(dims))
        if offer(p, label):
            queue.append((p, label))
    while queue and len(basis) < target:
        p, prov = queue.popleft()
        md = p.multidegree
        for ax in range(3):
            n = dims[ax]
            for i in range(n):
                for j in range(i + 1, n):
                    if md[ax][i] == md[ax][j] and md[ax][i] == 0:
                        continue
                    perm = list(range(n))
                    perm[i], perm[j] = j, i
                    key = _permuted_multidegree(md, ax, perm)
                    if key not in table:
                        raise ContractViolation(f"swap {FACTORS[ax]}({i + 1} {j + 1}) of {prov} leaves the "
                                                f"weights of {triple}")
                    if len(spans.get(key, ())) >= len(table[key]):
                        continue
                    q = canonicalize(substitute_indices(p, ax, perm))
                    word = f"{prov}~{FACTORS[ax]}{i + 1}{j + 1}"
                    if offer(q, word):
                        queue.append((q, word))
    return basis


def basis_from_fillings(triple, dims: Dims, fillings: Iterable[tuple[PositionTableau, PositionTableau,
                                                                      PositionTableau]],
                        order=COLUMNS_FIRST, name: str = "") -> ModuleBasis:
    """One symmetrizer polynomial per given triple of position tableaux."""
    basis = ModuleBasis(tuple(as_partition(p) for p in triple), tuple(dims), name=name)
    for pts in fillings:
        p = construct_hwv_polynomial(*pts, dims=dims, order=order)
        basis.polys.append(p)
        basis.provenance.append("symmetrizer")
        basis.fillings.append(tuple(pt.content for pt in pts))
    return basis


def weight_of_fillings(fills: Sequence[SemistandardFilling], dims: Dims):
    return tuple(f.weight(n) for f, n in zip(fills, dims))


def monomial_multidegree(m: Monomial, dims: Dims):
    return multidegree_of(m, dims)


# -- the named modules ---------------------------------------------------------

M6_TRIPLE = ((2, 2, 2), (2, 2, 2), (3, 1, 1, 1))
M5_TRIPLE = ((2, 1, 1, 1), (2, 1, 1, 1), (3, 1, 1))
M9_TRIPLE = ((3, 3, 3), (3, 3, 3), (3, 3, 3))

# slot positions of the A and B factors for M6, read as position fillings
M6_SLOTS_A = ((1, 2), (3, 4), (5, 6))
M6_SLOTS_B = ((1, 4), (2, 5), (3, 6))

# slot positions for the M5 representatives (symmetrized rows first)
M5_SLOTS_A = ((1, 2), (3,), (4,), (5,))
M5_SLOTS_B = ((1, 5), (2,), (3,), (4,))
M5_SLOTS_C = ((1, 3, 4), (2,), (5,))
M5_CONTENT_AB = ((1, 1), (2,), (3,), (4,))
M5_CONTENTS_C = (((1, 1, 1), (2,), (3,)), ((1, 1, 2), (2,), (3,)), ((1, 1, 2), (3,), (4,)))


def m6_polynomial(content_c: SemistandardFilling, content_a=((1, 1), (2, 2), (3, 3)),
                  content_b=((1, 1), (2, 2), (3, 3)), dims: Dims = (3, 3, 4)) -> Polynomial:
    A = PositionTableau.of(content_a, M6_SLOTS_A)
    B = PositionTableau.of(content_b, M6_SLOTS_B)
    return construct_hwv_polynomial(A, B, PositionTableau(content_c), dims)


def m6_basis(dims: Dims = (3, 3, 4)) -> ModuleBasis:
    """Basis of M6.

    At (3,3,4) this is one symmetrizer polynomial per semistandard filling of
    (3,1,1,1).  In larger dimensions the weight orbits of the A and B factors
    split (for instance (2,2,2,0) and (2,2,1,1) for a 4-dimensional A), so one
    symmetrizer representative per orbit is expanded by index swaps.
    """
    dims = tuple(dims)
    if dims[0] < 3 or dims[1] < 3 or dims[2] < 4:
        return ModuleBasis(M6_TRIPLE, dims, name="M6",
                           note="zero module: S_(3,1,1,1) needs 4 dimensions in C and S_(2,2,2) needs 3 in A, B")
    if dims == (3, 3, 4):
        basis = ModuleBasis(M6_TRIPLE, dims, name="M6")
        hwa = SemistandardFilling.highest((2, 2, 2))
        for f in enumerate_ssyt((3, 1, 1, 1), 4):
            basis.polys.append(m6_polynomial(f, dims=dims))
            basis.provenance.append("symmetrizer")
            basis.fillings.append((hwa, hwa, f))
        return basis
    ab_contents = [((1, 1), (2, 2), (3, 3))]
    if max(dims[0], dims[1]) > 3:
        ab_contents.append(((1, 1), (2, 2), (3, 4)))
    reps = []
    for ca in ab_contents:
        if ca[2][1] > dims[0]:
            continue
        for cb in ab_contents:
            if cb[2][1] > dims[1]:
                continue
            for cc in (((1, 1, 1), (2,), (3,), (4,)), ((1, 1, 2), (2,), (3,), (4,))):
                fc = SemistandardFilling(cc)
                p = m6_polynomial(fc, ca, cb, dims)
                label = "symmetrizer:" + "|".join(SemistandardFilling(x).encode() for x in (ca, cb, cc))
                reps.append((label, p))
    return module_basis_by_swaps(reps, M6_TRIPLE, dims, name="M6")


def m5_representatives(dims: Dims = (4, 4, 4)) -> list[Polynomial]:
    """The three representatives of the summand S_2111 A* (x) S_2111 B* (x) S_311 C*."""
    A = PositionTableau.of(M5_CONTENT_AB, M5_SLOTS_A)
    B = PositionTableau.of(M5_CONTENT_AB, M5_SLOTS_B)
    out = []
    for cc in M5_CONTENTS_C:
        C = PositionTableau.of(cc, M5_SLOTS_C)
        out.append(construct_hwv_polynomial(A, B, C, dims, order=ROWS_FIRST))
    return out


def m5_summand_basis(dims: Dims = (4, 4, 4)) -> ModuleBasis:
    reps = [(f"symmetrizer:{SemistandardFilling(cc).encode()}", p)
            for cc, p in zip(M5_CONTENTS_C, m5_representatives(dims))]
    return module_basis_by_swaps(reps, M5_TRIPLE, dims, name="M5")


# factor orders taking the summand (2111, 2111, 311) to the other two summands
M5_SUMMAND_ORDERS = ((0, 1, 2), (2, 0, 1), (1, 2, 0))


def m5_basis(dims: Dims = (4, 4, 4)) -> ModuleBasis:
    """All three summands of M5 (obtained by permuting the factors of one summand)."""
    dims = tuple(dims)
    if sum(1 for n in dims if n >= 4) < 2:
        return ModuleBasis(M5_TRIPLE, dims, name="M5",
                           note="zero module: every summand needs two factors of dimension at least 4")
    big = (4, 4, 4)
    summand = m5_summand_basis(big)
    out = ModuleBasis(M5_TRIPLE, big, name="M5",
                      note="three summands; triple shown is the first, the others permute factors")
    for order in M5_SUMMAND_ORDERS:
        for p, prov, fill in zip(summand.polys, summand.provenance, summand.fillings):
            q = canonicalize(permute_factors(p, order))
            out.polys.append(q)
            out.provenance.append(prov if order == (0, 1, 2) else f"{prov}~factors{''.join(map(str, order))}")
            out.fillings.append(tuple(fill[o] for o in order) if fill else None)
    if dims != big:
        out = out.restrict(dims)
    return out


def m9_basis(dims: Dims = (3, 3, 4)) -> ModuleBasis:
    """Lowering closure of the degree-9 hypersurface equation inside the given dims."""
    from .determinantal import strassen_poly
    dims = tuple(dims)
    if min(dims) < 3:
        return ModuleBasis(M9_TRIPLE, dims, name="M9", note="zero module: S_(3,3,3) needs 3 dimensions")
    return module_basis_from_hwv(strassen_poly().embed(dims), M9_TRIPLE, dims, name="M9",
                                 provenance="determinant")


def strassen_basis() -> ModuleBasis:
    from .determinantal import strassen_poly
    hw = SemistandardFilling.highest((3, 3, 3))
    return ModuleBasis(M9_TRIPLE, (3, 3, 3), [strassen_poly()], ["determinant"], [(hw, hw, hw)],
                       name="strassen")


MODULES = {"M5": m5_basis, "M6": m6_basis, "M9": m9_basis}


def named_module(name: str, dims: Dims) -> ModuleBasis:
    if name == "strassen":
        if tuple(dims) != (3, 3, 3):
            raise ValueError("the strassen module is generated at dims 3,3,3")
        return strassen_basis()
    try:
        return MODULES[name](tuple(dims))
    except KeyError:
        raise ValueError(f"unknown module {name!r}; choose from M5, M6, M9, strassen") from None


# -- text format -------------------------------------------------------------

def _encode_fillings(fills) -> str:
    if not fills:
        return "-"
    return "|".join(f.encode() for f in fills)


def format_basis(basis: ModuleBasis) -> str:
    """The polynomial text format for a whole basis."""
    from .algebra import format_polynomial
    a, b, c = basis.dims
    lines = [f"# module={basis.name or 'unnamed'} dims={a},{b},{c} degree={basis.degree}"]
    if basis.note:
        lines.append(f"# note={basis.note}")
    fills = basis.fillings or [None] * len(basis.polys)
    for idx, (p, prov, fill) in enumerate(zip(basis.polys, basis.provenance, fills), start=1):
        lines.append(f"poly {idx} filling={_encode_fillings(fill)} source={prov}")
        lines.extend(format_polynomial(p))
        lines.append("")
    return "\n".join(lines) + "\n"


def parse_basis(text: str) -> ModuleBasis:
    from .algebra import parse_polynomial
    lines = text.split("\n")
    head = lines[0]
    if not head.startswith("# module="):
        raise ValueError("missing '# module=' header line")
    fields = dict(tok.split("=", 1) for tok in head[2:].split())
    dims = tuple(int(x) for x in fields["dims"].split(","))
    basis = ModuleBasis((), dims, name=fields["module"])
    i = 1
    if i < len(lines) and lines[i].startswith("# note="):
        basis.note = lines[i][len("# note="):]
        i += 1
    while i < len(lines):
        line = lines[i]
        if not line:
            i += 1
            continue
        if not line.startswith("poly "):
            raise ValueError(f"line {i + 1}: expected a 'poly' header, got {line!r}")
        parts = dict(tok.split("=", 1) for tok in line.split()[2:])
        fill = None if parts["filling"] == "-" else tuple(SemistandardFilling.parse(s)
                                                         for s in parts["filling"].split("|"))
        j = i + 1
        while j < len(lines) and lines[j]:
            j += 1
        basis.polys.append(parse_polynomial(lines[i + 1:j], dims))
        basis.provenance.append(parts.get("source", ""))
        basis.fillings.append(fill)
        i = j + 1
    if basis.fillings and basis.fillings[0]:
        basis.triple = tuple(f.shape for f in basis.fillings[0])
    else:
        basis.triple = {"M5": M5_TRIPLE, "M6": M6_TRIPLE, "M9": M9_TRIPLE,
                        "strassen": M9_TRIPLE}.get(basis.name, ())
    return basis
