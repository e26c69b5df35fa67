"""Sparse integer polynomials in the coordinates x[i,j,k] of A (x) B (x) C.

A variable is a 0-based triple ``(i, j, k)``.  A monomial is the sorted tuple of
its variables with repetition, so ``x[1,1,1]^2 x[2,1,3]`` is
``((0, 0, 0), (0, 0, 0), (1, 0, 2))``.  Comparing these tuples gives the
canonical monomial order used everywhere (file output, sign normalisation).
Text I/O uses 1-based indices.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

import numpy as np

Var = tuple[int, int, int]
Monomial = tuple[Var, ...]
Dims = tuple[int, int, int]

FACTORS = ("A", "B", "C")


def factor_axis(factor: str | int) -> int:
    if isinstance(factor, int):
        if factor not in (0, 1, 2):
            raise ValueError(f"factor axis must be 0, 1 or 2, got {factor}")
        return factor
    try:
        return FACTORS.index(factor.upper())
    except ValueError:
        raise ValueError(f"factor must be one of A, B, C, got {factor!r}") from None


def var_name(v: Var) -> str:
    return f"x[{v[0] + 1},{v[1] + 1},{v[2] + 1}]"


def exponents(m: Monomial) -> dict[Var, int]:
    """Sparse exponent map of a monomial, keys in canonical variable order."""
    return dict(sorted(Counter(m).items()))


def multidegree_of(m: Monomial, dims: Dims) -> tuple[tuple[int, ...], ...]:
    """Per-factor exponent sums ``(degA, degB, degC)`` of a monomial."""
    da, db, dc = [0] * dims[0], [0] * dims[1], [0] * dims[2]
    for i, j, k in m:
        da[i] += 1
        db[j] += 1
        dc[k] += 1
    return tuple(da), tuple(db), tuple(dc)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(sorted(m1 + m2))


class Polynomial:
    """Polynomial with exact integer (or rational) coefficients.

    ``terms`` maps monomials to nonzero coefficients.  Instances are treated as
    immutable; arithmetic returns new objects.
    """

    __slots__ = ("terms", "dims", "_md")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, dims: Dims = (3, 3, 4)):
        self.dims = tuple(int(n) for n in dims)
        self._md = False  # multidegree cache; False means not computed yet
        self.terms: dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @classmethod
    def variable(cls, i: int, j: int, k: int, dims: Dims) -> Polynomial:
        """The coordinate x[i,j,k] (0-based indices)."""
        return cls({((i, j, k),): 1}, dims)

    @classmethod
    def constant(cls, c: int, dims: Dims) -> Polynomial:
        return cls({(): c}, dims)

    # -- basic properties -------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        shown = [format_term(c, m) for m, c in list(self)[:4]]
        more = f" ... ({len(self)} terms)" if len(self) > 4 else ""
        return "Polynomial(" + " ".join(shown) + more + ")"

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self.terms}) <= 1

    @property
    def multidegree(self) -> tuple[tuple[int, ...], ...] | None:
        """Common multidegree of all monomials, or None if not multihomogeneous."""
        if self._md is False:
            degs = {multidegree_of(m, self.dims) for m in self.terms}
            self._md = degs.pop() if len(degs) == 1 else None
        return self._md

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v in m}

    def leading_monomial(self) -> Monomial:
        """Lexicographically smallest monomial (drives the sign convention)."""
        return min(self.terms)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out, self.dims)

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()}, self.dims)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial({m: c * other for m, c in self.terms.items()}, self.dims)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out, self.dims)

    __rmul__ = __mul__

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, int(c))
            if g == 1:
                break
        return g

    def canonical(self) -> Polynomial:
        return canonicalize(self)

    def embed(self, dims: Dims) -> Polynomial:
        """The same polynomial viewed in a larger ambient space."""
        if any(n < m for n, m in zip(dims, self.dims)):
            raise ValueError(f"cannot embed dims {self.dims} into {dims}")
        return Polynomial(self.terms, dims)

    def evaluate(self, tensor) -> Fraction | float:
        return evaluate(self, tensor)

    def coefficient_vector(self, index: Mapping[Monomial, int]) -> dict[int, int]:
        return {index[m]: c for m, c in self.terms.items()}


def format_term(c: int, m: Monomial) -> str:
    parts = []
    for v, e in exponents(m).items():
        parts.append(var_name(v) + (f"^{e}" if e > 1 else ""))
    sign = "+" if c > 0 else "-"
    return f"{sign}{abs(c)} " + " ".join(parts) if parts else f"{sign}{abs(c)}"


def canonicalize(p: Polynomial) -> Polynomial:
    """Content 1, positive coefficient on the lex-smallest monomial.

    Rational coefficients are first cleared of denominators.  The zero
    polynomial is returned unchanged.
    """
    if not p.terms:
        return Polynomial({}, p.dims)
    coeffs = list(p.terms.values())
    if any(isinstance(c, Fraction) and c.denominator != 1 for c in coeffs):
        den = math.lcm(*(Fraction(c).denominator for c in coeffs))
        terms = {m: int(Fraction(c) * den) for m, c in p.terms.items()}
    else:
        terms = {m: int(c) for m, c in p.terms.items()}
    g = 0
    for c in terms.values():
        g = math.gcd(g, c)
    if terms[min(terms)] < 0:
        g = -g
    return Polynomial({m: terms[m] // g for m in sorted(terms)}, p.dims)


def substitute_indices(p: Polynomial, factor: str | int, mapping: Mapping[int, int] | Iterable[int],
                       dims: Dims | None = None) -> Polynomial:
    """Remap the index of one factor in every variable.

    ``mapping`` is a dict or a sequence (position = old 0-based index).  Indices
    not present in a dict map to themselves only if the map is a permutation
    given as a sequence; a dict must cover every occurring index.  Non-injective
    maps are allowed (general substitution); terms then merge.
    """
    ax = factor_axis(factor)
    if not isinstance(mapping, Mapping):
        mapping = dict(enumerate(mapping))
    new_dims = tuple(dims) if dims is not None else p.dims
    used = {v[ax] for v in p.variables()}
    missing = sorted(used - set(mapping))
    if missing:
        raise KeyError(f"index map for factor {FACTORS[ax]} is not defined on "
                       f"{', '.join(str(i + 1) for i in missing)}")
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        nm = []
        for v in m:
            w = list(v)
            w[ax] = mapping[v[ax]]
            nm.append(tuple(w))
        key = tuple(sorted(nm))
        out[key] = out.get(key, 0) + c
    return Polynomial(out, new_dims)


def swap_indices(p: Polynomial, factor: str | int, i: int, j: int) -> Polynomial:
    """The swap x[..i..] <-> x[..j..] in one factor (0-based i, j)."""
    n = p.dims[factor_axis(factor)]
    perm = list(range(n))
    perm[i], perm[j] = j, i
    return substitute_indices(p, factor, perm)


def permute_factors(p: Polynomial, order: tuple[int, int, int]) -> Polynomial:
    """Relabel factors: new variable axis ``f`` takes old axis ``order[f]``."""
    dims = tuple(p.dims[o] for o in order)
    out = {}
    for m, c in p.terms.items():
        out[tuple(sorted(tuple(v[o] for o in order) for v in m))] = c
    return Polynomial(out, dims)


# -- evaluation -------------------------------------------------------------

def _entries(tensor) -> np.ndarray:
    return tensor.entries if hasattr(tensor, "entries") else np.asarray(tensor)


def evaluate(p: Polynomial, tensor) -> Fraction | float:
    """Value of ``p`` at a tensor (exact for rational entries, float otherwise)."""
    arr = _entries(tensor)
    for v in p.variables():
        if any(v[f] >= arr.shape[f] for f in range(3)):
            raise IndexError(f"variable {var_name(v)} out of range for tensor of dims {arr.shape}")
    numeric = arr.dtype.kind == "f" or arr.dtype.kind == "c"
    if numeric:
        total = 0.0
        for m, c in p.terms.items():
            t = float(c)
            for v in m:
                t *= arr[v]
            total += t
        return total
    # exact: clear denominators so the inner loop is pure integer arithmetic
    cache: dict[Var, Fraction] = {}
    den = 1
    for v in p.variables():
        x = Fraction(arr[v])
        cache[v] = x
        den = math.lcm(den, x.denominator)
    ints = {v: int(x * den) for v, x in cache.items()}
    by_deg: dict[int, int] = {}
    for m, c in p.terms.items():
        t = c
        for v in m:
            t *= ints[v]
        by_deg[len(m)] = by_deg.get(len(m), 0) + t
    result = Fraction(0)
    for deg, val in by_deg.items():
        result += Fraction(val, den ** deg)
    return result


# -- text format ------------------------------------------------------------

_VAR_RE = re.compile(r"x\[(\d+),(\d+),(\d+)\](?:\^(\d+))?")


def format_polynomial(p: Polynomial) -> list[str]:
    """One line per monomial, sorted in canonical monomial order."""
    return [format_term(c, m) for m, c in p]


def parse_term(line: str) -> tuple[Monomial, int]:
    head, _, rest = line.strip().partition(" ")
    coeff = int(head)
    mono: list[Var] = []
    for tok in rest.split():
        mt = _VAR_RE.fullmatch(tok)
        if not mt:
            raise ValueError(f"malformed variable token {tok!r}")
        v = (int(mt[1]) - 1, int(mt[2]) - 1, int(mt[3]) - 1)
        mono.extend([v] * int(mt[4] or 1))
    return tuple(sorted(mono)), coeff


def parse_polynomial(lines: Iterable[str], dims: Dims) -> Polynomial:
    terms = {}
    for line in lines:
        if line.strip():
            m, c = parse_term(line)
            terms[m] = terms.get(m, 0) + c
    return Polynomial(terms, dims)
