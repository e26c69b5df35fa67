"""Zero-set test for tensors of border rank at most 4.

A tensor passes when its flattenings all have rank <= 4 and the inherited
degree 5, 6 and 9 equations vanish on random compressions of it.  A nonzero
exact value is a certificate that the tensor is outside the zero set; vanishing
on finitely many random compressions is only probabilistic evidence.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import Dims
from .determinantal import build_psi, flattening_ranks
from .fasteval import CompiledPolynomials
from .linalg import exact_rank
from .schur import m5_basis, m6_basis
from .tensor import Tensor3, random_matrix

FAMILIES = ("M5", "M6", "M9")
DEFAULT_TRIALS = 20
MAP_BOUND = 1000
DEFAULT_TOL = 1e-10

VANISHES = "vanishes"
DOES_NOT_VANISH = "does-not-vanish"
SKIPPED = "skipped"
IN_ZERO_SET = "in-zero-set"
NOT_IN_ZERO_SET = "not-in-zero-set"

# target orientations: M6 lives on (3,3,4) and is symmetric in its first two factors,
# so the position of the 4-dimensional factor is all that matters
M6_ORIENTATIONS = ((3, 3, 4), (3, 4, 3), (4, 3, 3))
M9_ORIENTATIONS = tuple(itertools.permutations(range(3)))


@dataclass
class CompressionMaps:
    """Linear maps phiA (a x a'), phiB (b x b'), phiC (c x c')."""

    phiA: np.ndarray
    phiB: np.ndarray
    phiC: np.ndarray
    seed: list = field(default_factory=list)

    @classmethod
    def random(cls, source: Dims, target: Dims, rng: np.random.Generator, bound: int = MAP_BOUND,
               seed=None) -> CompressionMaps:
        mats = [random_matrix(rng, (s, t), bound) for s, t in zip(source, target)]
        return cls(*mats, seed=list(seed or []))

    @property
    def target(self) -> Dims:
        return (self.phiA.shape[1], self.phiB.shape[1], self.phiC.shape[1])

    def to_json_obj(self) -> dict:
        return {"seed": self.seed,
                "phiA": [[int(x) for x in r] for r in self.phiA],
                "phiB": [[int(x) for x in r] for r in self.phiB],
                "phiC": [[int(x) for x in r] for r in self.phiC]}


def compress(T: Tensor3, maps: CompressionMaps) -> Tensor3:
    """``T'[i',j',k'] = sum phiA[i,i'] phiB[j,j'] phiC[k,k'] T[i,j,k]``."""
    return T.contract(maps.phiA, maps.phiB, maps.phiC)


@lru_cache(maxsize=None)
def compiled_family(name: str) -> CompiledPolynomials:
    """The basis of M5 at (4,4,4) or M6 at (3,3,4), compiled once per process."""
    if name == "M5":
        b = m5_basis((4, 4, 4))
    elif name == "M6":
        b = m6_basis((3, 3, 4))
    else:
        raise ValueError(f"no polynomial basis is used for family {name!r}")
    return CompiledPolynomials(b.polys, b.dims)


def _check_dims(T: Tensor3) -> None:
    if min(T.dims) < 3:
        raise ValueError(f"the border rank 4 test needs a,b,c >= 3, got dims {T.dims}")


def _trial_rng(seed: int, family: str, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, FAMILIES.index(family), trial])


def _first_nonzero(family: str, T2: Tensor3, mode: str, tol: float) -> tuple[int, str] | None:
    compiled = compiled_family(family)
    if mode == "exact":
        for idx, v in enumerate(compiled.values(T2)):
            if v != 0:
                return idx, str(v)
        return None
    vals, scale = compiled.float_values(T2)
    for idx, (v, s) in enumerate(zip(vals, scale)):
        if abs(v) > tol * max(s, 1.0):
            return idx, repr(float(v))
    return None


def _psi_rank(T2: Tensor3, mode: str, tol: float) -> int:
    if mode == "exact":
        return exact_rank(build_psi(T2))
    M = np.asarray(build_psi(T2.to_numeric() if T2.exact else T2), dtype=float)
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > tol * max(s[0], 1.0))) if len(s) else 0


def _run_trial(T: Tensor3, family: str, seed: int, trial: int, mode: str = "exact",
               tol: float = DEFAULT_TOL) -> dict | None:
    """Return a witness dict if the family fails to vanish in this trial."""
    rng = _trial_rng(seed, family, trial)
    if mode == "numeric" and T.exact:
        T = T.to_numeric()
    if family == "M5":
        maps = CompressionMaps.random(T.dims, (4, 4, 4), rng, seed=[seed, 0, trial])
        hit = _first_nonzero("M5", compress(T, maps), mode, tol)
        if hit:
            return {"trial": trial, "poly": hit[0] + 1, "value": hit[1], "maps": maps.to_json_obj()}
        return None
    if family == "M6":
        for target in M6_ORIENTATIONS:
            maps = CompressionMaps.random(T.dims, target, rng, seed=[seed, 1, trial])
            T2 = compress(T, maps)
            # bring the 4-dimensional factor to position C
            order = [f for f in range(3) if target[f] == 3] + [target.index(4)]
            hit = _first_nonzero("M6", T2.permute_factors(order), mode, tol)
            if hit:
                return {"trial": trial, "orientation": list(target), "poly": hit[0] + 1, "value": hit[1],
                        "maps": maps.to_json_obj()}
        return None
    if family == "M9":
        for order in M9_ORIENTATIONS:
            target = tuple((3, 3, 4)[order.index(f)] for f in range(3))
            maps = CompressionMaps.random(T.dims, target, rng, seed=[seed, 2, trial])
            T2 = compress(T, maps).permute_factors(order)
            r = _psi_rank(T2, mode, tol)
            if r > 8:
                return {"trial": trial, "orientation": list(order), "psi_rank": r, "maps": maps.to_json_obj()}
        return None
    raise ValueError(f"unknown family {family!r}")


def test_family(T: Tensor3, family: str, trials: int = DEFAULT_TRIALS, seed: int = 0,
                threads: int = 1, mode: str = "exact", tol: float = DEFAULT_TOL,
                skip_trivial: bool = True) -> dict:
    """Verdict for one equation family on ``trials`` random compressions of ``T``.

    In exact mode a nonzero value is certain; in numeric mode values are
    compared against ``tol`` times a coefficient/entry scale and no verdict is
    certain.  With ``skip_trivial`` M5 is not evaluated where it vanishes
    identically.
    """
    _check_dims(T)
    if mode not in ("exact", "numeric"):
        raise ValueError(f"mode must be 'exact' or 'numeric', got {mode!r}")
    if skip_trivial and family == "M5" and sum(1 for n in T.dims if n >= 4) < 2:
        return {"verdict": SKIPPED, "certain": True, "trials": 0,
                "note": "M5 vanishes identically here: every summand needs two factors of dimension >= 4"}
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda t: _run_trial(T, family, seed, t, mode, tol), range(trials)))
    else:
        results = []
        for t in range(trials):
            w = _run_trial(T, family, seed, t, mode, tol)
            results.append(w)
            if w is not None:
                break  # one exact nonzero value settles the question
    witness = next((w for w in results if w is not None), None)
    if witness is not None:
        return {"verdict": DOES_NOT_VANISH, "certain": mode == "exact", "trials": witness["trial"] + 1,
                "witness": witness}
    return {"verdict": VANISHES, "certain": False, "trials": trials,
            "note": f"zero on {trials} random compressions (probabilistic)"}


# pytest would otherwise collect the public name above as a test
test_family.__test__ = False


@dataclass
class MembershipReport:
    dims: Dims
    flattening_ranks: tuple[int, int, int]
    families: dict
    seed: int
    trials: int
    mode: str = "exact"

    @property
    def sub444(self) -> bool:
        return all(r <= 4 for r in self.flattening_ranks)

    @property
    def conclusion(self) -> str:
        ok = self.sub444 and all(f["verdict"] != DOES_NOT_VANISH for f in self.families.values())
        return IN_ZERO_SET if ok else NOT_IN_ZERO_SET

    def to_json_obj(self) -> dict:
        return {"dims": list(self.dims), "flattening_ranks": list(self.flattening_ranks),
                "sub444": self.sub444, "families": self.families, "conclusion": self.conclusion,
                "seed": self.seed, "trials": self.trials, "mode": self.mode,
                "note": "vanishing verdicts are probabilistic; non-vanishing verdicts carry exact witnesses"}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)


def border_rank_le4_test(T: Tensor3, trials: int = DEFAULT_TRIALS, seed: int = 0,
                         threads: int = 1, mode: str = "exact") -> MembershipReport:
    """Flattening ranks (Sub_{4,4,4}) and the three inherited families, combined."""
    _check_dims(T)
    ranks = flattening_ranks(T)
    fams = {name: test_family(T, name, trials, seed, threads, mode) for name in FAMILIES}
    return MembershipReport(T.dims, ranks, fams, seed, trials, mode)


def friedland_point() -> Tensor3:
    """(a1 b1 + a2 b2) c1 + (a1 b1 + a2 b3) c2 + (a1 b1 + a3 b2) c3 + (a1 b1 + a3 b3) c4."""
    arr = np.zeros((3, 3, 4), dtype=int)
    arr[0, 0, :] = 1
    arr[1, 1, 0] = 1
    arr[1, 2, 1] = 1
    arr[2, 1, 2] = 1
    arr[2, 2, 3] = 1
    return Tensor3(arr)


def m6_values_at(T: Tensor3) -> list[Fraction]:
    """Exact values of the ten M6 polynomials at a (3,3,4) tensor."""
    return compiled_family("M6").values(T)
