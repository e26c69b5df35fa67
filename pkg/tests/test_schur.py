import itertools

import numpy as np
import pytest

from salmon import schur
from salmon.algebra import Polynomial, canonicalize, parse_term, swap_indices
from salmon.geometry import sample_secant, sample_subspace
from salmon.linalg import exact_rank
from salmon.reptheory import SemistandardFilling, enumerate_ssyt, weyl_dimension
from salmon.schur import (COLUMNS_FIRST, ROWS_FIRST, ContractViolation, ModuleBasis, PositionTableau,
                          construct_hwv_polynomial, is_highest_weight, lowering_operator,
                          module_basis_by_swaps, module_basis_from_hwv, symmetrizer_image)

SSYT_3111 = enumerate_ssyt((3, 1, 1, 1), 4)


def brute_image(pt, order):
    """Young symmetrizer summed over every group element, no shortcuts."""
    f = pt.pre_highest_weight()
    d = len(f)

    def group(blocks):
        for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
            perm = list(range(d))
            for blk, img in zip(blocks, choice):
                for s, t in zip(blk, img):
                    perm[s] = t
            yield perm

    def sign(perm):
        return (-1) ** sum(1 for i in range(d) for j in range(i + 1, d) if perm[i] > perm[j])

    cols, rows = pt.column_slots(), pt.row_slots()
    out = {}
    for s in group(cols):
        for t in group(rows):
            if order == COLUMNS_FIRST:
                g = tuple(f[s[t[x]]] for x in range(d))
            else:
                g = tuple(f[t[s[x]]] for x in range(d))
            out[g] = out.get(g, 0) + sign(s)
    return {k: v for k, v in out.items() if v}


def coefficient_rank(polys):
    mons = sorted({m for p in polys for m in p.terms})
    idx = {m: i for i, m in enumerate(mons)}
    rows = []
    for p in polys:
        r = [0] * len(mons)
        for m, c in p.terms.items():
            r[idx[m]] = c
        rows.append(r)
    return exact_rank(rows)


# -- symmetrizers ---------------------------------------------------------------

def test_single_box():
    pt = PositionTableau.of([[1]])
    assert symmetrizer_image(pt) == {(0,): 1}


@pytest.mark.parametrize("content,slots", [
    ([[1, 1], [2, 2], [3, 3]], [[1, 2], [3, 4], [5, 6]]),
    ([[1, 1], [2, 2], [3, 3]], [[1, 4], [2, 5], [3, 6]]),
    ([[1, 1, 2], [2], [3], [4]], None),
    ([[1, 1], [2], [3], [4]], [[1, 5], [2], [3], [4]]),
    ([[1, 1, 2], [3], [4]], [[1, 3, 4], [2], [5]]),
])
@pytest.mark.parametrize("order", [COLUMNS_FIRST, ROWS_FIRST])
def test_symmetrizer_matches_brute_force(content, slots, order):
    pt = PositionTableau.of(content, slots)
    assert symmetrizer_image(pt, order) == brute_image(pt, order)


def test_symmetrizer_222_size():
    pt = PositionTableau.of([[1, 1], [2, 2], [3, 3]], [[1, 2], [3, 4], [5, 6]])
    img = symmetrizer_image(pt)
    assert 0 < len(img) <= 288
    assert all(sorted(g) == [0, 0, 1, 1, 2, 2] for g in img)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_symmetrizer_3111_group_orders(k):
    pt = PositionTableau.of([[1, k, k], [2], [3], [4]])
    img = symmetrizer_image(pt)
    assert sum(abs(c) for c in img.values()) <= 24 * 6
    weights = {tuple(sorted(g)) for g in img}
    assert weights == {tuple(sorted([0, k - 1, k - 1, 1, 2, 3]))}


def test_repeated_column_content_cancels():
    assert schur._skew({(0, 0): 1}, [[0, 1]]) == {}


def test_bad_slots_rejected():
    with pytest.raises(ValueError):
        PositionTableau.of([[1, 1]], [[1, 1]])
    with pytest.raises(ValueError):
        symmetrizer_image(PositionTableau.of([[1]]), order="sideways")


# -- highest weight polynomials ------------------------------------------------------

def test_m6_counts(m6):
    assert [len(p) for p in m6.polys] == [936, 576, 576, 576, 936, 576, 576, 936, 576, 936]
    for p, fill in zip(m6.polys, m6.fillings):
        assert p.multidegree == ((2, 2, 2), (2, 2, 2), fill[2].weight(4))
    assert m6.polys[0].multidegree == ((2, 2, 2), (2, 2, 2), (3, 1, 1, 1))


def test_m6_multidegrees_follow_weights():
    for f in SSYT_3111[:4]:
        p = schur.m6_polynomial(f)
        assert p.multidegree == ((2, 2, 2), (2, 2, 2), f.weight(4))


def test_sample_terms_and_signs(m6):
    p = m6.polys[0]
    terms = ["-1 x[3,2,1] x[1,1,3] x[2,1,1] x[2,2,1] x[1,3,4] x[3,3,2]",
             "-1 x[3,2,1] x[1,2,2] x[2,3,1]^2 x[3,1,3] x[1,1,4]",
             "+1 x[2,1,1] x[3,1,2] x[1,3,1] x[1,2,1] x[3,3,4] x[2,2,3]"]
    got = []
    for t in terms:
        m, c = parse_term(t)
        assert m in p.terms
        got.append(p.terms[m] * c)
    # only relative signs are meaningful: every term agrees or every term disagrees
    assert len({np.sign(g) for g in got}) == 1


def test_sample_terms_by_evaluation(m6):
    """Support the tensor on the variables of one sample monomial only."""
    p = m6.polys[0]
    m, _ = parse_term("-1 x[3,2,1] x[1,1,3] x[2,1,1] x[2,2,1] x[1,3,4] x[3,3,2]")
    vals = {v: 2 + n for n, v in enumerate(sorted(set(m)))}
    arr = np.zeros((3, 3, 4), dtype=int)
    for v, x in vals.items():
        arr[v] = x
    expected = sum(c * np.prod([arr[v] for v in mm]) for mm, c in p.terms.items() if set(mm) <= set(vals))
    from salmon.tensor import Tensor3
    assert p.evaluate(Tensor3(arr)) == expected
    assert expected != 0


def test_swap_reaches_other_filling():
    q = schur.m6_polynomial(SemistandardFilling(((1, 2, 2), (2,), (3,), (4,))))
    r = schur.m6_polynomial(SemistandardFilling(((1, 3, 3), (2,), (3,), (4,))))
    assert canonicalize(swap_indices(q, "C", 1, 2)) == r


def test_shape_size_mismatch():
    with pytest.raises(ValueError):
        construct_hwv_polynomial(PositionTableau.of([[1]]), PositionTableau.of([[1, 1]]),
                                 PositionTableau.of([[1]]), (3, 3, 4))


def test_content_must_fit_dims():
    pt = PositionTableau.of([[1], [2], [3], [4]])
    with pytest.raises(ValueError):
        construct_hwv_polynomial(pt, pt, pt, (3, 4, 4))


def test_python_and_numpy_products_agree():
    A = PositionTableau.of([[1, 1], [2, 2], [3, 3]], schur.M6_SLOTS_A)
    B = PositionTableau.of([[1, 1], [2, 2], [3, 3]], schur.M6_SLOTS_B)
    C = PositionTableau.of([[1, 1, 2], [2], [3], [4]])
    images = [symmetrizer_image(pt) for pt in (A, B, C)]
    assert schur._product_numpy(images, (3, 3, 4)) == schur._product_python(images, (3, 3, 4))


def test_m5_representatives():
    reps = schur.m5_representatives()
    assert [len(p) for p in reps] == [180, 360, 540]
    for p in reps:
        assert is_highest_weight(p) or p.multidegree[2] != (3, 1, 1, 0)
    assert is_highest_weight(reps[0])


def test_m5_column_first_counts_recorded():
    """With columns symmetrized first the third representative has 1188 terms (see notes)."""
    A = PositionTableau.of(schur.M5_CONTENT_AB, schur.M5_SLOTS_A)
    B = PositionTableau.of(schur.M5_CONTENT_AB, schur.M5_SLOTS_B)
    counts = [len(construct_hwv_polynomial(A, B, PositionTableau.of(cc, schur.M5_SLOTS_C), (4, 4, 4)))
              for cc in schur.M5_CONTENTS_C]
    assert counts == [180, 360, 1188]


# -- Lie algebra action -----------------------------------------------------------------

def test_lowering_examples():
    x = Polynomial({((0, 0, 0),): 1}, (3, 3, 4))
    assert lowering_operator(x, "C", 0, 1) == Polynomial({((0, 0, 1),): 1}, (3, 3, 4))
    sq = Polynomial({((0, 0, 0), (0, 0, 0)): 1}, (3, 3, 4))
    assert lowering_operator(sq, "C", 0, 1).terms == {((0, 0, 0), (0, 0, 1)): 2}
    assert not lowering_operator(x, "C", 2, 3)
    with pytest.raises(ValueError):
        lowering_operator(x, "A", 1, 1)


def test_lowering_shifts_multidegree(m6):
    q = lowering_operator(m6.polys[0], "C", 0, 1)
    assert q.multidegree == ((2, 2, 2), (2, 2, 2), (2, 2, 1, 1))


def test_constructed_polynomials_are_highest_weight(m6):
    assert is_highest_weight(m6.polys[0])
    for p in schur.m5_representatives()[:1]:
        assert is_highest_weight(p)


# -- bases ----------------------------------------------------------------------

def test_basis_of_standard_module():
    b = module_basis_from_hwv(Polynomial({((0, 0, 0),): 1}, (3, 3, 4)), ((1,), (1,), (1,)))
    assert len(b) == 36
    assert {next(iter(p.terms)) for p in b.polys} == {((i, j, k),) for i in range(3) for j in range(3)
                                                       for k in range(4)}


def test_not_highest_weight_is_rejected():
    with pytest.raises(ContractViolation, match="not highest weight"):
        module_basis_from_hwv(Polynomial({((0, 0, 1),): 1}, (3, 3, 4)), ((1,), (1,), (1,)))


def test_m6_from_hwv_and_swaps_agree(m6):
    closure = module_basis_from_hwv(m6.polys[0], schur.M6_TRIPLE)
    reps = [("r936", m6.polys[0]), ("r576", m6.polys[1])]
    swapped = module_basis_by_swaps(reps, schur.M6_TRIPLE, (3, 3, 4))
    assert len(closure) == len(swapped) == 10
    assert coefficient_rank(closure.polys) == coefficient_rank(swapped.polys) == 10
    assert coefficient_rank(closure.polys + swapped.polys + m6.polys) == 10


def test_m6_basis_independent(m6):
    assert coefficient_rank(m6.polys) == 10 == m6.expected_dim()


def test_swaps_identity_case():
    p = Polynomial({((0, 0, 0),): 1}, (1, 1, 1))
    b = module_basis_by_swaps([("only", p)], ((1,), (1,), (1,)), (1, 1, 1))
    assert b.polys == [p] and b.provenance == ["only"]


def test_swaps_reject_foreign_weight():
    p = Polynomial({((0, 0, 0), (0, 1, 1)): 1}, (3, 3, 3))
    with pytest.raises(ContractViolation, match="bad"):
        module_basis_by_swaps([("bad", p)], ((1, 1), (2,), (2,)), (3, 3, 3))


def test_m5_summand_basis(m5):
    assert len(m5) == 1728
    summand = m5.polys[:576]
    assert all(p.multidegree is not None for p in summand)
    assert m5.rank() == 1728


def test_m5_restriction(m5):
    r = m5.restrict((3, 4, 4))
    assert len(r) == weyl_dimension((3, 1, 1), 3) * 4 * 4 == 96


def test_m5_zero_at_minimal_dims():
    b = schur.m5_basis((3, 3, 4))
    assert len(b) == 0 and "zero module" in b.note


def test_m9_basis(m9):
    assert len(m9) == 20
    assert {9216, 25488, 43668} <= {len(p) for p in m9.polys}
    assert m9.rank() == 20
    weights = {p.multidegree[2] for p in m9.polys}
    assert (3, 3, 3, 0) in weights and (3, 2, 2, 2) in weights


@pytest.mark.slow
def test_m6_at_444_reaches_1000():
    b = schur.m6_basis((4, 4, 4))
    assert len(b) == 1000 == b.expected_dim()
    assert b.rank() == 1000


# -- text format ---------------------------------------------------------------

def test_text_round_trip_byte_identical(m6):
    text = schur.format_basis(m6)
    again = schur.parse_basis(text)
    assert schur.format_basis(again) == text
    assert again.polys == m6.polys and again.triple == m6.triple
    assert text.startswith("# module=M6 dims=3,3,4 degree=6\npoly 1 filling=(2,2,2):[1,1;2,2;3,3]|")


def test_text_parse_errors():
    with pytest.raises(ValueError):
        schur.parse_basis("no header\n")
    with pytest.raises(ValueError):
        schur.parse_basis("# module=M6 dims=3,3,4 degree=6\n+1 x[1,1,1]\n")


# -- vanishing -------------------------------------------------------------------

def test_m6_vanishes_on_secant_and_subspace(m6):
    for seed in range(3):
        T = sample_secant(4, (3, 3, 4), seed=seed).tensor
        S = sample_subspace((3, 3, 3), (3, 3, 4), seed=seed).tensor
        assert all(p.evaluate(T) == 0 for p in m6.polys)
        assert all(p.evaluate(S) == 0 for p in m6.polys)
