import math
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from salmon.reptheory import (SemistandardFilling, class_size, enumerate_ssyt, isotypic_decomposition,
                              kronecker_mult, mn_character, num_standard_tableaux, partitions,
                              standard_tableaux, weyl_dimension)


def test_ssyt_3111():
    got = [f.encode() for f in enumerate_ssyt((3, 1, 1, 1), 4)]
    expected = [f"(3,1,1,1):[{r};2;3;4]" for r in
                ("1,1,1", "1,1,2", "1,1,3", "1,1,4", "1,2,2", "1,2,3", "1,2,4", "1,3,3", "1,3,4", "1,4,4")]
    assert got == expected


def test_ssyt_edge_cases():
    assert enumerate_ssyt((2, 1, 1, 1), 3) == []
    (only,) = enumerate_ssyt((3, 3, 3), 3)
    assert only.rows == ((1, 1, 1), (2, 2, 2), (3, 3, 3))


@pytest.mark.parametrize("shape,n,dim", [((2, 2, 2), 3, 1), ((3, 1, 1, 1), 4, 10), ((3, 3, 3), 4, 20),
                                         ((2, 1, 1, 1), 3, 0), ((3, 1, 1), 4, 36), ((2, 1, 1, 1), 4, 4)])
def test_weyl_dimension(shape, n, dim):
    assert weyl_dimension(shape, n) == dim


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8).flatmap(lambda d: st.sampled_from(partitions(d))), st.integers(1, 5))
def test_ssyt_count_is_weyl_dimension(shape, n):
    assert len(enumerate_ssyt(shape, n)) == weyl_dimension(shape, n)


def test_filling_validation_and_parse():
    with pytest.raises(ValueError):
        SemistandardFilling(((1, 2), (1,)))
    with pytest.raises(ValueError):
        SemistandardFilling(((2, 1),))
    f = SemistandardFilling.parse("(3,1,1,1):[1,1,1;2;3;4]")
    assert f == SemistandardFilling.highest((3, 1, 1, 1))
    assert f.weight(4) == (3, 1, 1, 1)
    with pytest.raises(ValueError):
        SemistandardFilling.parse("(3,1):[1,1,1;2;3]")


def test_standard_tableaux_count():
    for shape in [(3, 2, 1), (2, 2, 2), (4, 1, 1)]:
        tabs = standard_tableaux(shape)
        assert len(tabs) == num_standard_tableaux(shape) == len({t.rows for t in tabs})


def test_characters():
    assert all(mn_character((5,), ct) == 1 for ct in partitions(5))
    for ct in partitions(5):
        assert mn_character((1,) * 5, ct) == (-1) ** (5 - len(ct))
    assert mn_character((2, 1), (1, 1, 1)) == 2
    with pytest.raises(ValueError):
        mn_character((2, 1), (2,))


def test_class_sizes_sum():
    for d in range(1, 8):
        assert sum(class_size(ct) for ct in partitions(d)) == math.factorial(d)


@pytest.mark.parametrize("d", range(1, 8))
def test_character_orthogonality(d):
    parts = partitions(d)
    for p in parts:
        for q in parts:
            s = sum(class_size(c) * mn_character(p, c) * mn_character(q, c) for c in parts)
            assert s == (math.factorial(d) if p == q else 0)


def test_kronecker_values():
    assert kronecker_mult((1,), (1,), (1,)) == 1
    assert kronecker_mult((2, 2, 2), (2, 2, 2), (3, 1, 1, 1)) == 1
    for p in partitions(4):
        for q in partitions(4):
            assert kronecker_mult((4,), p, q) == int(p == q)
    with pytest.raises(ValueError):
        kronecker_mult((2,), (1, 1), (3,))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: st.tuples(*[st.sampled_from(partitions(d))] * 3)))
def test_kronecker_symmetric(triple):
    vals = {kronecker_mult(*perm) for perm in permutations(triple)}
    assert len(vals) == 1


def test_isotypic_degree_one():
    (c,) = isotypic_decomposition(1, (3, 3, 4))
    assert (c.triple, c.multiplicity, c.component_dim) == (((1,), (1,), (1,)), 1, 36)


def test_isotypic_m6_component():
    comps = {c.triple: c for c in isotypic_decomposition(6, (3, 3, 4))}
    c = comps[((2, 2, 2), (2, 2, 2), (3, 1, 1, 1))]
    assert (c.multiplicity, c.component_dim) == (1, 10)


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("dims", [(3, 3, 4), (2, 3, 3), (4, 4, 4)])
def test_isotypic_dimension_sum(d, dims):
    N = dims[0] * dims[1] * dims[2]
    assert sum(c.component_dim for c in isotypic_decomposition(d, dims)) == math.comb(N + d - 1, d)


def test_degree_guard():
    with pytest.raises(ValueError):
        isotypic_decomposition(10, (3, 3, 3))


def test_m9_multiplicity_is_computed_not_assumed():
    # recorded from the computation; there is no independent published value
    assert kronecker_mult((3, 3, 3), (3, 3, 3), (3, 3, 3)) == 1
