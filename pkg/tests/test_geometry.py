import pytest

from salmon.determinantal import flattening_ranks, psi_rank, strassen_det
from salmon.geometry import (ideal_scan, sample_secant, sample_subspace, subspace_dim, subspace_jacobian_dim,
                             terracini_dim)
from salmon.membership import m6_values_at
from salmon.schur import M6_TRIPLE


def test_secant_sample_exact():
    s = sample_secant(3, (3, 3, 4), seed=1)
    assert len(s.factors) == 3
    assert all(-100 <= x <= 100 for f in s.factors for v in f for x in v)
    assert all(r <= 3 for r in flattening_ranks(s.tensor))


def test_secant_examples():
    assert flattening_ranks(sample_secant(1, (3, 3, 4), seed=0).tensor) == (1, 1, 1)
    assert psi_rank(sample_secant(1, (3, 3, 4), seed=0).tensor) == 2
    assert all(v == 0 for v in m6_values_at(sample_secant(4, (3, 3, 4), seed=4).tensor))
    assert strassen_det(sample_secant(4, (3, 3, 3), seed=4).tensor) == 0
    with pytest.raises(ValueError):
        sample_secant(0, (3, 3, 3))


def test_subspace_sample(m9):
    s = sample_subspace((3, 3, 3), (3, 3, 4), seed=2)
    assert flattening_ranks(s.tensor) == (3, 3, 3)
    assert all(v == 0 for v in m6_values_at(s.tensor))
    assert any(p.evaluate(s.tensor) != 0 for p in m9.polys[:1])
    with pytest.raises(ValueError):
        sample_subspace((4, 3, 3), (3, 3, 4))


def test_terracini():
    assert terracini_dim(4, (3, 3, 4)) == 31
    assert terracini_dim(1, (3, 3, 4)) == 3 + 3 + 4 - 3
    assert terracini_dim(4, (3, 3, 3)) == 25


def test_terracini_seed_independent():
    assert {terracini_dim(4, (3, 3, 4), seed=s) for s in range(10)} == {31}


def test_subspace_dims():
    assert subspace_dim((3, 3, 3), (3, 3, 4)) == 29
    assert subspace_dim((3, 3, 4), (3, 3, 4)) == 35
    assert subspace_dim((2, 3, 4), (3, 3, 4)) == 25


@pytest.mark.parametrize("target", [(3, 3, 3), (2, 3, 4), (2, 2, 2), (3, 4, 2), (1, 4, 4)])
def test_subspace_dim_matches_jacobian(target):
    dims = (3, 4, 4) if target[0] <= 3 else (4, 4, 4)
    assert subspace_jacobian_dim(target, dims) == subspace_dim(target, dims)


def test_scan_low_degrees():
    for d in (2, 3, 4):
        res = ideal_scan(d, (3, 3, 4), samples=40)
        assert res.vanishing == []
        assert all(c.rank == c.multiplicity for c in res.components)


def test_scan_degree_guard():
    with pytest.raises(ValueError):
        ideal_scan(7)


@pytest.mark.slow
def test_scan_degree_six_finds_one_component():
    res = ideal_scan(6, (3, 3, 4))
    assert [c.triple for c in res.vanishing] == [M6_TRIPLE]
    assert res.vanishing[0].kernel_dim == 1
    assert res.to_json_obj()["vanishing"] == [[[2, 2, 2], [2, 2, 2], [3, 1, 1, 1]]]
