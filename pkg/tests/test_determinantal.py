from fractions import Fraction

import numpy as np
import pytest

from salmon.algebra import substitute_indices
from salmon.determinantal import (build_psi, flattening, flattening_ranks, minor_class, minor_class_counts,
                                  psi_rank, strassen_commutator_form, strassen_det, strassen_raw_sign,
                                  subspace_test)
from salmon.geometry import sample_secant, sample_subspace
from salmon.linalg import exact_rank
from salmon.membership import friedland_point
from salmon.tensor import Tensor3


def test_psi_unit_tensor_rank_two():
    assert psi_rank(Tensor3.unit(0, 0, 0, (3, 3, 3))) == 2


def test_psi_zero():
    assert psi_rank(Tensor3.zeros((3, 3, 4))) == 0


def test_psi_block_layout():
    T = Tensor3(np.arange(27).reshape(3, 3, 3))
    P = build_psi(T)
    assert np.all(P[0:3, 0:3] == 0) and np.all(P[3:6, 3:6] == 0) and np.all(P[6:9, 6:9] == 0)
    assert np.all(P[0:3, 3:6] == T.slice(2, "A"))
    assert np.all(P[0:3, 6:9] == -T.slice(1, "A"))
    assert np.all(P[3:6, 6:9] == T.slice(0, "A"))


def test_psi_needs_three_slices():
    with pytest.raises(ValueError):
        build_psi(Tensor3.zeros((4, 3, 3)))


def test_psi_linear(rng):
    T = Tensor3(rng.integers(-5, 6, (3, 3, 4)))
    S = Tensor3(rng.integers(-5, 6, (3, 3, 4)))
    s = Fraction(-3, 7)
    assert np.all(build_psi(T * s + S) == build_psi(T) * s + build_psi(S))


@pytest.mark.parametrize("c", [3, 4])
@pytest.mark.parametrize("k", range(1, 7))
def test_psi_rank_bound(k, c):
    T = sample_secant(k, (3, 3, c), seed=[k, c]).tensor
    assert psi_rank(T) <= 2 * k


def test_strassen_poly_shape(strassen):
    assert len(strassen) == 9216
    assert strassen.degree == 9
    assert strassen.multidegree == ((3, 3, 3),) * 3


def test_strassen_poly_matches_determinant(strassen, rng):
    sign = strassen_raw_sign()
    for _ in range(20):
        T = Tensor3(rng.integers(-6, 7, (3, 3, 3)))
        assert strassen.evaluate(T) * sign == strassen_det(T)


def test_strassen_vanishes_on_rank_four():
    for seed in range(5):
        assert strassen_det(sample_secant(4, (3, 3, 3), seed=seed).tensor) == 0


def test_strassen_nonzero_generically(rng):
    assert strassen_det(Tensor3(rng.integers(-50, 51, (3, 3, 3)))) != 0


def test_commutator_form_agrees_up_to_fixed_sign(rng):
    """With the block layout above the two expressions differ by the global sign -1."""
    for _ in range(10):
        T = Tensor3(rng.integers(-9, 10, (3, 3, 3)))
        if exact_rank(T.slice(0, "A")) < 3:
            continue
        assert strassen_det(T) == -strassen_commutator_form(T)


def test_commutator_form_needs_invertible_slice():
    with pytest.raises(ValueError):
        strassen_commutator_form(Tensor3.zeros((3, 3, 3)))


def test_strassen_permuted_still_vanishes(strassen):
    q = substitute_indices(strassen, "B", [2, 0, 1])
    for seed in range(3):
        assert q.evaluate(sample_secant(4, (3, 3, 3), seed=seed).tensor) == 0


def test_minor_classes():
    assert minor_class([1, 2, 3, 5, 6, 7, 9, 10, 11]) == (3, 3, 3)
    assert minor_class([1, 2, 3, 4, 5, 6, 7, 9, 10]) == (4, 3, 2)
    assert minor_class([1, 2, 3, 4, 5, 6, 7, 8, 9]) == (4, 4, 1)
    with pytest.raises(ValueError):
        minor_class([1, 2, 3])


def test_minor_class_counts():
    counts = minor_class_counts()
    assert counts == {(3, 3, 3): 64, (4, 3, 2): 144, (4, 4, 1): 12}


def test_flattenings():
    T = Tensor3.rank_one([1, 2, 3], [0, 1, 1], [1, 1, 1, 1])
    assert flattening_ranks(T) == (1, 1, 1)
    assert flattening(T, "C").shape == (4, 9)
    for r in (2, 3):
        assert all(x <= r for x in flattening_ranks(sample_secant(r, (4, 4, 4), seed=r).tensor))


def test_friedland_flattenings_and_psi():
    P = friedland_point()
    assert flattening_ranks(P) == (3, 3, 4)
    assert psi_rank(P) == 8


def test_subspace_test(rng):
    T = Tensor3(rng.integers(-5, 6, (3, 3, 4)))
    assert subspace_test(T.embed((4, 4, 4)), (3, 3, 4))
    assert subspace_test(sample_subspace((3, 3, 3), (3, 3, 4), seed=1).tensor, (3, 3, 3))
    G = Tensor3(rng.integers(-5, 6, (4, 4, 4)))
    assert subspace_test(G, (4, 4, 4)) and not subspace_test(G, (3, 4, 4))
