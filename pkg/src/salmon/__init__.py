"""Equations for the fourth secant variety of three-factor Segre products.

Subpackages are plain modules:

* ``algebra``, ``linalg``, ``tensor``, ``fasteval``: exact polynomials, linear algebra and tensors
* ``reptheory``: partitions, tableaux, characters and Kronecker coefficients
* ``schur``: Young-symmetrizer construction of module bases (M5, M6, M9)
* ``determinantal``: the block matrix psi_T, the degree-9 equation, flattenings
* ``membership``: the border rank <= 4 zero-set test
* ``geometry``: sampling, dimension counts and the ideal scan
"""
from .algebra import Polynomial, canonicalize, evaluate, multidegree_of, substitute_indices
from .tensor import Tensor3

__all__ = ["Polynomial", "Tensor3", "canonicalize", "evaluate", "multidegree_of", "substitute_indices"]
