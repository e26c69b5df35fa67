"""Walk through the degree-six equations on 3x3x4 tensors.

Run with ``python3 demos/m6_construction.py``.  Takes a few seconds.
"""
import numpy as np

from salmon import schur
from salmon.geometry import sample_secant
from salmon.membership import m6_values_at
from salmon.reptheory import enumerate_ssyt, kronecker_mult, weyl_dimension
from salmon.tensor import Tensor3

# The module S_222 A* (x) S_222 B* (x) S_3111 C* shows up once in degree six.
print("multiplicity:", kronecker_mult((2, 2, 2), (2, 2, 2), (3, 1, 1, 1)))
print("dim S_222 C^3 =", weyl_dimension((2, 2, 2), 3), " dim S_3111 C^4 =", weyl_dimension((3, 1, 1, 1), 4))

# Ten semistandard fillings of (3,1,1,1) index a basis.
for f in enumerate_ssyt((3, 1, 1, 1), 4):
    print("  filling", f.encode())

basis = schur.m6_basis((3, 3, 4))
print("\npolynomial sizes:", [len(p) for p in basis.polys])

hw = basis.polys[0]
print("highest weight polynomial multidegree:", hw.multidegree)
print("first few terms:")
for line in schur.format_basis(basis).splitlines()[2:7]:
    print("  ", line)

# They vanish on tensors of rank four ...
T = sample_secant(4, (3, 3, 4), seed=0).tensor
print("\nvalues at a rank-4 tensor:", [str(v) for v in m6_values_at(T)])

# ... and not on a random one.
G = Tensor3(np.random.default_rng(1).integers(-5, 6, (3, 3, 4)))
print("nonzero values at a random tensor:", sum(v != 0 for v in m6_values_at(G)), "of 10")
