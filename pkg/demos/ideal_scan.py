"""Which isotypic components of low degree vanish on rank-4 3x3x4 tensors?

Run with ``python3 demos/ideal_scan.py [max_degree]``; degree 6 takes about a
minute, degree 5 a few seconds.
"""
import sys
import time

from salmon.geometry import ideal_scan, terracini_dim

print("dim sigma_4 (projective):", terracini_dim(4, (3, 3, 4)), "in P^35")

top = int(sys.argv[1]) if len(sys.argv) > 1 else 6
for d in range(2, top + 1):
    t0 = time.perf_counter()
    res = ideal_scan(d, (3, 3, 4))
    total = sum(c.multiplicity for c in res.components)
    print(f"d={d}: {len(res.components)} components, {total} highest weight vectors, "
          f"vanishing {[c.triple for c in res.vanishing]}  ({time.perf_counter() - t0:.1f}s)")
