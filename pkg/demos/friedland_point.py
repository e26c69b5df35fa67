"""A 3x3x4 tensor that the degree 9 equations miss but the degree 6 ones catch.

    T = (a1 b1 + a2 b2) c1 + (a1 b1 + a2 b3) c2 + (a1 b1 + a3 b2) c3 + (a1 b1 + a3 b3) c4

Run with ``python3 demos/friedland_point.py`` (about 20 seconds, mostly
building the degree five basis once).
"""
from salmon.determinantal import flattening_ranks, psi_rank
from salmon.membership import border_rank_le4_test, friedland_point, test_family

P = friedland_point()
print("flattening ranks:", flattening_ranks(P))   # all <= 4, so flattenings say nothing
print("rank of psi:", psi_rank(P))                # 8 = 2*4, degree 9 minors vanish

for fam in ("M9", "M6"):
    v = test_family(P, fam, trials=5)
    print(fam, v["verdict"], v.get("witness", {}).get("value", ""))

# degree five: zero as a module on 3x3x4, so compress into 4x4x4 explicitly
print("M5 on 4x4x4 compressions:", test_family(P, "M5", trials=5, skip_trivial=False)["verdict"])

print("\nfull report:")
print(border_rank_le4_test(P, trials=5).to_json())
