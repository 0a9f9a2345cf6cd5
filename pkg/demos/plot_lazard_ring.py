"""
The Lazard ring, degree by degree
=================================

Imposing associativity on a generic commutative law gives integer linear
relations among monomials in the a_ij.  Smith normal form of each degree
shows a free group whose rank is the partition number.
"""

from okc import classifying_map, fgl_multiplicative, lazard_truncation, apply_map

L = lazard_truncation(6)
for piece in L.to_json():
    print(f"degree {piece['degree']}: rank {piece['rank']}, torsion {piece['torsion']}, spanned by {piece['monomials']}")

###############################################################################
# The first relation shows up in degree 3
for r in L.relations[:3]:
    print("relation:", r)

###############################################################################
# The classifying map of the multiplicative law sends a11 to -beta and kills
# everything else; pushing the universal law along it gives u + v - beta*u*v back.
phi = classifying_map(fgl_multiplicative(6), L)
print(phi)
print(apply_map(phi, L.fgl()).series())
