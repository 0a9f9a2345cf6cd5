"""
Fundamental classes of complete intersections
=============================================

The connective class of a complete intersection interpolates between its
K-theory class (invert beta) and its cycle class (set beta to zero).
"""

from okc import CompleteIntersection, fundamental_triple, verify_fundamental_triangle

for dims, degrees in [((2,), [(2,)]), ((3,), [(2,), (3,)]), ((1, 2), [(2, 3)])]:
    X = CompleteIntersection.of(dims, degrees)
    t = fundamental_triple(X)
    print(X)
    print("  connective :", t.ck)
    print("  K-theory   :", t.g)
    print("  Chow       :", t.ch)
    print("  triangle   :", verify_fundamental_triangle(X).passed)
