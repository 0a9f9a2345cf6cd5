"""
Formal group laws and their n-series
====================================

The multiplicative law u + v - beta*u*v is the law of K-theory with a Bott
element.  Below we take it apart: its n-series, its inverse, and the
support decomposition of a multi-sum.
"""

from okc import fgl_multiplicative, formal_inverse, multi_sum, n_series, support_decompose

F = fgl_multiplicative(4)
print("F(u, v) =", F.series())

###############################################################################
# The n-series [n]u = F([n-1]u, u).  For this law it is beta^-1 (1 - (1 - beta u)^n).
for n in range(-2, 5):
    print(f"[{n}]u =", n_series(F, n))

print("inverse:", formal_inverse(F))

###############################################################################
# A multi-sum F_{2,1}(u1, u2) splits by support into pieces that only use
# the variables they are indexed by.
S = multi_sum(F, (2, 1))
print("F_{2,1} =", S)
for I, G in support_decompose(S).items():
    print("  G", I, "=", G)
