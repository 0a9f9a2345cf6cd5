"""
Divisor classes on multiprojective spaces
=========================================

For D = 3 H1 + 2 H2 on P^2 x P^1 we evaluate the formal-group-law weighted
sum over intersection strata and compare it with beta^(d-1) [O_D].
"""

from okc import SNCConfig, divisor_class, verify_recursion

D = SNCConfig.of((2, 1), [((1, 0), 3), ((0, 1), 2)])
res = divisor_class(D)
for I, c in res.contributions.items():
    print("stratum", I, "contributes", c)
print("total    :", res.total)
print("expected :", res.expected)
print("verified :", res.verified)

###############################################################################
# Peeling off the last component one copy at a time gives the recursion
print(verify_recursion(D).to_text())
