#!/usr/bin/env python3
# Rank bookkeeping: the kernel rank of the boundary-intersection map, the
# constraint rank per reduction type, and the inequalities that gate the
# method.

from affchab import (
    NumberFieldInvariants,
    chabauty_condition,
    chabauty_condition_uniform,
    ker_sigma_rank,
    ros_condition,
    selmer_rank,
)
from affchab.selmer import condition_margins

# the genus-2 curve over an imaginary quadratic field: two rational cusps
# become two conjugate complex pairs, the Jacobian has rank 2
iq = NumberFieldInvariants(degree=2, unit_rank=0, genus=2, n=2,
                           num_cusps=2, n1=0, n2=2, mw_rank=2)
print("kernel rank:", ker_sigma_rank(iq))
print("constraint rank (no cuspidal primes):", selmer_rank(iq, 0))
lhs, rhs = condition_margins(iq, 0)
print(f"rank condition: {lhs} < {rhs} ->", chabauty_condition(iq, 0))
print("scalar-restriction condition:", ros_condition(iq, 0))

# the genus-1 cubic with a rational and a quadratic cusp, S = {q}
cubic = NumberFieldInvariants(degree=1, unit_rank=0, genus=1, n=3,
                              num_cusps=2, n1=1, n2=1, mw_rank=1)
print("\ncubic kernel rank:", ker_sigma_rank(cubic))
print("cubic constraint rank (one cuspidal prime):", selmer_rank(cubic, 1))
lhs, rhs = condition_margins(cubic, 1)
print(f"cubic rank condition: {lhs} < {rhs} ->", chabauty_condition(cubic, 1))
print("uniform form with #S = 1:", chabauty_condition_uniform(cubic, 1))

# the condition is monotone: once the rank is too large it stays failing
for r in range(6):
    inv = NumberFieldInvariants(degree=1, unit_rank=0, genus=1, n=3,
                                num_cusps=2, n1=1, n2=1, mw_rank=r)
    print(f"rank {r}: condition ->", chabauty_condition(inv, 1))
