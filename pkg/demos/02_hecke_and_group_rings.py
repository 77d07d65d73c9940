"""
Convolution of kernels on a finite set
======================================

On a discrete carrier a kernel is just a matrix and convolution is matrix
multiplication.  Invariant kernels for a group acting freely form a copy of
the group ring.
"""

import random

from smithcalc import hecke
from smithcalc.simplicial import build_complex

rng = random.Random(3)
c = build_complex([[0, 1], [1, 2]])
k1, k2, k3 = (hecke.random_kernel(rng, c) for _ in range(3))
left = hecke.convolve(hecke.convolve(k1, k2), k3)
right = hecke.convolve(k1, hecke.convolve(k2, k3))
print("associative on a path:", left == right)

for order in (2, 3, 4, 6, 8):
    for name, group in sorted(hecke.small_groups(order).items()):
        rep = hecke.group_ring_bridge(group).verify()
        print(f"|G|={order:<2} {name:<10}", "ok" if all(rep.values()) else rep)

# smith restriction of kernels is multiplicative
act = hecke.polygon_action(4)
a = hecke.random_invariant_kernel(rng, act)
b = hecke.random_invariant_kernel(rng, act)
lhs = hecke.smith_hecke(hecke.convolve(a, b), act)
rhs = hecke.convolve(hecke.smith_hecke(a, act), hecke.smith_hecke(b, act))
print("smith(a*b) == smith(a)*smith(b):", lhs == rhs)
