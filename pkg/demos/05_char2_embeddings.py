"""
Orthogonal groups in characteristic 2
=====================================

Odd-dimensional quadratic spaces over F_2 and F_4, and the passage from even
orthogonal to symplectic groups through the polar form.
"""

from smithcalc import charp

print(charp.odd_orthogonal_sum_embedding(1, 1, q=2))
print({k: v for k, v in charp.odd_orthogonal_sum_embedding(1, 2, q=4, samples=200).items()
       if k != "failures"})
for a in (1, 2):
    print("so(2a) -> sp(2a), a =", a, charp.so_to_sp(a, 2)["passed"])
print("F4 roots primitive:", charp.f4_primitivity_check()["passed"])
