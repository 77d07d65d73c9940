"""
Euler integrals and their fixed-point shadow
============================================

A reflection of a square, and a rotation of a hexagon, both acting
simplicially.  Restricting an invariant function to the fixed points changes
the function but not its Euler integral, once both are read mod p.
"""

from smithcalc.simplicial import (CFun, build_complex, dualize, euler_integral,
                                  fixed_subcomplex, smith_restrict)
from smithcalc.simplicial.action import GComplex

# the boundary of a square, reflected through the diagonal 1-3
square = build_complex([["1", "2"], ["2", "3"], ["3", "4"], ["1", "4"]])
g = GComplex(square, {"2": "4", "4": "2"}, 2)
print("fixed simplices:", sorted(fixed_subcomplex(g)))

f = CFun.constant(square, 1, ring="F2")
print("integral of 1 over the square  :", euler_integral(f))
print("integral over the fixed points :", euler_integral(smith_restrict(g, f)))

# the indicator of three vertices: integral 3 = 1 mod 2, and one fixed vertex survives
h = CFun(square, "F2", {("1",): 1, ("2",): 1, ("4",): 1})
print("h:", euler_integral(h), "->", euler_integral(smith_restrict(g, h)))

# Verdier duality on a closed 1-manifold is -1 on every open cell here
print("D(1) =", dualize(CFun.constant(square, 1)))

# mod 3: the hexagon with a rotation by 120 degrees has no fixed points
hexagon = build_complex([[i, (i + 1) % 6] for i in range(6)])
rot = GComplex(hexagon, {i: (i + 2) % 6 for i in range(6)}, 3)
one = CFun.constant(hexagon, 1, ring="F3")
print("hexagon:", euler_integral(one), "->", euler_integral(smith_restrict(rot, one)))
