"""
Fourier transform of conic functions and the swap of coordinates
=================================================================

The constant function on the plane, with the fan cut by the diagonal.  Going
around the square (transform then restrict to the diagonal, or the other way)
gives +1 one way and -1 the other, so the square only commutes mod 2.
"""

from smithcalc import conic

fan = conic.refine_by_hyperplane(conic.coordinate_fan(2), (1, -1))
f = conic.ConicCFun.constant(fan)
print("rays:", fan.rays)

for xi in [(1, 0), (0, 1), (-1, -1), (2, -1)]:
    print("FT(1)", xi, "=", conic.ft_value(f, xi))

for row in conic.smith_ft_square(f, [1, 0], [(1,), (-1,), (0,)]):
    print(row["covector"], row["ft_then_smith"], row["smith_then_ft"],
          "equal over Z" if row["equal_over_Z"] else "equal mod 2 only")

# the cyclic permutation of three coordinates, p = 3
fan3 = conic.coordinate_fan(3)
for n in [(1, -1, 0), (0, 1, -1), (1, 0, -1)]:
    fan3 = conic.refine_by_hyperplane(fan3, n)
rows = conic.smith_ft_square(conic.ConicCFun.constant(fan3), [1, 2, 0], [(1,), (-1,)])
print([(r["ft_then_smith"], r["smith_then_ft"], r["equal_mod_p"]) for r in rows])
