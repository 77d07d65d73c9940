"""
Tate cohomology of Z/p-modules
==============================

Perfect complexes are the ones invisible to Tate cohomology.  The trivial
module is not perfect; the regular module is; and every complex is
quasi-isomorphic, up to a perfect cone, to its shift by 2.
"""

from smithcalc import tate
from smithcalc.simplicial import build_complex
from smithcalc.simplicial.action import GComplex

for p in (2, 3, 5):
    k, free = tate.unit(p), tate.free_module(p)
    print(f"p={p}: chi(K)={tate.chi_mod_p(k)} chi(free)={tate.chi_mod_p(free)}",
          "Tate(K):", tate.tate_cohomology(k))
    print("   witness:", tate.periodicity_witness(k).verify())

# cochains of a free action are perfect; a fixed apex spoils that
hexagon = [[f"h{i}", f"h{(i + 1) % 6}"] for i in range(6)]
g = GComplex(build_complex(hexagon), {f"h{i}": f"h{(i + 3) % 6}" for i in range(6)}, 2)
print("free hexagon perfect:", tate.is_perfect(tate.equivariant_cochains(g)))
cone = GComplex(build_complex([s + ["apex"] for s in hexagon]), dict(g.generator, apex="apex"), 2)
print("coned hexagon perfect:", tate.is_perfect(tate.equivariant_cochains(cone)))
print("link of the apex:", tate.link_cone_perfection(cone, "apex"))
