"""
Torsion elements of prime order from the extended Dynkin diagram
================================================================

Nodes whose highest-root coefficient is a prime p give elements of order p;
their centralizers come from deleting the node from the extended diagram.
"""

from smithcalc.roots import (centralizer_by_congruence, centralizer_by_deletion,
                             centralizer_datum, dual_datum, highest_root_coeffs,
                             kac_order_p_nodes, root_datum, verify_coroot_compatibility)

for t in ["G2", "F4", "E6", "E7", "E8"]:
    print(t, highest_root_coeffs(root_datum(t[0], int(t[1:]))))

e8 = root_datum("E", 8)
for p in (2, 3, 5):
    for node in kac_order_p_nodes(e8, p):
        h = centralizer_by_deletion(e8, node)
        same = set(h.roots) == centralizer_by_congruence(e8, node)
        print(f"E8 p={p} node {node.index}: {h.type}, {len(h.roots)} roots (congruence route agrees: {same})")

# symplectic groups split as Sp x Sp (labels write C1 as A1 and C2 as B2)
c4 = root_datum("C", 4)
for node in kac_order_p_nodes(c4, 2):
    print("C4 node", node.index, "->", centralizer_by_deletion(c4, node).type)

# the centralizer of the dual is the dual of the centralizer
node = kac_order_p_nodes(root_datum("F", 4), 3)[0]
h = centralizer_datum(root_datum("F", 4), node)
print("F4 p=3:", verify_coroot_compatibility(root_datum("F", 4), node)["passed"],
      set(dual_datum(h).roots) == set(h.coroots))
