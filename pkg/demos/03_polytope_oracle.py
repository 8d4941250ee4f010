"""Two independent smoothness tests that must agree.

The Jacobian test works on the binomial relations at a coordinate point.
The polytope test looks at the vertex of the order polytope for the same
element and asks whether its cone is spanned by a lattice basis.
"""

from hibilat import chain_product, example_lattice, is_smooth_at, order_polytope
from hibilat.polytope import polytope_edges, toric_smooth_all_vertices, vertex_cone_report

P = order_polytope(chain_product([3, 2]))
print("c(3) x c(2): order polytope in R^%d" % P.ambient_dim)
print("vertices (rows are ideal indicators):")
print(P.vertices)
print("edges:", polytope_edges(P))

for L in (chain_product([3, 2]), chain_product([2, 2, 2]), example_lattice()):
    P = order_polytope(L)
    ok, cones = toric_smooth_all_vertices(P)
    print(f"\n{L.name}: all vertex cones unimodular = {ok}")
    for a, cone in enumerate(cones):
        jac = is_smooth_at(L, a)
        mark = "" if jac.smooth == cone.unimodular else "  <-- disagree"
        print(f"  {cone.label:<10} cone: {cone.reason:<12} jacobian: {jac.verdict}{mark}")

# A single vertex, with its primitive edge directions.
L = example_lattice()
rep = vertex_cone_report(order_polytope(L), L.element("3"))
print("\nvertex 3 edge directions:", rep.edge_directions)
