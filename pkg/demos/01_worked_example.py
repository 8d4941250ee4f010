"""A ten-element distributive lattice and its one bad coordinate point.

Build the lattice from its join-irreducible poset (a root with two children,
one of which has two children of its own), list the binomial relations and
ask at which coordinate points the Hibi variety is smooth.
"""

from hibilat import example_lattice, partner_set, smoothness_report
from hibilat.formats import lattice_dot, relations_text

L = example_lattice()
print(L)
print("elements:", ", ".join(L.labels))
print(f"|L| = {len(L)}, |J| = {L.ji_count_paper}, codim = {L.codim}")

# one relation per incomparable pair
print("\nrelations (integer element ids):")
print(relations_text(L), end="")

rep = smoothness_report(L)
print("\nid      |E|  rank  verdict")
for p in rep.points:
    print(f"{p.label:<8}{p.E:>3}{p.rank:>6}  {p.verdict}")
print("singular at:", rep.singular)

# The partner set at the singular point explains the rank deficit.
ps = partner_set(L, "3")
print("partners of 3:", sorted(L.label(g) for g in ps.partners))

with open("worked-example.dot", "w") as fh:
    fh.write(lattice_dot(L))
print("\nHasse diagram written to worked-example.dot (render with `dot -Tpng`).")
