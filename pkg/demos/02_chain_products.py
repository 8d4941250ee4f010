"""Products of chains: every coordinate point is smooth.

For a product of chains c(n1) x ... x c(nk) the partner count at each
element reaches the codimension, so the Jacobian has full rank everywhere.
Removing a maximal join-irreducible loses at least |B| - 1 partners at
every surviving element; the last loop reports where the loss is larger.
"""

from hibilat import chain_product, decompose_chain_product, smoothness_report
from hibilat.classify import maximal_join_irreducibles, verify_lemma_greater
from hibilat.harness import chain_product_sizes

print(f"{'factors':<14}{'|L|':>5}{'codim':>7}{'min |E|':>9}  all smooth")
for sizes in chain_product_sizes(36):
    if len(sizes) < 2:
        continue
    L = chain_product(sizes)
    rep = smoothness_report(L)
    print(f"{'x'.join(map(str, sizes)):<14}{len(L):>5}{L.codim:>7}"
          f"{min(p.E for p in rep.points):>9}  {rep.all_smooth}")

# A square lattice can be read back as a product of chains.
L = chain_product([4, 3])
dec = decompose_chain_product(L)
print("\nc(4) x c(3) decomposes as", dec.factor_sizes, "along", dec.branches)

# Removing a maximal join-irreducible leaves a smaller square lattice.
for sizes in ([4, 3], [3, 3, 2]):
    L = chain_product(sizes)
    for beta in maximal_join_irreducibles(L):
        r = verify_lemma_greater(L, beta)
        print(f"{L.name}, beta={beta}: holds={bool(r)}, "
              f"equality deviations={len(r.equality_deviations)}")
