"""Run the property checks over whole families of lattices.

A campaign enumerates a family (every poset up to some size, every chain
product up to some size, or seeded random trees), runs named checks on
each lattice and collects counts, violations and histograms into one JSON
report.  Reports are deterministic, so two runs can be compared with diff.
"""

import json

from hibilat import FamilySpec, run_campaign

spec = FamilySpec("all-posets", n=4, n_min=0)
rep = run_campaign(spec, ["theorem-a", "tree-honest", "structure", "rank-structure"])
print(rep.summary())

# how far the partner count falls short of the codimension, over all points
print("codim - |E| histogram:", rep.to_dict()["distributions"]["codim_minus_E"])

spec = FamilySpec("random-trees", count=20, seed=1, max_size=300)
rep = run_campaign(spec, ["lemma-chain", "bijection", "theorem-c"])
print()
print(rep.summary())

again = run_campaign(spec, ["lemma-chain", "bijection", "theorem-c"])
print("byte-identical rerun:", again.to_json() == rep.to_json())

with open("campaign-trees.json", "w") as fh:
    fh.write(rep.to_json() + "\n")
print("report written to campaign-trees.json;", len(json.loads(rep.to_json())["violations"]),
      "violations")
