"""
Binary valuations and the forest condition
==========================================

A graph admits an EFX orientation for *every* 0/1 valuation exactly when each
of its forests lets us pick one vertex per tree so that the forest-neighbors of
the picks form an independent set. We compare that test to raw brute force.
"""
from efxorient import Graph, check_01_characterization, exists_efx_for_all_01, matching_condition, orient_01
from efxorient.valuations import enumerate_01_valuations
from efxorient.verify import verify_efx

bowtie = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
k24 = Graph.complete_bipartite(2, 4)

for name, g in (("bowtie", bowtie), ("K_{2,4}", k24)):
    c = check_01_characterization(g)
    brute = exists_efx_for_all_01(g)
    print(f"{name}: forest test says {c.orientable}, brute force over 4^{g.m} valuations says {brute.all_orientable}")
    if not c.orientable:
        print("  failing forest:", sorted(c.forest), "trees:", [sorted(vs) for _, vs in c.trees])

# The matching condition is a quick necessary check: two disjoint edges of K4
# span four pairwise adjacent vertices.
mc = matching_condition(Graph.complete(4))
print("K4 matching condition:", mc.satisfied, "matching", sorted(mc.matching), "max independent", mc.max_independent)

# When the test passes, the proof is constructive. Run it on every binary
# valuation of K_{2,4} and check each output.
bad = sum(not verify_efx(k24, v, orient_01(k24, v)).verdict for v in enumerate_01_valuations(k24))
print("K_{2,4}: orient_01 failures over all", 4 ** k24.m, "valuations:", bad)
