"""
Orienting bipartite and nearly bipartite graphs
===============================================

On a bipartite graph, let one side take its favorite edges and push the rest
to the other side. If one vertex sits on every odd cycle through each of its
edges, it takes its favorite first and the rest of the graph is bipartite.
"""
import random
from fractions import Fraction

from efxorient import AdditiveValuation, Graph, orient_bipartite, orient_near_bipartite, peel_degree_one, verify_efx
from efxorient.characterize import find_near_bipartite_vertex

rng = random.Random(0)


def random_valuation(g):
    return AdditiveValuation(
        g, {(v, e): Fraction(rng.randint(0, 100), rng.randint(1, 100)) for e, ab in enumerate(g.edges) for v in ab}
    )


c6 = Graph.cycle(6)
ok = all(verify_efx(c6, v, orient_bipartite(c6, v)).verdict for v in (random_valuation(c6) for _ in range(200)))
print("C6, 200 random valuations, all EFX:", ok)

# A 7-cycle with one chord: 0,3,4,5,6 is the odd cycle and 0..3 the even one.
g = Graph(7, list(Graph.cycle(7).edges) + [(0, 3)])
v = find_near_bipartite_vertex(g)
print("near-bipartite vertex:", v)
ok = all(verify_efx(g, val, orient_near_bipartite(g, v, val)).verdict for val in (random_valuation(g) for _ in range(200)))
print("chorded C7, 200 random valuations, all EFX:", ok)

# Pendant vertices never matter: peel them, solve the core, hand each
# peeled edge to its leaf.
lolli = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (3, 5)])
p = peel_degree_one(lolli)
print("core edges:", [lolli.edges[e] for e in p.core_edges], "peel order:", p.order)
