"""
Checking and finding EFX orientations
=====================================

Every good is an edge and every agent a vertex; an agent only cares about
the edges touching it. An orientation hands each edge to one of its two
endpoints.
"""
from fractions import Fraction

from efxorient import AdditiveValuation, Graph, Orientation, find_efx_orientation, verify_efx

# Two triangles sharing the edge 1-2. The outer edges are worth 1 to both
# ends, the shared edge 1/2, and the two remaining edges nothing.
g = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
weights = {}
for e, (a, b) in enumerate(g.edges):
    w = {0: 1, 2: Fraction(1, 2), 4: 1}.get(e, 0)
    weights[(a, e)] = weights[(b, e)] = w
val = AdditiveValuation(g, weights)

# Give vertex 1 both the shared edge and the edge to 0: vertex 0 is left with
# nothing it values, and still sees edge 0-1 in 1's bundle after removing 1-2.
report = verify_efx(g, val, Orientation([1, 0, 1, 3, 2]))
print("EFX:", report.verdict)
print("violations (envier, enviee, removed edge):", report.violations)

# The exhaustive search agrees that no orientation works here.
out = find_efx_orientation(g, val)
print("orientation found:", out.found, "after", out.stats["nodes"], "search nodes")

# With every edge worth 1 to both ends a triangle is easy: orient it cyclically.
tri = Graph.complete(3)
out = find_efx_orientation(tri, AdditiveValuation.uniform(tri))
print("triangle heads:", out.orientation.heads)
