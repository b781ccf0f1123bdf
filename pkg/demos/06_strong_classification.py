"""
Strong orientability verdicts
=============================

``classify_strong`` chains the known results: peel leaves, accept bipartite
and near-bipartite cores, reject via a failing forest or two odd cycles, and
otherwise say it does not know.
"""
from efxorient import Graph, classify_strong

cases = {
    "tree": Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)]),
    "C5": Graph.cycle(5),
    "K4": Graph.complete(4),
    "shared-edge triangles": Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    "C5 and C3 joined by an edge": Graph(8, list(Graph.cycle(5).edges) + [(5, 6), (6, 7), (5, 7), (0, 5)]),
    "3-chromatic, no known pattern": Graph(7, [(0, 2), (0, 4), (1, 3), (1, 5), (2, 6), (3, 6), (4, 5), (4, 6), (5, 6)]),
}
for name, g in cases.items():
    c = classify_strong(g)
    extra = f", confirmed by search: {c.confirmed}" if c.verdict == "no" else ""
    print(f"{name}: {c.verdict} ({c.reason}){extra}")
