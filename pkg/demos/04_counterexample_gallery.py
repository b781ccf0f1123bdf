"""
Instances with no EFX orientation
=================================

Two odd cycles that share an edge, share a vertex, or are joined by a path
defeat EFX under a suitable valuation. Each generated bundle records how it
was built and can be rebuilt and re-checked from that record alone.
"""
import json

from efxorient import generate, replay
from efxorient.counterexamples import certify

for family, params in (
    ("glued-triangles-vertex", {}),
    ("triangles-path", {"path_len": 2}),
    ("shared-edge-triangles", {}),
    ("odd-cycles", {"share": "edge", "lens": [5, 5]}),
    ("odd-cycles", {"share": "path:3", "lens": [3, 5]}),
):
    inst = generate(family, **params)
    print(f"{family} {params}: n={inst.graph.n} m={inst.graph.m} -> {certify(inst)}")

inst = generate("odd-cycles", share="vertex", lens=[5, 3])
record = json.dumps(inst.provenance)
print("provenance:", record)
print("replay identical:", replay(json.loads(record)).canonical_json() == inst.canonical_json())
