"""
Sweeping small graphs
=====================

Enumerate all connected graphs on up to six vertices and tabulate which are
0/1 strongly orientable, their chromatic numbers, and the matching condition.
"""
from collections import Counter

from efxorient.cli import run_atlas

report = run_atlas(max_n=6, oracle_max_m=6)
print("graphs per vertex count:", report["counts_by_n"])
for name, a in report["assertions"].items():
    print(name, {k: v for k, v in a.items() if k != "examples"})

orientable = Counter(r["chi"] for r in report["rows"] if r["orientable01"])
print("chromatic numbers of the orientable graphs:", dict(sorted(orientable.items())))
