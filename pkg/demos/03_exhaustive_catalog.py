"""
Ground truth from exhaustive search
===================================

Enumerate every connected base graph up to a small order, collect the SPGs
of all endpoint pairs up to isomorphism, and run the structural checks over
the result.
"""

import time

from spg.graph import cycle_graph
from spg.oracle import exhaustive_search, property_suite, refute

MAX_N = 7

start = time.perf_counter()
catalog = exhaustive_search(MAX_N)
print(f"{len(catalog)} distinct SPGs from connected base graphs on <= {MAX_N} vertices "
      f"({time.perf_counter() - start:.1f}s)")

for entry in catalog.sorted_entries():
    h = entry.spg().graph
    print(f"  {entry.key:>14}  {h.n} vertices {h.m} edges  (base on {entry.base.n} vertices, a={entry.a}, b={entry.b})")

print()
for result in property_suite(catalog):
    print(f"  {result.status:4}  {result.check}")

print()
for k in (4, 5, 6):
    print(f"C{k}:", refute(cycle_graph(k), catalog).kind)
