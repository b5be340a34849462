"""
Computing a shortest path graph
===============================

The vertices of S(G, a, b) are the shortest a-b paths of G. Two paths are
adjacent when they differ in exactly one vertex, and the edge is labelled
with the position (index level) of that vertex.
"""

from spg import build_spg, count_geodesics
from spg.graph import Graph

# a - {x1, x2} - {y1, y2} - b with every edge between consecutive layers
a, x1, x2, y1, y2, b = range(6)
g = Graph(6, [(a, x1), (a, x2), (x1, y1), (x1, y2), (x2, y1), (x2, y2), (y1, b), (y2, b)])

print("geodesics:", count_geodesics(g, a, b))
spg = build_spg(g, a, b)
for i, geo in enumerate(spg.geodesics):
    print(f"  U{i} = a {' '.join(map(str, geo))} b")

# four paths in a 4-cycle; labels alternate around it
for i, j, level in spg.edges:
    print(f"  U{i} -- U{j}  differ at level {level}")

print()
print(spg.to_dot())
