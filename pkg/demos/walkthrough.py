"""Walk one random drawing through the whole pipeline and print each stage.

    python demos/walkthrough.py [n] [seed]
"""
import math
import sys

from disjoint_matching.cylinder import best_cut, build_cylindrical, cut_and_unroll, kept_counts
from disjoint_matching.gen import random_points
from disjoint_matching.grower import grow_plane_subgraph, max_degree_non_root
from disjoint_matching.matching import greedy_matching_avoiding, longest_chains, solve

n = int(sys.argv[1]) if len(sys.argv) > 1 else 40
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1

d = random_points(n, seed)
print(f"complete straight-line drawing: {d.n} vertices, {d.m} edges")

# Grow a plane, connected, min-degree-2 subgraph around the root.
g = grow_plane_subgraph(d, 0)
u, delta = max_degree_non_root(g)
print(f"plane subgraph: {len(g.edge_set)} edges after {len(g.trace)} growth steps")
print(f"busiest non-root vertex {u} has degree {delta}")

# If delta is small, a greedy matching in the plane subgraph is already large.
m = greedy_matching_avoiding(g)
print(f"greedy matching avoiding the root: {len(m)} edges "
      f"(guaranteed at least {math.ceil((n - 1) / (4 * delta))})")

# If delta is large, the neighbours of u carry a drawing on a cylinder.
c = build_cylindrical(d, g, u)
print(f"cylinder of width {c.delta}, {len(c.cyl_edges)} edges")
if c.delta >= 3:
    cut, kept = best_cut(c)
    print(f"edges kept per cut column: {kept_counts(c)}; cutting column {cut}")
    x = cut_and_unroll(c, cut)
    for kind, chain in longest_chains(x.drawing).items():
        print(f"  longest {kind.value:<11} chain: {len(chain)}")

r = solve(d)
print(f"result: {r.size} pairwise disjoint edges "
      f"{[d.edges[e].key for e in r.edges]}")
