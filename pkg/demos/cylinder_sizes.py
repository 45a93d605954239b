"""Exact maximum disjoint matchings on random cylindrical drawings.

Prints, per width, the smallest and mean optimum seen over a handful of
drawings of each generator kind.  The same report is available from the
command line as ``disjoint-matching estimate-c``.
"""
import statistics

from disjoint_matching.gen import cyl_random, cyl_selfhosted
from disjoint_matching.oracle import max_disjoint_cylindrical

TRIALS = 10

for delta in range(4, 10):
    row = []
    for make in (cyl_selfhosted, cyl_random):
        sizes = [max_disjoint_cylindrical(make(delta, seed)).optimum for seed in range(TRIALS)]
        row.append(f"{make.__name__} min {min(sizes)} mean {statistics.fmean(sizes):.1f}")
    print(f"width {delta}: " + "; ".join(row))
