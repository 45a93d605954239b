"""Compare the pipeline with the exact optimum on convex complete drawings.

For points in convex position the optimum is n // 2: the hull edges taken
alternately.  The x-monotone chain step reaches it as well.
"""
from disjoint_matching.gen import convex
from disjoint_matching.matching import chain_extract, solve
from disjoint_matching.oracle import max_disjoint_bruteforce

print(" n  solve  chain  oracle")
for n in range(4, 12):
    d = convex(n)
    opt = max_disjoint_bruteforce(d)
    print(f"{n:2d}  {solve(d).size:5d}  {len(chain_extract(d)):5d}  {opt.optimum:6d}"
          f"   ({opt.explored} search nodes)")
