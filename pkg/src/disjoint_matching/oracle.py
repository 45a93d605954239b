"""Exact maximum number of pairwise disjoint edges, for small drawings.

Edges become nodes of a conflict graph (adjacent when they share a vertex or
cross) and a maximum independent set is found by branch and bound over
bitmasks: branch on a node of largest remaining degree, prune with a greedy
clique cover of what is left.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .cylinder import CylindricalDrawing, cylinder_crossings
from .errors import LimitExceeded
from .model import Drawing, crossing_matrix

__all__ = ["OracleResult", "conflict_masks", "max_independent_set", "max_disjoint_bruteforce",
           "max_disjoint_cylindrical", "LimitExceeded"]

DEFAULT_LIMIT = 2_000_000


@dataclass
class OracleResult:
    optimum: int
    witness: list[int]
    explored: int
    exact: bool = True

    def to_json(self, edge_keys=None) -> dict:
        edges = [list(edge_keys[e]) for e in self.witness] if edge_keys else list(self.witness)
        return {"edges": edges, "size": self.optimum, "explored": self.explored, "exact": self.exact}

    def dumps(self, edge_keys=None) -> str:
        return json.dumps(self.to_json(edge_keys), indent=1) + "\n"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    """Number of cliques in a greedy cover of ``cand``; an upper bound on its MIS."""
    cliques = 0
    while cand:
        v = (cand & -cand).bit_length() - 1
        clique = 1 << v
        common = adj[v] & cand
        while common:
            w = (common & -common).bit_length() - 1
            clique |= 1 << w
            common &= adj[w]
        cand &= ~clique
        cliques += 1
    return cliques


def max_independent_set(adj: list[int], node_limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Maximum independent set of the graph given by neighbour bitmasks.

    Deterministic; raises ``LimitExceeded`` (carrying the best set found, with
    ``exact=False``) once ``node_limit`` search nodes have been expanded.
    """
    n = len(adj)
    best = [0, 0]            # size, mask
    explored = [0]

    def search(cand: int, size: int, chosen: int):
        explored[0] += 1
        if explored[0] > node_limit:
            raise _Stop
        if not cand:
            if size > best[0]:
                best[:] = [size, chosen]
            return
        if size + _clique_cover_bound(cand, adj) <= best[0]:
            return
        # isolated nodes are always taken
        free = 0
        for v in _bits(cand):
            if not adj[v] & cand:
                free |= 1 << v
        if free:
            search(cand & ~free, size + bin(free).count("1"), chosen | free)
            return
        v = max(_bits(cand), key=lambda x: (bin(adj[x] & cand).count("1"), -x))
        search(cand & ~adj[v] & ~(1 << v), size + 1, chosen | (1 << v))
        search(cand & ~(1 << v), size, chosen)

    try:
        search((1 << n) - 1, 0, 0)
    except _Stop:
        partial = OracleResult(best[0], list(_bits(best[1])), explored[0] - 1, exact=False)
        raise LimitExceeded(f"node limit {node_limit} reached; best so far {best[0]}", partial) from None
    return OracleResult(best[0], list(_bits(best[1])), explored[0])


class _Stop(Exception):
    pass


def conflict_masks(ends: list[tuple[int, int]], crossing_pairs) -> list[int]:
    adj = [0] * len(ends)
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            if set(ends[a]) & set(ends[b]):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    for a, b in crossing_pairs:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def max_disjoint_bruteforce(d: Drawing, node_limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Largest set of pairwise disjoint edges of a simple drawing."""
    cm = crossing_matrix(d)
    adj = conflict_masks([e.key for e in d.edges], cm.crossing_pairs())
    return max_independent_set(adj, node_limit)


def max_disjoint_cylindrical(c: CylindricalDrawing, node_limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Same, for a cylindrical drawing; edge ids index ``c.cyl_edges``."""
    counts, _ = cylinder_crossings(c)
    adj = conflict_masks([(e.i, e.j) for e in c.cyl_edges], [pq for pq, k in counts.items() if k])
    return max_independent_set(adj, node_limit)
