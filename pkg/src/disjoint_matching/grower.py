"""Grow a crossing-free subgraph of minimum degree two around a root star.

Start with every edge at the root.  While some vertex ``u`` has degree one
(its only edge ``e`` goes to the root), collect the edges ``uw`` that cross
nothing in the current subgraph minus ``e``; at least two exist in a simple
complete drawing, and adding two of them (one may be ``e``) keeps the
subgraph plane because edges sharing ``u`` never cross.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GuaranteeViolation
from .model import Drawing, scan

__all__ = ["PlaneSubgraph", "grow_plane_subgraph", "max_degree_non_root", "GuaranteeViolation"]


@dataclass
class PlaneSubgraph:
    base: Drawing
    root: int
    edge_set: set[int]
    trace: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    def degrees(self) -> list[int]:
        deg = [0] * self.base.n
        for eid in self.edge_set:
            e = self.base.edges[eid]
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def neighbours(self, w: int) -> list[int]:
        out = []
        for eid in self.base.incidence[w]:
            if eid in self.edge_set:
                e = self.base.edges[eid]
                out.append(e.v if e.u == w else e.u)
        return sorted(out)

    def edge_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.base.edges[e].key for e in self.edge_set)

    def is_connected(self) -> bool:
        seen, stack = {self.root}, [self.root]
        while stack:
            w = stack.pop()
            for x in self.neighbours(w):
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return len(seen) == self.base.n

    def internal_crossings(self) -> int:
        """Number of crossing pairs inside the edge set (0 for a plane subgraph)."""
        return sum(scan(self.base, sorted(self.edge_set)).counts().values())

    def check(self) -> list[str]:
        """Names of the violated invariants; empty when the subgraph is valid."""
        d, problems = self.base, []
        if any(eid not in self.edge_set for eid in d.incidence[self.root]):
            problems.append("missing root star edge")
        if self.internal_crossings():
            problems.append("not plane")
        if not self.is_connected():
            problems.append("not connected")
        if min(self.degrees()) < 2:
            problems.append("degree below two")
        if len(self.edge_set) < d.n - 1 + d.n // 2:
            problems.append("too few edges")
        return problems

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "edges": [list(p) for p in self.edge_pairs()],
            "trace": [[u, [list(self.base.edges[e].key) for e in added]] for u, added in self.trace],
        }


class _CrossingTally:
    """For every edge of the drawing, how many edges of the subgraph it crosses."""

    def __init__(self, d: Drawing):
        self.d = d
        self.count = np.zeros(d.m, dtype=np.int64)

    def add(self, eid: int):
        others = [x for x in range(self.d.m) if x != eid]
        for (a, _), c in scan(self.d, others, [eid]).counts().items():
            self.count[a] += c

    def against(self, rows: list[int], e: int) -> dict[int, int]:
        return {a: c for (a, _), c in scan(self.d, rows, [e]).counts().items()}


def grow_plane_subgraph(d: Drawing, root: int) -> PlaneSubgraph:
    """Grow the plane subgraph of ``d`` around the star of ``root``.

    Degree-one vertices are handled in increasing index order; the unique
    edge ``e`` is kept and up to two other candidate edges, those with the
    lowest far endpoints, are added.
    """
    if not d.complete:
        raise ValueError("the grower needs a complete drawing")
    if d.n < 3:
        raise ValueError("the grower needs at least three vertices")
    g = PlaneSubgraph(d, root, set(d.incidence[root]))
    tally = _CrossingTally(d)
    for eid in sorted(g.edge_set):
        tally.add(eid)
    deg = g.degrees()
    while True:
        ones = [w for w in range(d.n) if deg[w] == 1]
        if not ones:
            break
        u = ones[0]
        (e,) = [eid for eid in d.incidence[u] if eid in g.edge_set]
        with_e = tally.against([x for x in d.incidence[u] if x != e], e)
        candidates = [x for x in d.incidence[u] if tally.count[x] - with_e.get(x, 0) == 0]
        if len(candidates) < 2 or e not in candidates:
            raise GuaranteeViolation(
                f"vertex {u}: only {len(candidates)} crossing-free edge(s) into its face; "
                "the drawing is not a simple complete drawing")
        far = sorted((x for x in candidates if x != e),
                     key=lambda x: d.edges[x].v if d.edges[x].u == u else d.edges[x].u)
        added = tuple(far[:2])
        for eid in added:
            g.edge_set.add(eid)
            tally.add(eid)
            a, b = d.edges[eid].u, d.edges[eid].v
            deg[a] += 1
            deg[b] += 1
        g.trace.append((u, added))
    return g


def max_degree_non_root(g: PlaneSubgraph) -> tuple[int, int]:
    """Vertex other than the root with the largest degree (smallest index on ties)."""
    deg = g.degrees()
    best = max((deg[w], -w) for w in range(g.base.n) if w != g.root)
    return -best[1], best[0]
