"""Disjoint matchings: greedy matching in the plane subgraph, chains in x-monotone drawings.

Two routes produce a set of pairwise disjoint edges and the larger one wins:

* stage A, a maximal matching among the edges of the grown plane subgraph
  that avoid the root (plane + vertex-disjoint means disjoint as curves);
* stage B, the cylinder around the busiest non-root vertex, cut open into an
  x-monotone drawing, where a longest chain in one of four partial orders
  is a set of pairwise disjoint edges.

The orders, for vertex-disjoint non-crossing x-monotone edges with spans
``[L, R]`` ("e below f" meaning the spans overlap and e is strictly below f
on the common part)::

    LEFT_STAIR   e < f  iff  R(e) < L(f), or e below f with L(e) < L(f), R(e) < R(f)
    RIGHT_STAIR  e < f  iff  R(f) < L(e), or e below f with L(f) < L(e), R(f) < R(e)
    NEST_UP      e < f  iff  e below f and span(e) inside span(f)
    NEST_DOWN    e < f  iff  e below f and span(f) inside span(e)

Every disjoint pair is comparable in at least one of them.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import geom
from .cylinder import best_cut, build_cylindrical, cut_and_unroll, XMonotoneDrawing
from .errors import CertificationError
from .geom import ContactKind
from .grower import PlaneSubgraph, grow_plane_subgraph, max_degree_non_root
from .model import Drawing, PolylineEdge, scan

__all__ = [
    "OrderKind", "Relation", "MatchingResult", "greedy_matching_avoiding", "order_relation",
    "order_matrices", "longest_chains", "chain_extract", "certify", "solve",
]


class OrderKind(enum.Enum):
    LEFT_STAIR = "LEFT_STAIR"
    RIGHT_STAIR = "RIGHT_STAIR"
    NEST_UP = "NEST_UP"
    NEST_DOWN = "NEST_DOWN"


class Relation(enum.Enum):
    BELOW_REL = "below"        # e precedes f
    ABOVE_REL = "above"        # f precedes e
    INCOMPARABLE = "incomparable"


# --------------------------------------------------------------------------
# stage A
# --------------------------------------------------------------------------

def greedy_matching_avoiding(g: PlaneSubgraph) -> list[int]:
    """Maximal matching among plane-subgraph edges not touching the root.

    Edges are scanned in order of their (smaller, larger) endpoint pair.
    """
    d = g.base
    used, out = set(), []
    for eid in sorted(g.edge_set, key=lambda e: d.edges[e].key):
        a, b = d.edges[eid].key
        if g.root in (a, b) or a in used or b in used:
            continue
        used.update((a, b))
        out.append(eid)
    return out


# --------------------------------------------------------------------------
# partial orders on x-monotone edges
# --------------------------------------------------------------------------

def _span(e: PolylineEdge) -> tuple[Fraction, Fraction]:
    return e.chain[0].x, e.chain[-1].x


def _y_at(chain: Sequence[geom.Point], x: Fraction) -> Fraction:
    for p, q in zip(chain, chain[1:]):
        if p.x <= x <= q.x:
            return p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x)
    raise ValueError(f"x = {x} outside the edge's span")


def _disjoint_curves(e: PolylineEdge, f: PolylineEdge) -> bool:
    ends_e = {e.chain[0], e.chain[-1]}
    ends_f = {f.chain[0], f.chain[-1]}
    if ends_e & ends_f:
        return False
    return not geom.polyline_contacts(e.chain, f.chain)


def _precedes(kind: OrderKind, e: PolylineEdge, f: PolylineEdge, disjoint: bool) -> bool:
    le, re = _span(e)
    lf, rf = _span(f)
    if kind is OrderKind.LEFT_STAIR and re < lf:
        return True
    if kind is OrderKind.RIGHT_STAIR and rf < le:
        return True
    if not disjoint or not max(le, lf) < min(re, rf):
        return False
    x0 = max(le, lf)
    if not _y_at(e.chain, x0) < _y_at(f.chain, x0):
        return False
    if kind is OrderKind.LEFT_STAIR:
        return le < lf and re < rf
    if kind is OrderKind.RIGHT_STAIR:
        return lf < le and rf < re
    if kind is OrderKind.NEST_UP:
        return lf <= le and re <= rf
    return le <= lf and rf <= re


def order_relation(kind: OrderKind, e: PolylineEdge, f: PolylineEdge) -> Relation:
    """How two edges of one x-monotone drawing compare in the order ``kind``.

    Chains may run either way; vertex identity is read from the chain end
    points.
    """
    e, f = _left_to_right_edge(e), _left_to_right_edge(f)
    disjoint = _disjoint_curves(e, f)
    if _precedes(kind, e, f, disjoint):
        return Relation.BELOW_REL
    if _precedes(kind, f, e, disjoint):
        return Relation.ABOVE_REL
    return Relation.INCOMPARABLE


def _left_to_right_edge(e: PolylineEdge) -> PolylineEdge:
    return PolylineEdge(e.v, e.u, e.chain[::-1]) if e.chain[0].x > e.chain[-1].x else e


def _left_to_right(d: Drawing) -> list[PolylineEdge]:
    return [_left_to_right_edge(e) for e in d.edges]


def disjointness_matrix(d: Drawing) -> np.ndarray:
    """``out[a, b]`` is True when edges a and b share no point at all."""
    m = d.m
    ends = np.asarray([[e.u, e.v] for e in d.edges], dtype=np.int64).reshape(-1, 2)
    share = np.zeros((m, m), dtype=bool)
    for p in range(2):
        for q in range(2):
            share |= ends[:, p][:, None] == ends[:, q][None, :]
    sc = scan(d)
    pe, pf, _ = sc.pair_counts()
    share[pe, pf] = share[pf, pe] = True
    for (a, b), contacts in sc.exact.items():
        if any(c.kind is not ContactKind.SHARED_ENDPOINT for c in contacts):
            share[a, b] = share[b, a] = True
    return ~share


def order_matrices(d: Drawing) -> dict[OrderKind, np.ndarray]:
    """``rel[kind][a, b]`` is True when edge a precedes edge b in ``kind``."""
    edges = _left_to_right(d)
    m = len(edges)
    xs = sorted({e.chain[0].x for e in edges} | {e.chain[-1].x for e in edges})
    rank = {x: r for r, x in enumerate(xs)}
    lr = np.asarray([rank[e.chain[0].x] for e in edges], dtype=np.int64)
    rr = np.asarray([rank[e.chain[-1].x] for e in edges], dtype=np.int64)
    # heights at every span end inside each edge's span, on a common integer scale
    vals = {}
    for a, e in enumerate(edges):
        for r in range(lr[a], rr[a] + 1):
            vals[(a, r)] = _y_at(e.chain, xs[r])
    scale = geom.common_scale(vals.values())
    table = np.zeros((m, max(len(xs), 1)), dtype=object)
    for (a, r), y in vals.items():
        table[a, r] = int(y * scale)
    flat = [v for v in table.ravel()]
    if flat and max(abs(v) for v in flat) < 2**62:
        table = table.astype(np.int64)

    disjoint = disjointness_matrix(d)
    x0 = np.maximum(lr[:, None], lr[None, :])
    overlap = x0 < np.minimum(rr[:, None], rr[None, :])
    x0c = np.where(overlap, x0, 0)
    ya = table[np.arange(m)[:, None], x0c]
    yb = table[np.arange(m)[None, :], x0c]
    below = disjoint & overlap & (ya < yb)
    l_lt = lr[:, None] < lr[None, :]
    r_lt = rr[:, None] < rr[None, :]
    return {
        OrderKind.LEFT_STAIR: (rr[:, None] < lr[None, :]) | (below & l_lt & r_lt),
        OrderKind.RIGHT_STAIR: (rr[None, :] < lr[:, None]) | (below & l_lt.T & r_lt.T),
        OrderKind.NEST_UP: below & ~l_lt & ~r_lt.T,
        OrderKind.NEST_DOWN: below & ~l_lt.T & ~r_lt,
    }


def _longest_chain(rel: np.ndarray, order: np.ndarray) -> list[int]:
    m = rel.shape[0]
    best = np.zeros(m, dtype=np.int64)
    pred = np.full(m, -1, dtype=np.int64)
    for i in order.tolist():
        cands = np.nonzero(rel[:, i])[0]
        if len(cands):
            j = int(cands[np.argmax(best[cands])])
            best[i], pred[i] = best[j] + 1, j
        else:
            best[i] = 1
    if m == 0:
        return []
    i = int(np.argmax(best))
    chain = []
    while i >= 0:
        chain.append(i)
        i = int(pred[i])
    return chain[::-1]


def longest_chains(d: Drawing) -> dict[OrderKind, list[int]]:
    """A longest chain of edge ids for every order kind."""
    rels = order_matrices(d)
    left = np.asarray([min(e.chain[0].x, e.chain[-1].x) for e in d.edges], dtype=object)
    ascending = np.asarray(sorted(range(d.m), key=lambda a: left[a]), dtype=np.int64)
    descending = ascending[::-1].copy()
    out = {}
    for kind, rel in rels.items():
        # every relation implies a strict order of left ends
        topo = ascending if kind in (OrderKind.LEFT_STAIR, OrderKind.NEST_DOWN) else descending
        out[kind] = _longest_chain(rel, topo)
    return out


def chain_extract(x: XMonotoneDrawing | Drawing) -> list[int]:
    """Largest single-order chain; a set of pairwise disjoint edges of ``x``."""
    d = x.drawing if isinstance(x, XMonotoneDrawing) else x
    if d.m == 0:
        return []
    chains = longest_chains(d)
    best = max(OrderKind, key=lambda k: len(chains[k]))
    chain = sorted(chains[best])
    disjoint = disjointness_matrix(d)
    for i, a in enumerate(chain):
        for b in chain[i + 1:]:
            if not disjoint[a, b]:
                raise CertificationError(f"chain edges {a} and {b} meet")
    return chain


# --------------------------------------------------------------------------
# pipeline
# --------------------------------------------------------------------------

def certify(d: Drawing, edges: Sequence[int]) -> list[tuple[int, int, bool, int]]:
    """Per pair ``(e, f, shares_vertex, crossings)``; raises unless all are disjoint."""
    edges = sorted(edges)
    sc = scan(d, edges) if len(edges) > 1 else None
    counts = sc.counts() if sc else {}
    touching = {pair for pair, cs in (sc.exact.items() if sc else ())
                if any(c.kind is not ContactKind.CROSSING for c in cs)}
    out = []
    for i, a in enumerate(edges):
        for b in edges[i + 1:]:
            shares = d.adjacent(a, b) or (a, b) in touching
            out.append((a, b, shares, counts.get((a, b), 0)))
    bad = [c for c in out if c[2] or c[3]]
    if bad:
        raise CertificationError(f"not pairwise disjoint: {bad[:3]}")
    return out


@dataclass
class MatchingResult:
    edges: list[int]
    drawing: Drawing
    stats: dict = field(default_factory=dict)
    certificate: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {
            "edges": [list(self.drawing.edges[e].key) for e in self.edges],
            "size": self.size,
            "stats": self.stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, data: dict, drawing: Drawing) -> "MatchingResult":
        """Load a result; the certificate is recomputed, never read from disk."""
        edges = sorted(drawing.edge_id(a, b) for a, b in data["edges"])
        if len(edges) != data["size"]:
            raise ValueError("stored size disagrees with the edge list")
        return cls(edges, drawing, dict(data.get("stats", {})), certify(drawing, edges))


def _solve_root(d: Drawing, root: int, recurse: bool, depth: int) -> MatchingResult:
    g = grow_plane_subgraph(d, root)
    stage_a = greedy_matching_avoiding(g)
    u, delta = max_degree_non_root(g)
    stats = {
        "root": root, "delta": delta, "u": u, "plane_edges": len(g.edge_set),
        "stage_a_size": len(stage_a), "cylinder_width": None, "cut_column": None,
        "kept_count": None, "chain_lengths": {}, "stage_b_size": 0,
    }
    stage_b: list[int] = []
    sub_best: list[int] = []
    if delta >= 3:
        c = build_cylindrical(d, g, u)
        stats["cylinder_width"] = c.delta
        if c.delta >= 3:
            cut, kept = best_cut(c)
            stats["cut_column"], stats["kept_count"] = cut, kept
            if kept:
                x = cut_and_unroll(c, cut)
                chains = longest_chains(x.drawing)
                stats["chain_lengths"] = {k.value: len(v) for k, v in chains.items()}
                stage_b = [c.original_edge(x.kept_edges[a]) for a in chain_extract(x)]
        elif c.cyl_edges:
            stage_b = [c.original_edge(0)]
        if recurse and c.delta >= 3 and depth < 8:
            sub, emap = d.subdrawing(c.column_vertex)
            inner = _solve_root(sub, 0, True, depth + 1)
            sub_best = [emap[e] for e in inner.edges]
            stats["recursive_size"] = len(sub_best)
    stats["stage_b_size"] = len(stage_b)
    options = [("A", stage_a), ("B", stage_b)] + ([("R", sub_best)] if recurse else [])
    label, chosen = max(options, key=lambda o: len(o[1]))
    stats["chosen"] = label
    chosen = sorted(chosen)
    return MatchingResult(chosen, d, stats, certify(d, chosen))


def solve(d: Drawing, root: int | str = 0, recurse: bool = False) -> MatchingResult:
    """Find a large set of pairwise disjoint edges in a simple complete drawing.

    ``root`` is a vertex index, or ``"all"`` to try every root and keep the
    best (first root on ties).  ``recurse`` additionally re-runs the pipeline
    on the sub-drawing induced by the cylinder's vertices; experimental, off
    by default, and without any size guarantee.
    """
    if not d.complete or d.n < 3:
        raise ValueError("solve needs a complete drawing on at least three vertices")
    if root == "all":
        best = None
        for r in range(d.n):
            res = _solve_root(d, r, recurse, 0)
            if best is None or res.size > best.size:
                best = res
        best.stats["root_policy"] = "all"
        return best
    if not (isinstance(root, int) and 0 <= root < d.n):
        raise ValueError(f"root must be a vertex index or 'all', got {root!r}")
    res = _solve_root(d, root, recurse, 0)
    res.stats["root_policy"] = "fixed"
    return res
