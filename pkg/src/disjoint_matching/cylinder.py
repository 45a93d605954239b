"""Cylindrical (angularly monotone) redrawing of the edges among the neighbours of ``u``.

Let ``v`` be the root of the grown plane subgraph and ``u`` a non-root vertex
of maximum degree.  Every neighbour ``w`` of ``u`` other than ``v`` gives a
path ``u -> w -> v`` inside the plane subgraph; these paths are pairwise
internally disjoint, so on the sphere minus ``{u, v}`` they become vertical
lines of a cylinder, ordered as the edges ``uw`` leave ``u`` clockwise.
An edge between two such neighbours crosses every path on one of the two
cyclic sides exactly once and no path on the other side.  Recording that
side and the order of the crossings along each path gives a drawing on the
cylinder with the same crossing pairs.

Geometry on the cylinder: column ``l`` is the line ``x = l``; its vertex sits
at height 0.  An edge is a chain of straight pieces, one per strip
``[l, l + 1]`` (indices mod ``delta``), through its integer heights.
"""
from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geom
from .errors import ClaimViolation, EquivalenceViolation
from .grower import PlaneSubgraph
from .model import Drawing, PolylineEdge, ValidationReport, Violation, scan, validate_simple

__all__ = [
    "SideKind", "Side", "CylEdge", "CylindricalDrawing", "XMonotoneDrawing",
    "inner_columns", "outer_columns", "column_order", "edge_side", "build_cylindrical",
    "validate_cylindrical", "cylinder_crossings", "kept_counts", "best_cut", "cut_and_unroll",
    "ClaimViolation", "EquivalenceViolation",
]


class SideKind(enum.Enum):
    INNER = "INNER"
    OUTER = "OUTER"


def inner_columns(i: int, j: int, delta: int) -> tuple[int, ...]:
    return tuple(range(i + 1, j))


def outer_columns(i: int, j: int, delta: int) -> tuple[int, ...]:
    return tuple(range(j + 1, delta)) + tuple(range(0, i))


@dataclass(frozen=True)
class Side:
    kind: SideKind
    columns: tuple[int, ...]

    @classmethod
    def of(cls, kind: SideKind, i: int, j: int, delta: int) -> "Side":
        cols = inner_columns(i, j, delta) if kind is SideKind.INNER else outer_columns(i, j, delta)
        return cls(kind, cols)


@dataclass
class CylEdge:
    i: int
    j: int
    side: Side
    heights: dict[int, int] = field(default_factory=dict)

    def strips(self, delta: int) -> list[int]:
        """Strips crossed, in order; strip ``l`` spans columns ``l`` and ``l + 1``."""
        if self.side.kind is SideKind.INNER:
            return list(range(self.i, self.j))
        return list(range(self.j, delta)) + list(range(0, self.i))

    def height(self, column: int) -> int:
        if column in (self.i, self.j):
            return 0
        return self.heights[column]

    def path_columns(self, delta: int) -> list[int]:
        """Columns visited from one end to the other, ends included."""
        if self.side.kind is SideKind.INNER:
            return [self.i, *self.side.columns, self.j]
        return [self.j, *self.side.columns, self.i]


@dataclass
class Provenance:
    drawing: Drawing
    subgraph: PlaneSubgraph | None
    u: int
    v: int


@dataclass
class CylindricalDrawing:
    delta: int
    column_vertex: list[int]
    cyl_edges: list[CylEdge]
    provenance: Provenance | None = None

    def original_edge(self, k: int) -> int:
        e = self.cyl_edges[k]
        d = self.provenance.drawing
        return d.edge_id(self.column_vertex[e.i], self.column_vertex[e.j])

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "columns": list(self.column_vertex),
            "edges": [
                {"i": e.i, "j": e.j, "side": e.side.kind.value,
                 "heights": {str(l): e.heights[l] for l in sorted(e.heights)}}
                for e in self.cyl_edges
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "CylindricalDrawing":
        delta = int(data["delta"])
        edges = []
        for e in data["edges"]:
            i, j = int(e["i"]), int(e["j"])
            side = Side.of(SideKind(e["side"]), i, j, delta)
            edges.append(CylEdge(i, j, side, {int(l): int(h) for l, h in e["heights"].items()}))
        return cls(delta, [int(c) for c in data["columns"]], edges)

    @classmethod
    def loads(cls, text: str) -> "CylindricalDrawing":
        return cls.from_json(json.loads(text))


@dataclass
class XMonotoneDrawing:
    drawing: Drawing
    kept_edges: list[int]      # cylinder edge index of each drawing edge
    cut_column: int
    x_column: list[int]        # cylinder column of each x position


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------

def column_order(G: Drawing, Gp: PlaneSubgraph, u: int) -> list[int]:
    """Neighbours of ``u`` in ``Gp`` other than the root, clockwise around ``u``.

    The sequence starts right after the edge ``u v`` in clockwise order.
    """
    v = Gp.root
    nbrs = Gp.neighbours(u)
    eids = [G.edge_id(u, w) for w in nbrs]
    cw = G.rotation(u, eids, clockwise=True)
    far = [G.edges[e].v if G.edges[e].u == u else G.edges[e].u for e in cw]
    k = far.index(v)
    return far[k + 1:] + far[:k]


def _path_edges(G: Drawing, u: int, v: int, columns: list[int]):
    """Edge ids of ``u - v_l`` and ``v_l - v`` for each column, and their owner."""
    owner = {}
    for l, w in enumerate(columns):
        owner[G.edge_id(u, w)] = (l, -1)
        owner[G.edge_id(w, v)] = (l, +1)
    return owner


def _side_from_counts(per_column: dict[int, int], i: int, j: int, delta: int, where: str) -> Side:
    inner, outer = inner_columns(i, j, delta), outer_columns(i, j, delta)
    for l in (i, j):
        if per_column.get(l, 0):
            raise ClaimViolation(f"{where} crosses the path through its own end column {l}")
    bad = {l: c for l, c in per_column.items() if c > 1}
    if bad:
        raise ClaimViolation(f"{where} crosses paths more than once: {bad}")
    hit = {l for l, c in per_column.items() if c == 1}
    if hit == set(inner) and not (hit and hit == set(outer)):
        return Side(SideKind.INNER, inner)
    if hit == set(outer):
        return Side(SideKind.OUTER, outer)
    raise ClaimViolation(f"{where} crosses paths {sorted(hit)}, neither side {inner} nor {outer}")


def edge_side(G: Drawing, Gp: PlaneSubgraph, u: int, v: int, i: int, j: int,
              columns: list[int] | None = None) -> Side:
    """Side of the cylinder used by the edge between columns ``i < j``.

    Counts crossings against every path, checks that they form one full
    cyclic side (ones) and nothing elsewhere, and returns that side.  With
    both sides empty the side is INNER.
    """
    if columns is None:
        columns = column_order(G, Gp, u)
    delta = len(columns)
    if not 0 <= i < j < delta:
        raise ValueError("need column indices 0 <= i < j < delta")
    owner = _path_edges(G, u, v, columns)
    eid = G.edge_id(columns[i], columns[j])
    per_column: dict[int, int] = defaultdict(int)
    for (_, f), c in scan(G, [eid], sorted(owner)).counts().items():
        per_column[owner[f][0]] += c
    return _side_from_counts(per_column, i, j, delta, f"edge {columns[i]}-{columns[j]}")


def build_cylindrical(G: Drawing, Gp: PlaneSubgraph, u: int) -> CylindricalDrawing:
    """Redraw the edges among the neighbours of ``u`` (minus the root) on a cylinder.

    Heights in column ``l`` rank the crossings along ``u -> v_l -> v``:
    crossings with ``u v_l`` get -1, -2, ... moving away from ``v_l``,
    crossings with ``v_l v`` get +1, +2, ... moving away from ``v_l``.
    """
    v = Gp.root
    if u == v:
        raise ValueError("u must differ from the root")
    columns = column_order(G, Gp, u)
    delta = len(columns)
    if delta < 2:
        raise ValueError(f"vertex {u} has fewer than two non-root neighbours")
    owner = _path_edges(G, u, v, columns)
    pairs = {G.edge_id(columns[i], columns[j]): (i, j) for i in range(delta) for j in range(i + 1, delta)}

    per_edge: dict[int, dict[int, int]] = {e: defaultdict(int) for e in pairs}
    along: dict[tuple[int, int], list] = defaultdict(list)
    sc = scan(G, sorted(pairs), sorted(owner))
    for e, f, _, pos_f in sc.crossings():
        l, half = owner[f]
        per_edge[e][l] += 1
        # distance from v_l along the path edge, as a sortable key
        fe = G.edges[f]
        key = pos_f if fe.u == columns[l] else (-pos_f[0], -pos_f[1])
        along[(l, half)].append((key, e))

    cyl_edges, index = [], {}
    for e, (i, j) in sorted(pairs.items(), key=lambda kv: kv[1]):
        side = _side_from_counts(per_edge[e], i, j, delta, f"edge {columns[i]}-{columns[j]}")
        index[e] = len(cyl_edges)
        cyl_edges.append(CylEdge(i, j, side))
    for (l, half), items in along.items():
        for rank, (_, e) in enumerate(sorted(items), start=1):
            cyl_edges[index[e]].heights[l] = half * rank
    for ce in cyl_edges:
        if set(ce.heights) != set(ce.side.columns):
            raise ClaimViolation(f"edge {ce.i}-{ce.j}: heights do not cover its side")
    return CylindricalDrawing(delta, columns, cyl_edges, Provenance(G, Gp, u, v))


# --------------------------------------------------------------------------
# crossings on the cylinder
# --------------------------------------------------------------------------

def cylinder_crossings(c: CylindricalDrawing) -> tuple[dict[tuple[int, int], int], list[Violation]]:
    """Crossing count per pair of cylinder edges, from exact per-strip segment tests.

    Also returns contacts that are neither crossings nor shared vertices
    (equal heights), as violations.
    """
    by_strip: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for k, e in enumerate(c.cyl_edges):
        for s in e.strips(c.delta):
            by_strip[s].append((k, e.height(s), e.height((s + 1) % c.delta)))
    counts: dict[tuple[int, int], int] = defaultdict(int)
    problems = []
    for s in sorted(by_strip):
        rows = by_strip[s]
        ids = np.asarray([r[0] for r in rows], dtype=np.int64)
        hl = np.asarray([r[1] for r in rows], dtype=np.int64)
        hr = np.asarray([r[2] for r in rows], dtype=np.int64)
        zero, one = np.zeros_like(hl), np.ones_like(hl)
        a = (zero[:, None], hl[:, None])
        b = (one[:, None], hr[:, None])
        cc = (zero[None, :], hl[None, :])
        dd = (one[None, :], hr[None, :])
        codes = geom.segment_pair_codes(a, b, cc, dd)
        upper = np.triu(np.ones(codes.shape, dtype=bool), 1)
        for x, y in zip(*np.nonzero((codes == geom.PROPER) & upper)):
            p, q = sorted((int(ids[x]), int(ids[y])))
            counts[(p, q)] += 1
        for x, y in zip(*np.nonzero((codes == geom.CONTACT) & upper)):
            shared_left = hl[x] == 0 and hl[y] == 0 and hr[x] != hr[y]
            shared_right = hr[x] == 0 and hr[y] == 0 and hl[x] != hl[y]
            if not (shared_left or shared_right):
                p, q = sorted((int(ids[x]), int(ids[y])))
                problems.append(Violation("touching", (p, q), geom.point(s, 0)))
    return dict(counts), problems


def _original_crossing_pairs(c: CylindricalDrawing) -> set[tuple[int, int]]:
    G = c.provenance.drawing
    orig = {c.original_edge(k): k for k in range(len(c.cyl_edges))}
    out = set()
    for (a, b), cnt in scan(G, sorted(orig)).counts().items():
        if cnt:
            out.add(tuple(sorted((orig[a], orig[b]))))
    return out


def validate_cylindrical(c: CylindricalDrawing) -> ValidationReport:
    """Check simplicity, rank consistency and (if known) equivalence with the source."""
    out: list[Violation] = []
    delta = c.delta
    seen_pairs = set()
    for k, e in enumerate(c.cyl_edges):
        if not (0 <= e.i < e.j < delta) or (e.i, e.j) in seen_pairs:
            out.append(Violation("structure", (k,), None))
            continue
        seen_pairs.add((e.i, e.j))
        if e.side != Side.of(e.side.kind, e.i, e.j, delta) or set(e.heights) != set(e.side.columns):
            out.append(Violation("structure", (k,), None))
        if any(h == 0 for h in e.heights.values()):
            out.append(Violation("rank-clash", (k,), None))
    if out:
        return ValidationReport(tuple(out))

    column_ranks: dict[int, dict[int, int]] = defaultdict(dict)
    for k, e in enumerate(c.cyl_edges):
        for l, h in e.heights.items():
            if h in column_ranks[l]:
                out.append(Violation("rank-clash", (column_ranks[l][h], k), geom.point(l, h)))
            column_ranks[l][h] = k
    if out:
        return ValidationReport(tuple(out))

    counts, touching = cylinder_crossings(c)
    out += touching
    for (p, q), cnt in sorted(counts.items()):
        ep, eq = c.cyl_edges[p], c.cyl_edges[q]
        if {ep.i, ep.j} & {eq.i, eq.j}:
            out.append(Violation("adjacent-crossing", (p, q), None))
        elif cnt > 1:
            out.append(Violation("multi-crossing", (p, q), None))

    if c.provenance is not None:
        mine = {pq for pq, cnt in counts.items() if cnt}
        theirs = _original_crossing_pairs(c)
        for pq in sorted(mine ^ theirs):
            out.append(Violation("equivalence", pq, None))
        G, u, v = c.provenance.drawing, c.provenance.u, c.provenance.v
        ccw_at_v = G.rotation(v, [G.edge_id(v, w) for w in c.column_vertex])
        far = [G.edges[e].v if G.edges[e].u == v else G.edges[e].u for e in ccw_at_v]
        k = far.index(c.column_vertex[0])
        if far[k:] + far[:k] != list(c.column_vertex):
            out.append(Violation("rotation", tuple(c.column_vertex), None))
    return ValidationReport(tuple(out))


# --------------------------------------------------------------------------
# cutting
# --------------------------------------------------------------------------

def kept_counts(c: CylindricalDrawing) -> list[int]:
    """For each column, how many edges avoid both its vertex and its line."""
    kept = [0] * c.delta
    for e in c.cyl_edges:
        blocked = {e.i, e.j, *e.side.columns}
        for l in range(c.delta):
            if l not in blocked:
                kept[l] += 1
    return kept


def best_cut(c: CylindricalDrawing) -> tuple[int, int]:
    """Column whose removal keeps the most edges (smallest column on ties)."""
    if c.delta < 3:
        raise ValueError("cutting needs at least three columns")
    kept = kept_counts(c)
    best = max(range(c.delta), key=lambda l: (kept[l], -l))
    return best, kept[best]


def cut_and_unroll(c: CylindricalDrawing, cut_column: int) -> XMonotoneDrawing:
    """Cut the cylinder along column ``cut_column`` and lay it flat.

    Column ``cut_column + 1`` goes to ``x = 0`` and so on around the cylinder;
    the cut vertex and every edge touching or passing over the cut line are
    dropped.  The result is checked to be x-monotone, simple, and to have
    exactly the crossing pairs of the kept cylinder edges.
    """
    delta = c.delta
    if not 0 <= cut_column < delta:
        raise ValueError(f"cut column {cut_column} outside 0..{delta - 1}")
    x_column = [(cut_column + 1 + x) % delta for x in range(delta - 1)]
    x_of = {col: x for x, col in enumerate(x_column)}
    verts = tuple(geom.point(x, 0) for x in range(delta - 1))
    edges, kept = [], []
    for k, e in enumerate(c.cyl_edges):
        if cut_column in (e.i, e.j) or cut_column in e.side.columns:
            continue
        cols = sorted(e.path_columns(delta), key=lambda col: x_of[col])
        chain = tuple(geom.point(x_of[col], e.height(col)) for col in cols)
        edges.append(PolylineEdge(x_of[cols[0]], x_of[cols[-1]], chain))
        kept.append(k)
    d = Drawing(verts, tuple(edges), complete=False)
    xd = XMonotoneDrawing(d, kept, cut_column, x_column)

    for e in d.edges:
        if any(p.x >= q.x for p, q in zip(e.chain, e.chain[1:])):
            raise EquivalenceViolation(f"edge {e.key} is not x-monotone after unrolling")
    report = validate_simple(d, general_position=False)
    if not report.ok:
        raise EquivalenceViolation(f"unrolled drawing is not simple: {report}")
    counts, _ = cylinder_crossings(c)
    keep_set = set(kept)
    expected = {pq for pq, cnt in counts.items() if cnt and pq[0] in keep_set and pq[1] in keep_set}
    got = {tuple(sorted((kept[a], kept[b]))) for (a, b), cnt in scan(d).counts().items() if cnt}
    if got != expected:
        raise EquivalenceViolation(f"unrolling changed crossing pairs: {sorted(got ^ expected)[:5]}")
    return xd
