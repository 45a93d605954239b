"""Drawings of graphs with polyline edges, simplicity validation, crossing data.

A drawing is the single source of truth: vertex positions and edge chains
have exact rational coordinates, and every combinatorial fact used later
(crossing pairs, rotations, crossing order along a path) is read off it.

Pairwise work goes through :func:`scan`, which scales the whole drawing to
an integer grid once and classifies segment pairs in numpy blocks.  Only
pairs whose contact is not a plain transversal crossing or a shared end are
re-examined with the scalar routines of :mod:`.geom`.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import geom
from .geom import ContactKind, Point

__all__ = [
    "PolylineEdge", "Drawing", "Violation", "ValidationReport", "CrossingMatrix",
    "validate_simple", "crossing_matrix", "scan", "Scan",
]

_BLOCK = 128


@dataclass(frozen=True)
class PolylineEdge:
    u: int
    v: int
    chain: tuple[Point, ...]

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"loop at vertex {self.u}")
        if len(self.chain) < 2:
            raise ValueError(f"edge {self.u}-{self.v} needs at least two chain points")
        for p, q in zip(self.chain, self.chain[1:]):
            if p == q:
                raise ValueError(f"edge {self.u}-{self.v} repeats chain point {p}")

    @property
    def key(self) -> tuple[int, int]:
        return (min(self.u, self.v), max(self.u, self.v))

    def chain_from(self, w: int) -> tuple[Point, ...]:
        """The chain oriented so that it starts at vertex ``w``."""
        if w == self.u:
            return self.chain
        if w == self.v:
            return self.chain[::-1]
        raise ValueError(f"vertex {w} is not an end of edge {self.key}")

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v, "chain": [p.to_json() for p in self.chain]}


@dataclass(frozen=True)
class Drawing:
    """Vertices at exact points, edges as polylines between them.

    Edge ids are positions in ``edges``.  Construction checks the structural
    invariants only; simplicity is the job of :func:`validate_simple`.
    """

    vertices: tuple[Point, ...]
    edges: tuple[PolylineEdge, ...]
    complete: bool = False

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("vertex positions must be pairwise distinct")
        seen = set()
        where = {p: i for i, p in enumerate(self.vertices)}
        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError(f"edge {e.key} refers to a missing vertex")
            if e.chain[0] != self.vertices[e.u] or e.chain[-1] != self.vertices[e.v]:
                raise ValueError(f"edge {e.key} chain does not start/end at its vertices")
            for p in e.chain[1:-1]:
                if p in where:
                    raise ValueError(f"edge {e.key} has a breakpoint on vertex {where[p]}")
            if e.key in seen:
                raise ValueError(f"edge {e.key} appears twice")
            seen.add(e.key)
        if self.complete and len(seen) != n * (n - 1) // 2:
            raise ValueError("complete drawing must contain every vertex pair exactly once")

    # construction -------------------------------------------------------

    @classmethod
    def straight_line(cls, points: Sequence, pairs: Iterable[tuple[int, int]] | None = None) -> "Drawing":
        """Straight-line drawing; all pairs (a complete graph) when ``pairs`` is None."""
        verts = tuple(p if isinstance(p, Point) else geom.point(*p) for p in points)
        complete = pairs is None
        if complete:
            pairs = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))]
        edges = tuple(PolylineEdge(i, j, (verts[i], verts[j])) for i, j in pairs)
        return cls(verts, edges, complete)

    def subdrawing(self, keep: Sequence[int]) -> tuple["Drawing", list[int]]:
        """Induced drawing on ``keep`` (new vertex k is old ``keep[k]``) and its edge map."""
        index = {w: k for k, w in enumerate(keep)}
        edges, emap = [], []
        for eid, e in enumerate(self.edges):
            if e.u in index and e.v in index:
                edges.append(PolylineEdge(index[e.u], index[e.v], e.chain))
                emap.append(eid)
        return Drawing(tuple(self.vertices[w] for w in keep), tuple(edges), self.complete), emap

    # lookups ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _edge_index(self) -> dict[tuple[int, int], int]:
        return {e.key: i for i, e in enumerate(self.edges)}

    def edge_id(self, a: int, b: int) -> int:
        return self._edge_index[(min(a, b), max(a, b))]

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self._edge_index

    @cached_property
    def incidence(self) -> list[list[int]]:
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            inc[e.u].append(i)
            inc[e.v].append(i)
        return inc

    def adjacent(self, e: int, f: int) -> bool:
        a, b = self.edges[e], self.edges[f]
        return bool({a.u, a.v} & {b.u, b.v})

    def initial_direction(self, eid: int, w: int) -> Point:
        chain = self.edges[eid].chain_from(w)
        return chain[1] - chain[0]

    def rotation(self, w: int, eids: Iterable[int] | None = None, clockwise: bool = False) -> list[int]:
        """Edge ids at ``w`` sorted by the angle of their initial piece.

        Counter-clockwise from the positive x axis by default.
        """
        eids = list(self.incidence[w] if eids is None else eids)
        keyed = sorted(eids, key=lambda e: _AngleKey(self.initial_direction(e, w)))
        return keyed[::-1] if clockwise else keyed

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [p.to_json() for p in self.vertices],
            "edges": [e.to_json() for e in self.edges],
            "complete": self.complete,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Drawing":
        verts = tuple(geom.point(*p) for p in data["vertices"])
        if len(verts) != data["n"]:
            raise ValueError("vertex list length disagrees with n")
        edges = tuple(
            PolylineEdge(int(e["u"]), int(e["v"]), tuple(geom.point(*p) for p in e["chain"]))
            for e in data["edges"]
        )
        return cls(verts, edges, bool(data["complete"]))

    @classmethod
    def loads(cls, text: str) -> "Drawing":
        return cls.from_json(json.loads(text))

    # integer segment table ---------------------------------------------

    @cached_property
    def _segments(self) -> "_SegmentTable":
        return _SegmentTable(self)


class _AngleKey:
    """Exact counter-clockwise angle order of nonzero direction vectors."""

    __slots__ = ("d", "half")

    def __init__(self, d: Point):
        self.d = d
        self.half = 0 if (d.y > 0 or (d.y == 0 and d.x > 0)) else 1

    def __lt__(self, other):
        if self.half != other.half:
            return self.half < other.half
        return geom.cross(self.d, other.d) > 0


class _SegmentTable:
    """All edge segments scaled to a common integer grid, sorted by edge id."""

    def __init__(self, d: Drawing):
        coords = [c for e in d.edges for p in e.chain for c in p]
        coords += [c for p in d.vertices for c in p]
        self.scale = geom.common_scale(coords)
        s = self.scale
        ax, ay, bx, by, edge, idx, a_end, b_end = [], [], [], [], [], [], [], []
        for eid, e in enumerate(d.edges):
            last = len(e.chain) - 2
            for k, (p, q) in enumerate(zip(e.chain, e.chain[1:])):
                ax.append(int(p.x * s)); ay.append(int(p.y * s))
                bx.append(int(q.x * s)); by.append(int(q.y * s))
                edge.append(eid); idx.append(k)
                a_end.append(k == 0); b_end.append(k == last)
        arr = geom.int_array(ax + ay + bx + by)
        k = len(ax)
        self.ax, self.ay, self.bx, self.by = arr[:k], arr[k:2 * k], arr[2 * k:3 * k], arr[3 * k:]
        self.xmin, self.xmax = np.minimum(self.ax, self.bx), np.maximum(self.ax, self.bx)
        self.ymin, self.ymax = np.minimum(self.ay, self.by), np.maximum(self.ay, self.by)
        self.edge = np.asarray(edge, dtype=np.int64)
        self.idx = np.asarray(idx, dtype=np.int64)
        self.a_end = np.asarray(a_end, dtype=bool)
        self.b_end = np.asarray(b_end, dtype=bool)
        self.first = np.searchsorted(self.edge, np.arange(d.m + 1))
        vx = [int(p.x * s) for p in d.vertices]
        vy = [int(p.y * s) for p in d.vertices]
        varr = geom.int_array(vx + vy)
        self.vx, self.vy = varr[:d.n], varr[d.n:]

    def of_edges(self, eids) -> np.ndarray:
        mask = np.zeros(len(self.first) - 1, dtype=bool)
        mask[np.asarray(list(eids), dtype=np.int64)] = True
        return np.nonzero(mask[self.edge])[0]

    def pts(self, i):
        return (self.ax[i], self.ay[i]), (self.bx[i], self.by[i])


# --------------------------------------------------------------------------
# pairwise scan
# --------------------------------------------------------------------------

@dataclass
class Scan:
    """Contacts between two edge families of one drawing.

    ``e``/``f`` and the ``*_seg``/``*_tn``/``*_td`` arrays hold one row per
    transversal crossing found by the batch kernel (position along each chain
    is segment index plus reduced parameter).  Edge pairs whose contact needed
    exact treatment are listed in ``exact`` with their full contact lists;
    their crossings are not duplicated in the arrays.
    """

    drawing: Drawing
    e: np.ndarray
    f: np.ndarray
    e_seg: np.ndarray
    f_seg: np.ndarray
    e_tn: np.ndarray
    e_td: np.ndarray
    f_tn: np.ndarray
    f_td: np.ndarray
    exact: dict[tuple[int, int], list[geom.Contact]] = field(default_factory=dict)

    def crossings(self):
        """Yield ``(e, f, pos_e, pos_f)`` for every crossing; positions are exact."""
        for k in range(len(self.e)):
            yield (int(self.e[k]), int(self.f[k]),
                   (int(self.e_seg[k]), Fraction(int(self.e_tn[k]), int(self.e_td[k]))),
                   (int(self.f_seg[k]), Fraction(int(self.f_tn[k]), int(self.f_td[k]))))
        for (a, b), contacts in sorted(self.exact.items()):
            for c in contacts:
                if c.kind is ContactKind.CROSSING:
                    yield a, b, c.pos_e, c.pos_f

    def pair_counts(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays ``(e, f, count)`` over the pairs that cross at least once."""
        if len(self.e):
            m = self.drawing.m
            keys, cnt = np.unique(self.e * m + self.f, return_counts=True)
            pe, pf, pc = keys // m, keys % m, cnt.astype(np.int64)
        else:
            pe = pf = pc = np.zeros(0, dtype=np.int64)
        extra = [(a, b, sum(1 for x in cs if x.kind is ContactKind.CROSSING))
                 for (a, b), cs in sorted(self.exact.items())]
        extra = [x for x in extra if x[2]]
        if extra:
            ea, eb, ec = (np.asarray(col, dtype=np.int64) for col in zip(*extra))
            pe, pf, pc = np.concatenate([pe, ea]), np.concatenate([pf, eb]), np.concatenate([pc, ec])
        return pe, pf, pc

    def counts(self) -> Counter:
        """Crossing count per (e, f) pair; pairs without crossings are absent."""
        pe, pf, pc = self.pair_counts()
        out = Counter()
        for a, b, c in zip(pe.tolist(), pf.tolist(), pc.tolist()):
            out[(a, b)] += c
        return out

    def anomalies(self) -> list[tuple[int, int, geom.Contact]]:
        return [(a, b, c) for (a, b), cs in sorted(self.exact.items()) for c in cs
                if c.kind not in (ContactKind.CROSSING, ContactKind.SHARED_ENDPOINT)]


def _candidates(t: _SegmentTable, rows: np.ndarray, cols: np.ndarray, triangular: bool):
    for start in range(0, len(rows), _BLOCK):
        r = rows[start:start + _BLOCK]
        c = cols[start:] if triangular else cols
        if len(c) == 0:
            continue
        mask = ((t.xmin[r][:, None] <= t.xmax[c][None, :]) & (t.xmin[c][None, :] <= t.xmax[r][:, None])
                & (t.ymin[r][:, None] <= t.ymax[c][None, :]) & (t.ymin[c][None, :] <= t.ymax[r][:, None]))
        mask &= t.edge[r][:, None] != t.edge[c][None, :]
        if triangular:
            mask &= np.arange(len(r))[:, None] < np.arange(len(c))[None, :]
        ii, jj = np.nonzero(mask)
        if len(ii):
            yield r[ii], c[jj]


def _benign_shared_end(t: _SegmentTable, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Contacts that are exactly one shared end of both chains, not collinear."""
    (ax, ay), (bx, by) = t.pts(i)
    (cx, cy), (dx, dy) = t.pts(j)
    ac = (ax == cx) & (ay == cy) & t.a_end[i] & t.a_end[j]
    ad = (ax == dx) & (ay == dy) & t.a_end[i] & t.b_end[j]
    bc = (bx == cx) & (by == cy) & t.b_end[i] & t.a_end[j]
    bd = (bx == dx) & (by == dy) & t.b_end[i] & t.b_end[j]
    cr = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx)
    return (ac | ad | bc | bd) & (cr != 0)


def scan(d: Drawing, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> Scan:
    """Find every contact between edges of ``rows`` and edges of ``cols``.

    With ``cols`` omitted, all unordered pairs of distinct edges in ``rows``
    are examined (``e < f`` in the output).  With both given, each row edge is
    paired with each column edge other than itself.
    """
    t = d._segments
    rows = range(d.m) if rows is None else rows
    r_seg = t.of_edges(rows)
    triangular = cols is None
    c_seg = r_seg if triangular else t.of_edges(cols)

    pr_i, pr_j, exact_pairs = [], [], set()
    for i, j in _candidates(t, r_seg, c_seg, triangular):
        a, b = t.pts(i)
        c, dd = t.pts(j)
        codes = geom.segment_pair_codes(a, b, c, dd)
        proper = codes == geom.PROPER
        pr_i.append(i[proper]); pr_j.append(j[proper])
        contact = codes == geom.CONTACT
        if contact.any():
            ci, cj = i[contact], j[contact]
            hard = ~_benign_shared_end(t, ci, cj)
            for x, y in zip(t.edge[ci[hard]].tolist(), t.edge[cj[hard]].tolist()):
                exact_pairs.add((x, y))

    i = np.concatenate(pr_i) if pr_i else np.zeros(0, dtype=np.int64)
    j = np.concatenate(pr_j) if pr_j else np.zeros(0, dtype=np.int64)
    e, f = t.edge[i], t.edge[j]
    if exact_pairs and len(e):
        m = d.m
        bad = np.asarray([x * m + y for x, y in exact_pairs], dtype=np.int64)
        keep = ~np.isin(e * m + f, bad)
        i, j, e, f = i[keep], j[keep], e[keep], f[keep]
    a, b = t.pts(i)
    c, dd = t.pts(j)
    tn, td, un, ud = geom.proper_parameters(a, b, c, dd)
    exact = {}
    for x, y in sorted(exact_pairs):
        exact[(x, y)] = geom.polyline_contacts(d.edges[x].chain, d.edges[y].chain)
    return Scan(d, e, f, t.idx[i], t.idx[j], tn, td, un, ud, exact)


def point_at(chain: Sequence[Point], pos: tuple[int, Fraction]) -> Point:
    k, s = pos
    a, b = chain[k], chain[k + 1]
    return a + (b - a).scaled(s)


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------

class Violation(NamedTuple):
    kind: str
    items: tuple
    point: Point | None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s)"]
        for v in self.violations:
            where = "" if v.point is None else f" at ({v.point.x}, {v.point.y})"
            lines.append(f"  {v.kind} {v.items}{where}")
        return "\n".join(lines)


def _edge_through_vertex(d: Drawing) -> list[Violation]:
    t = d._segments
    out = []
    for start in range(0, len(t.edge), _BLOCK):
        s = np.arange(start, min(start + _BLOCK, len(t.edge)))
        ax, ay, bx, by = (arr[s][:, None] for arr in (t.ax, t.ay, t.bx, t.by))
        vx, vy = t.vx[None, :], t.vy[None, :]
        on_line = (bx - ax) * (vy - ay) - (by - ay) * (vx - ax) == 0
        inside = ((np.minimum(ax, bx) <= vx) & (vx <= np.maximum(ax, bx))
                  & (np.minimum(ay, by) <= vy) & (vy <= np.maximum(ay, by)))
        at_end = ((vx == ax) & (vy == ay)) | ((vx == bx) & (vy == by))
        ii, ww = np.nonzero(on_line & inside & ~at_end)
        for k, w in zip(s[ii].tolist(), ww.tolist()):
            out.append(Violation("edge-through-vertex", (int(t.edge[k]), w), d.vertices[w]))
    return sorted(set(out))


def _self_intersections(d: Drawing) -> list[Violation]:
    out = []
    for eid, e in enumerate(d.edges):
        ch = e.chain
        if len(ch) < 3:
            continue
        segs = [geom.Segment(p, q) for p, q in zip(ch, ch[1:])]
        for k in range(len(segs)):
            for l in range(k + 1, len(segs)):
                hit = geom.segment_intersection(segs[k], segs[l])
                if hit.kind is geom.IntersectionKind.NONE:
                    continue
                if l == k + 1 and hit.kind is geom.IntersectionKind.ENDPOINT and hit.point == ch[l]:
                    continue
                out.append(Violation("self-intersection", (eid,), hit.point))
                break
    return out


def _shared_directions(d: Drawing) -> list[Violation]:
    out = []
    for w in range(d.n):
        seen: dict[tuple, int] = {}
        for eid in d.incidence[w]:
            dirv = d.initial_direction(eid, w)
            g = Fraction(dirv.x) if dirv.y == 0 else dirv.y
            key = (dirv.x / abs(g), dirv.y / abs(g))
            if key in seen:
                out.append(Violation("shared-direction", (w, seen[key], eid), d.vertices[w]))
            else:
                seen[key] = eid
    return out


def _fold(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return np.asarray([int(x) % (1 << 61) for x in a], dtype=np.int64)
    return a


def _mix(a: np.ndarray) -> np.ndarray:
    """Deterministic 64-bit integer hash (wrapping arithmetic)."""
    x = a.astype(np.uint64) * np.uint64(0x9E3779B97F4A7C15)
    x ^= x >> np.uint64(29)
    return x * np.uint64(0xBF58476D1CE4E5B9)


def _triple_points(d: Drawing, sc: Scan) -> list[Violation]:
    """Two crossings at the same place along one edge mean three edges meet."""
    parts = [(sc.e, sc.e_seg, sc.e_tn, sc.e_td, sc.f), (sc.f, sc.f_seg, sc.f_tn, sc.f_td, sc.e)]
    extra = []
    for (a, b), contacts in sc.exact.items():
        for c in contacts:
            if c.kind is ContactKind.CROSSING:
                for x, y, pos in ((a, b, c.pos_e), (b, a, c.pos_f)):
                    extra.append((x, pos[0], pos[1].numerator, pos[1].denominator, y))
    if extra:
        cols = list(zip(*extra))
        parts.append(tuple(geom.int_array(col, 2**62) for col in cols))
    keys = []
    for k in range(5):
        arrays = [p[k] for p in parts]
        if any(a.dtype == object for a in arrays):
            arrays = [a.astype(object) for a in arrays]
        keys.append(np.concatenate(arrays))
    if len(keys[0]) == 0:
        return []
    # bucket by an integer hash of the reduced position; equal positions always
    # share a bucket, and buckets are then compared exactly
    h = _mix(keys[0]) ^ _mix(keys[1] + 7) ^ _mix(_fold(keys[2]) + 11) ^ _mix(_fold(keys[3]) + 13)
    order = np.argsort(h)
    hs = h[order]
    dup = np.nonzero(hs[1:] == hs[:-1])[0]
    runs: dict[int, set[int]] = defaultdict(set)
    for k in dup.tolist():
        runs[int(hs[k])].update((int(order[k]), int(order[k + 1])))
    out = set()
    for members in runs.values():
        members = sorted(members)
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                a, b = members[x], members[y]
                if all(keys[c][a] == keys[c][b] for c in range(4)):
                    eid = int(keys[0][a])
                    pos = (int(keys[1][a]), Fraction(int(keys[2][a]), int(keys[3][a])))
                    trio = tuple(sorted({eid, int(keys[4][a]), int(keys[4][b])}))
                    out.add(Violation("triple-point", trio, point_at(d.edges[eid].chain, pos)))
    return sorted(out)


def validate_simple(d: Drawing, general_position: bool = True) -> ValidationReport:
    """Check that ``d`` is a simple drawing.

    Pairs of independent edges may cross at most once, adjacent edges only
    share their common vertex, no edge runs through a vertex or along another
    edge, and edges are Jordan arcs.  ``general_position`` additionally
    forbids three edges through one point and coinciding initial directions.
    """
    violations = _edge_through_vertex(d) + _self_intersections(d)
    sc = scan(d)
    for a, b, c in sc.anomalies():
        if c.kind is ContactKind.OVERLAP:
            violations.append(Violation("overlap", (a, b), c.point))
        elif c.kind is ContactKind.TOUCHING:
            violations.append(Violation("touching", (a, b), c.point))
    pe, pf, pc = sc.pair_counts()
    ends = np.asarray([[e.u, e.v] for e in d.edges], dtype=np.int64).reshape(-1, 2)
    ue, ve, uf, vf = ends[pe, 0], ends[pe, 1], ends[pf, 0], ends[pf, 1]
    adjacent = (ue == uf) | (ue == vf) | (ve == uf) | (ve == vf)
    for k in np.nonzero(adjacent | (pc > 1))[0].tolist():
        a, b = int(pe[k]), int(pf[k])
        kind = "adjacent-crossing" if adjacent[k] else "multi-crossing"
        violations.append(Violation(kind, (a, b), _a_crossing(sc, a, b)))
    if general_position:
        violations += _triple_points(d, sc)
        violations += _shared_directions(d)
    return ValidationReport(tuple(violations))


def _a_crossing(sc: Scan, a: int, b: int) -> Point | None:
    if (a, b) in sc.exact:
        for c in sc.exact[(a, b)]:
            if c.kind is ContactKind.CROSSING:
                return c.point
    hit = np.nonzero((sc.e == a) & (sc.f == b))[0]
    if len(hit):
        k = int(hit[0])
        pos = (int(sc.e_seg[k]), Fraction(int(sc.e_tn[k]), int(sc.e_td[k])))
        return point_at(sc.drawing.edges[a].chain, pos)
    return None


# --------------------------------------------------------------------------
# crossing matrix
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingMatrix:
    """Crossing count and points for every unordered edge pair.

    Only pairs that cross are stored; every other pair has count 0.
    """

    m: int
    ends: tuple[tuple[int, int], ...]
    points: dict[tuple[int, int], tuple[Point, ...]]

    def count(self, e: int, f: int) -> int:
        return len(self.points.get((min(e, f), max(e, f)), ()))

    def crossing_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.points)

    def disjoint(self, e: int, f: int) -> bool:
        """No shared vertex and no crossing: the two arcs are disjoint point sets."""
        if e == f or set(self.ends[e]) & set(self.ends[f]):
            return False
        return self.count(e, f) == 0

    def as_array(self) -> np.ndarray:
        out = np.zeros((self.m, self.m), dtype=np.int64)
        for (a, b), pts in self.points.items():
            out[a, b] = out[b, a] = len(pts)
        return out


def crossing_matrix(d: Drawing) -> CrossingMatrix:
    """Exact crossings of every edge pair (meant for desk-scale drawings)."""
    sc = scan(d)
    for a, b, c in sc.anomalies():
        raise geom.DegeneracyError(f"edges {a} and {b}: {c.kind.value} at {c.point}")
    pts = defaultdict(list)
    for a, b, pa, _ in sc.crossings():
        pts[(a, b)].append(point_at(d.edges[a].chain, pa))
    return CrossingMatrix(d.m, tuple(e.key for e in d.edges),
                          {k: tuple(sorted(v)) for k, v in sorted(pts.items())})
