"""Seeded instance generators.

``CONVEX`` and ``RANDOM_POINTS`` give straight-line complete drawings on
integer points; ``CYL_SELFHOSTED`` and ``CYL_RANDOM`` give cylindrical
drawings of a prescribed width.  Output depends only on the ``GenSpec``, so the
same spec always serializes to the same bytes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .cylinder import CylEdge, CylindricalDrawing, Side, SideKind, build_cylindrical, validate_cylindrical
from .errors import GenerationFailure
from .grower import grow_plane_subgraph, max_degree_non_root
from .model import Drawing, validate_simple

__all__ = ["GenKind", "GenSpec", "generate", "convex", "random_points", "x_monotone_points",
           "cyl_selfhosted", "cyl_random", "GenerationFailure"]

GRID = 2**20
MAX_ATTEMPTS = 200


class GenKind(enum.Enum):
    CONVEX = "convex"
    RANDOM_POINTS = "random-points"
    CYL_SELFHOSTED = "cyl-selfhosted"
    CYL_RANDOM = "cyl-random"

    @property
    def cylindrical(self) -> bool:
        return self in (GenKind.CYL_SELFHOSTED, GenKind.CYL_RANDOM)


@dataclass(frozen=True)
class GenSpec:
    """What to generate; ``n`` is the cylinder width for the cylindrical kinds."""
    kind: GenKind
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def generate(spec: GenSpec) -> Drawing | CylindricalDrawing:
    if spec.kind is GenKind.CONVEX:
        return convex(spec.n)
    if spec.kind is GenKind.RANDOM_POINTS:
        return random_points(spec.n, spec.seed)
    if spec.kind is GenKind.CYL_SELFHOSTED:
        return cyl_selfhosted(spec.n, spec.seed)
    return cyl_random(spec.n, spec.seed)


# --------------------------------------------------------------------------
# straight-line drawings
# --------------------------------------------------------------------------

def convex(n: int, radius: int = GRID) -> Drawing:
    """Regular ``n``-gon rounded to the integer grid, rotated so all x differ.

    Points are listed counter-clockwise.  Vertex ``k`` is shifted ``nudge * k``
    to the right, with the smallest nudge that leaves no three edges through
    one crossing point.
    """
    for nudge in range(MAX_ATTEMPTS):
        # an irrational rotation keeps mirror pairs apart before rounding
        pts = [(round(radius * math.cos((2 * math.pi * k + 1) / n)) + nudge * k,
                round(radius * math.sin((2 * math.pi * k + 1) / n)))
               for k in range(n)]
        if len({x for x, _ in pts}) == n and _strictly_convex(pts):
            d = Drawing.straight_line(pts)
            # even regular polygons have concurrent diameters; the nudge breaks them
            if validate_simple(d).ok:
                return d
    raise GenerationFailure(f"could not place a convex {n}-gon in general position")


def _strictly_convex(pts) -> bool:
    n = len(pts)
    for k in range(n):
        (ax, ay), (bx, by), (cx, cy) = pts[k], pts[(k + 1) % n], pts[(k + 2) % n]
        if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) <= 0:
            return False
    return True


def random_points(n: int, seed: int, grid: int = GRID) -> Drawing:
    """Uniform grid points, redrawn until the straight-line drawing is simple."""
    rng = np.random.default_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        pts = [tuple(int(c) for c in p) for p in rng.integers(0, grid, size=(n, 2))]
        d = Drawing.straight_line(pts)
        if validate_simple(d).ok:
            return d
    raise GenerationFailure(f"no simple drawing after {MAX_ATTEMPTS} draws (n={n}, seed={seed})")


def x_monotone_points(n: int, seed: int, grid: int = 2**10, pairs=None) -> Drawing:
    """Straight-line drawing on points with distinct x; every edge is x-monotone.

    ``pairs`` selects a subset of edges (complete graph when None).  The grid
    is kept small on purpose so that nested and stacked edges are common.
    """
    rng = np.random.default_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        xs = rng.choice(grid, size=n, replace=False)
        ys = rng.integers(0, grid, size=n)
        pts = [(int(x), int(y)) for x, y in zip(xs, ys)]
        d = Drawing.straight_line(pts, pairs)
        if validate_simple(d).ok:
            return d
    raise GenerationFailure(f"no simple x-monotone drawing (n={n}, seed={seed})")


# --------------------------------------------------------------------------
# cylindrical drawings
# --------------------------------------------------------------------------

def cyl_selfhosted(delta: int, seed: int) -> CylindricalDrawing:
    """Width-``delta`` cylinder produced by the grower and the cylindrical construction.

    The host has its root far above and a second vertex far below a wide,
    flat cloud of random points.  Nearly every cloud point then sees the
    lower vertex, which ends up with high degree in the plane subgraph.
    """
    rng = np.random.default_rng(seed)
    far = 2**28
    for attempt in range(MAX_ATTEMPTS):
        k = delta + attempt % 3
        cloud = [(int(rng.integers(-GRID, GRID)), int(rng.integers(-2**8, 2**8))) for _ in range(k)]
        d = Drawing.straight_line([(7, far), (3, -far), *cloud])
        if not validate_simple(d).ok:
            continue
        g = grow_plane_subgraph(d, 0)
        u, big = max_degree_non_root(g)
        if big - 1 != delta:
            continue
        c = build_cylindrical(d, g, u)
        if validate_cylindrical(c).ok:
            return c
    raise GenerationFailure(f"no self-hosted cylinder of width {delta} (seed={seed})")


class _Columns:
    """Bottom-to-top order of vertex and edge crossings on every column."""

    VERTEX = -1

    def __init__(self, delta: int):
        self.stack = [[self.VERTEX] for _ in range(delta)]


def _route(delta, cols: _Columns, edges: list[CylEdge], new: CylEdge, rng, budget: list[int]):
    """Slot choice for ``new`` on each column of its side, or None.

    Depth-first over slots in random order; a branch dies as soon as the new
    edge would cross an adjacent edge or cross some edge twice.
    """
    path = new.path_columns(delta)
    inner = path[1:-1]
    strip_users = [set() for _ in range(delta)]
    for k, e in enumerate(edges):
        for s in e.strips(delta):
            strip_users[s].add(k)
    adjacent = {k for k, e in enumerate(edges) if {e.i, e.j} & {new.i, new.j}}

    def level(col, k, slot):
        # -1 when edge k is below the new edge, +1 above, 0 when both sit at the vertex;
        # slot None means the new edge is at the vertex, and so is k if it ends here
        stack = cols.stack[col]
        p = stack.index(k if k in stack else _Columns.VERTEX)
        if slot is None:
            v = stack.index(_Columns.VERTEX)
            return 0 if p == v else (1 if p > v else -1)
        return 1 if p >= slot else -1

    def strip_of(a, b):
        return a if (a + 1) % delta == b else b

    def step(t, slots, crossings):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        a = path[t]
        b = path[t + 1]
        s = strip_of(a, b)
        slot_a = slots[-1] if t > 0 else None
        last = t + 1 == len(path) - 1
        options = [None] if last else list(rng.permutation(len(cols.stack[b]) + 1))
        for slot_b in options:
            slot_b = None if slot_b is None else int(slot_b)
            ok, nxt = True, dict(crossings)
            for k in strip_users[s]:
                la, lb = level(a, k, slot_a), level(b, k, slot_b)
                if la and lb and la != lb:
                    nxt[k] = nxt.get(k, 0) + 1
                    if k in adjacent or nxt[k] > 1:
                        ok = False
                        break
            if not ok:
                continue
            if last:
                return list(slots)
            found = step(t + 1, slots + [slot_b], nxt)
            if found is not None:
                return found
        return None

    slots = step(0, [], {})
    if slots is None:
        return None
    return dict(zip(inner, slots))


def cyl_random(delta: int, seed: int, node_budget: int = 20000) -> CylindricalDrawing:
    """Random simple complete cylindrical drawing of width ``delta``.

    Edges go in one at a time in random order with a random side; the slots
    along the side are found by a pruned depth-first search.  A stuck edge
    tries the other side, then the whole drawing starts over.
    """
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(delta) for j in range(i + 1, delta)]
    for _ in range(MAX_ATTEMPTS):
        cols, edges = _Columns(delta), []
        for idx in rng.permutation(len(pairs)):
            i, j = pairs[int(idx)]
            kinds = [SideKind.INNER, SideKind.OUTER]
            if rng.integers(2):
                kinds.reverse()
            for kind in kinds:
                new = CylEdge(i, j, Side.of(kind, i, j, delta))
                slots = _route(delta, cols, edges, new, rng, [node_budget])
                if slots is not None:
                    break
            else:
                break
            k = len(edges)
            for col, slot in slots.items():
                cols.stack[col].insert(slot, k)
            edges.append(new)
        else:
            return _finish(delta, cols, edges)
    raise GenerationFailure(f"no random cylinder of width {delta} (seed={seed})")


def _finish(delta: int, cols: _Columns, edges: list[CylEdge]) -> CylindricalDrawing:
    for col, stack in enumerate(cols.stack):
        v = stack.index(_Columns.VERTEX)
        for p, k in enumerate(stack):
            if k != _Columns.VERTEX:
                edges[k].heights[col] = p - v
    order = sorted(range(len(edges)), key=lambda k: (edges[k].i, edges[k].j))
    c = CylindricalDrawing(delta, list(range(delta)), [edges[k] for k in order])
    report = validate_cylindrical(c)
    if not report.ok:
        raise GenerationFailure(f"random cylinder failed validation: {report}")
    return c
