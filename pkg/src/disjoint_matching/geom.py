"""Exact 2D geometry: rational points, orientation, segment and polyline contacts.

Scalar predicates work on :class:`fractions.Fraction` coordinates.  The batch
kernel at the bottom works on integer arrays obtained by scaling every
coordinate of a drawing to a common denominator; it stays exact because it
only adds, subtracts, multiplies and compares integers (``int64`` while the
magnitudes provably fit, Python integers in ``object`` arrays otherwise).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegeneracyError

__all__ = [
    "Rational", "Point", "Segment", "Orientation", "IntersectionKind",
    "Intersection", "ContactKind", "Contact", "rational", "format_rational",
    "point", "orient", "segment_intersection", "polyline_contacts",
    "polyline_crossings", "chain_position", "DegeneracyError",
]

Rational = Fraction

# |coordinate| bound below which int64 orientation determinants cannot overflow
INT64_COORD_LIMIT = 2**29


def rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction.

    Floats are refused: they would smuggle rounding into exact predicates.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    return str(q)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def to_json(self) -> list[str]:
        return [format_rational(self.x), format_rational(self.y)]


def point(x, y) -> Point:
    return Point(rational(x), rational(y))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate segment at {self.a}")


def cross(u: Point, v: Point):
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point):
    return u.x * v.x + u.y * v.y


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def orient(p: Point, q: Point, r: Point) -> Orientation:
    """Sign of the determinant of (q - p, r - p)."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return Orientation((d > 0) - (d < 0))


class IntersectionKind(enum.Enum):
    NONE = "none"
    PROPER = "proper"
    ENDPOINT = "endpoint"
    OVERLAP = "overlap"


class Intersection(NamedTuple):
    kind: IntersectionKind
    point: Point | None = None
    # for OVERLAP: the two ends of the shared piece
    overlap: tuple[Point, Point] | None = None


def segment_intersection(s: Segment, t: Segment) -> Intersection:
    """Classify how two closed segments meet.

    ENDPOINT covers every single-point contact that is not interior to both
    segments: a shared endpoint, or an endpoint of one lying inside the other.
    """
    p, r = s.a, s.b - s.a
    q, v = t.a, t.b - t.a
    qp = q - p
    rxv = cross(r, v)
    if rxv == 0:
        if cross(qp, r) != 0:
            return Intersection(IntersectionKind.NONE)
        rr = dot(r, r)
        t0 = Fraction(dot(qp, r), rr)
        t1 = t0 + Fraction(dot(v, r), rr)
        lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
        if lo > hi:
            return Intersection(IntersectionKind.NONE)
        if lo == hi:
            return Intersection(IntersectionKind.ENDPOINT, p + r.scaled(lo))
        return Intersection(IntersectionKind.OVERLAP, p + r.scaled((lo + hi) / 2),
                            (p + r.scaled(lo), p + r.scaled(hi)))
    ts = Fraction(cross(qp, v), rxv)
    us = Fraction(cross(qp, r), rxv)
    if not (0 <= ts <= 1 and 0 <= us <= 1):
        return Intersection(IntersectionKind.NONE)
    at = p + r.scaled(ts)
    if 0 < ts < 1 and 0 < us < 1:
        return Intersection(IntersectionKind.PROPER, at)
    return Intersection(IntersectionKind.ENDPOINT, at)


# --------------------------------------------------------------------------
# polylines
# --------------------------------------------------------------------------

class ContactKind(enum.Enum):
    CROSSING = "crossing"            # transversal, interior to both curves
    TOUCHING = "touching"            # interior to both curves, not transversal
    ENDPOINT = "endpoint"            # an end of one curve lies on the other's interior
    SHARED_ENDPOINT = "shared-endpoint"
    OVERLAP = "overlap"


class Contact(NamedTuple):
    kind: ContactKind
    point: Point
    pos_e: tuple[int, Fraction]
    pos_f: tuple[int, Fraction]


def _as_chain(obj: Sequence) -> list[Point]:
    items = list(obj)
    if items and isinstance(items[0], Segment):
        chain = [items[0].a]
        for seg in items:
            if seg.a != chain[-1]:
                raise ValueError("polyline segments are not consecutive")
            chain.append(seg.b)
        return chain
    return [Point(*p) if not isinstance(p, Point) else p for p in items]


def chain_position(chain: Sequence[Point], p: Point) -> tuple[int, Fraction]:
    """Return ``(segment index, parameter)`` of a point lying on ``chain``.

    Interior breakpoint ``k`` maps to ``(k, 0)``, the last point to
    ``(len(chain) - 2, 1)``; positions compare lexicographically along the curve.
    """
    last = len(chain) - 1
    for k in range(last):
        a, b = chain[k], chain[k + 1]
        if p == a:
            return (k, Fraction(0))
        d = b - a
        w = p - a
        if cross(d, w) == 0:
            t = Fraction(dot(w, d), dot(d, d))
            if 0 < t < 1:
                return (k, t)
    if p == chain[last]:
        return (last - 1, Fraction(1))
    raise ValueError(f"{p} is not on the chain")


def _neighbours(chain: Sequence[Point], pos: tuple[int, Fraction]):
    k, t = pos
    if t == 0:
        return chain[k - 1], chain[k + 1]
    return chain[k], chain[k + 1]


def _strictly_inside_ccw(s: Point, e: Point, d: Point) -> bool:
    """Is direction ``d`` strictly inside the counter-clockwise sweep s -> e?"""
    se, sd, de = cross(s, e), cross(s, d), cross(d, e)
    if se > 0:
        return sd > 0 and de > 0
    if se < 0:
        return not (sd <= 0 and de <= 0)
    return sd > 0


def _same_direction(a: Point, b: Point) -> bool:
    return cross(a, b) == 0 and dot(a, b) > 0


def _classify_interior(p, e_prev, e_next, f_prev, f_next) -> ContactKind:
    a, b = e_prev - p, e_next - p
    c, d = f_prev - p, f_next - p
    for g in (c, d):
        if _same_direction(g, a) or _same_direction(g, b):
            return ContactKind.OVERLAP
    if _strictly_inside_ccw(b, a, c) != _strictly_inside_ccw(b, a, d):
        return ContactKind.CROSSING
    return ContactKind.TOUCHING


_PRIORITY = {ContactKind.OVERLAP: 4, ContactKind.ENDPOINT: 3, ContactKind.TOUCHING: 2,
             ContactKind.CROSSING: 1, ContactKind.SHARED_ENDPOINT: 0}


def polyline_contacts(e: Sequence, f: Sequence) -> list[Contact]:
    """Every point shared by two polylines, classified; sorted by point."""
    ce, cf = _as_chain(e), _as_chain(f)
    found: dict[Point, ContactKind] = {}
    overlap_witness: dict[Point, ContactKind] = {}
    for i in range(len(ce) - 1):
        s = Segment(ce[i], ce[i + 1])
        for j in range(len(cf) - 1):
            hit = segment_intersection(s, Segment(cf[j], cf[j + 1]))
            if hit.kind is IntersectionKind.NONE:
                continue
            if hit.kind is IntersectionKind.OVERLAP:
                overlap_witness[hit.point] = ContactKind.OVERLAP
                for q in hit.overlap:
                    found.setdefault(q, None)
            else:
                found.setdefault(hit.point, None)
    ends_e = {ce[0], ce[-1]}
    ends_f = {cf[0], cf[-1]}
    out: dict[Point, Contact] = {}
    for p in found:
        pe, pf = chain_position(ce, p), chain_position(cf, p)
        if p in ends_e and p in ends_f:
            kind = ContactKind.SHARED_ENDPOINT
        elif p in ends_e or p in ends_f:
            kind = ContactKind.ENDPOINT
        else:
            kind = _classify_interior(p, *_neighbours(ce, pe), *_neighbours(cf, pf))
        out[p] = Contact(kind, p, pe, pf)
    for p, kind in overlap_witness.items():
        prev = out.get(p)
        if prev is None or _PRIORITY[prev.kind] < _PRIORITY[kind]:
            out[p] = Contact(kind, p, chain_position(ce, p), chain_position(cf, p))
    return [out[p] for p in sorted(out)]


def polyline_crossings(e: Sequence, f: Sequence) -> list[Point]:
    """Transversal crossing points of two polylines, shared ends excluded.

    Raises DegeneracyError when the curves overlap or one passes through an
    end of the other.  Tangential touches are not crossings and are dropped.
    """
    points = []
    for c in polyline_contacts(e, f):
        if c.kind is ContactKind.OVERLAP:
            raise DegeneracyError(f"polylines overlap near {c.point}")
        if c.kind is ContactKind.ENDPOINT:
            raise DegeneracyError(f"polyline passes through endpoint {c.point}")
        if c.kind is ContactKind.CROSSING:
            points.append(c.point)
    return points


# --------------------------------------------------------------------------
# batch kernel on integer coordinates
# --------------------------------------------------------------------------

NONE, PROPER, CONTACT = 0, 1, 2


def common_scale(values: Iterable[Fraction]) -> int:
    scale = 1
    for q in values:
        scale = math.lcm(scale, q.denominator)
    return scale


def int_array(values, limit: int = INT64_COORD_LIMIT) -> np.ndarray:
    """int64 array when every value is below ``limit``, exact object array otherwise."""
    values = list(values)
    if not values:
        return np.zeros(0, dtype=np.int64)
    if -limit < min(values) and max(values) < limit:
        return np.asarray(values, dtype=np.int64)
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr


def _sign(x):
    return (x > 0).astype(np.int8) - (x < 0).astype(np.int8)


def _orient_sign(ax, ay, bx, by, cx, cy):
    return _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def segment_pair_codes(a, b, c, d) -> np.ndarray:
    """Classify segment pairs ``a-b`` vs ``c-d`` given as (x, y) array pairs.

    Inputs broadcast against each other.  Returns NONE (disjoint), PROPER
    (interiors cross at one point) or CONTACT (anything else that touches,
    including overlaps); CONTACT pairs need the scalar routines.
    """
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = a, b, c, d
    o1 = _orient_sign(ax, ay, bx, by, cx, cy)
    o2 = _orient_sign(ax, ay, bx, by, dx, dy)
    o3 = _orient_sign(cx, cy, dx, dy, ax, ay)
    o4 = _orient_sign(cx, cy, dx, dy, bx, by)
    p12, p34 = o1 * o2, o3 * o4
    proper = (p12 < 0) & (p34 < 0)
    collinear = (o1 == 0) & (o2 == 0)
    boxes = ((np.minimum(ax, bx) <= np.maximum(cx, dx)) & (np.minimum(cx, dx) <= np.maximum(ax, bx))
             & (np.minimum(ay, by) <= np.maximum(cy, dy)) & (np.minimum(cy, dy) <= np.maximum(ay, by)))
    touch = (p12 <= 0) & (p34 <= 0) & ~proper & (~collinear | boxes)
    codes = np.zeros(np.broadcast(ax, cx).shape, dtype=np.int8)
    codes[proper] = PROPER
    codes[touch] = CONTACT
    return codes


def _reduce(num, den):
    g = np.gcd(num, den)
    g[g == 0] = 1
    num, den = num // g, den // g
    neg = den < 0
    num[neg], den[neg] = -num[neg], -den[neg]
    return num, den


def proper_parameters(a, b, c, d):
    """Exact crossing parameters for PROPER pairs, reduced to lowest terms.

    Returns ``(t_num, t_den, u_num, u_den)`` with the crossing at
    ``a + t (b - a) = c + u (d - c)``.
    """
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = a, b, c, d
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    qx, qy = cx - ax, cy - ay
    den = rx * sy - ry * sx
    tn = qx * sy - qy * sx
    un = qx * ry - qy * rx
    tn, td = _reduce(tn, den.copy())
    un, ud = _reduce(un, den.copy())
    return tn, td, un, ud
