"""Slow, independent reference computations used to pin expected values.

Nothing here imports the package's predicates: crossings come from sympy's
exact geometry, convex crossings from cyclic interleaving, optima from
plain subset enumeration.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy
from sympy.geometry import Point2D, Segment2D


def _sp(p):
    return Point2D(sympy.Rational(p[0].numerator, p[0].denominator),
                   sympy.Rational(p[1].numerator, p[1].denominator), evaluate=False)


def segment_crossing_count(a, b, c, d) -> int:
    """1 when segments ab and cd cross at a point interior to both, else 0."""
    s, t = Segment2D(_sp(a), _sp(b)), Segment2D(_sp(c), _sp(d))
    hits = s.intersection(t)
    if len(hits) != 1 or not isinstance(hits[0], Point2D):
        return 0
    p = hits[0]
    ends = {_sp(a), _sp(b), _sp(c), _sp(d)}
    return 0 if p in ends else 1


def polyline_crossing_count(ce, cf) -> int:
    """Crossings of two polylines, with breakpoint hits counted once."""
    points = set()
    for p, q in zip(ce, ce[1:]):
        for r, s in zip(cf, cf[1:]):
            hit = Segment2D(_sp(p), _sp(q)).intersection(Segment2D(_sp(r), _sp(s)))
            if len(hit) == 1 and isinstance(hit[0], Point2D):
                points.add(hit[0])
    ends = {_sp(ce[0]), _sp(ce[-1]), _sp(cf[0]), _sp(cf[-1])}
    return len(points - ends)


def straight_crossing_pairs(points, pairs) -> set[tuple[int, int]]:
    """Edge-index pairs whose straight segments cross (adjacent pairs skipped)."""
    out = set()
    for x, y in itertools.combinations(range(len(pairs)), 2):
        (a, b), (c, d) = pairs[x], pairs[y]
        if {a, b} & {c, d}:
            continue
        if segment_crossing_count(points[a], points[b], points[c], points[d]):
            out.add((x, y))
    return out


def convex_crossing_pairs(n: int) -> set[tuple[int, int]]:
    """For points in convex position listed cyclically: chords cross iff they interleave."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = set()
    for x, y in itertools.combinations(range(len(pairs)), 2):
        (a, b), (c, d) = pairs[x], pairs[y]
        if len({a, b, c, d}) == 4 and (a < c < b) != (a < d < b):
            out.add((x, y))
    return out


def max_disjoint_by_subsets(ends, crossing_pairs) -> int:
    """Largest pairwise disjoint family, by checking subsets from large to small."""
    m = len(ends)
    bad = set(crossing_pairs)
    for x, y in itertools.combinations(range(m), 2):
        if set(ends[x]) & set(ends[y]):
            bad.add((x, y))
    for size in range(m, 0, -1):
        for combo in itertools.combinations(range(m), size):
            if all(pair not in bad for pair in itertools.combinations(combo, 2)):
                return size
    return 0


def y_on(chain, x):
    for p, q in zip(chain, chain[1:]):
        if p[0] <= x <= q[0]:
            return p[1] + (q[1] - p[1]) * (x - p[0]) / (q[0] - p[0])
    raise ValueError(x)


def below_everywhere(ce, cf) -> bool | None:
    """True/False when one curve is strictly below/above the other on the whole
    common x-range (checked at every breakpoint and every midpoint between
    them), None when the spans do not overlap or the order changes."""
    lo = max(ce[0][0], cf[0][0])
    hi = min(ce[-1][0], cf[-1][0])
    if not lo < hi:
        return None
    xs = sorted({lo, hi} | {p[0] for p in ce + cf if lo <= p[0] <= hi})
    samples = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
    signs = {(y_on(ce, x) > y_on(cf, x)) - (y_on(ce, x) < y_on(cf, x)) for x in samples}
    if signs == {-1}:
        return True
    if signs == {1}:
        return False
    return None


def chains_touch(ce, cf) -> bool:
    """Do two polylines share any point at all (ends included)?"""
    for p, q in zip(ce, ce[1:]):
        for r, s in zip(cf, cf[1:]):
            if Segment2D(_sp(p), _sp(q)).intersection(Segment2D(_sp(r), _sp(s))):
                return True
    return False


def frac_chain(points):
    return [(Fraction(x), Fraction(y)) for x, y in points]
