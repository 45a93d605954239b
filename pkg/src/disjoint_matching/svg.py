"""Static SVG snapshots of drawings, with optional highlighted edge sets."""
from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .cylinder import CylindricalDrawing
from .model import Drawing

SIZE = 600
MARGIN = 20


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Frame:
    """Affine map from drawing coordinates onto the canvas, y pointing up."""

    def __init__(self, xs, ys):
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0) or 1
        self.k = (SIZE - 2 * MARGIN) / float(span)

    def __call__(self, x, y) -> tuple[str, str]:
        return _fmt(MARGIN + float(x - self.x0) * self.k), _fmt(SIZE - MARGIN - float(y - self.y0) * self.k)


def _document(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def _polyline(points, cls: str, title: str) -> str:
    pts = " ".join(f"{x},{y}" for x, y in points)
    return f'<polyline class={quoteattr(cls)} points="{pts}"><title>{title}</title></polyline>'


_STYLE = {
    "edge": 'fill="none" stroke="#999" stroke-width="0.6"',
    "plane": 'fill="none" stroke="#2a6fdb" stroke-width="1.6"',
    "match": 'fill="none" stroke="#d62728" stroke-width="3"',
}


def _styled(line: str, cls: str) -> str:
    return line.replace("<polyline ", f"<polyline {_STYLE[cls]} ", 1)


def drawing_svg(d: Drawing, highlight=(), plane=()) -> str:
    """One polyline per edge and one circle per vertex.

    ``plane`` edges are drawn thicker in blue, ``highlight`` edges on top in red.
    """
    xs = [p.x for p in d.vertices] + [q.x for e in d.edges for q in e.chain]
    ys = [p.y for p in d.vertices] + [q.y for e in d.edges for q in e.chain]
    f = _Frame(xs, ys)
    highlight, plane = set(highlight), set(plane)
    body = []
    for layer in ("edge", "plane", "match"):
        for eid, e in enumerate(d.edges):
            cls = "match" if eid in highlight else "plane" if eid in plane else "edge"
            if cls == layer:
                body.append(_styled(_polyline([f(p.x, p.y) for p in e.chain], cls, f"{e.u}-{e.v}"), cls))
    for w, p in enumerate(d.vertices):
        cx, cy = f(p.x, p.y)
        body.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="black"><title>{w}</title></circle>')
    return _document(body)


def cylinder_svg(c: CylindricalDrawing, highlight=()) -> str:
    """The cylinder opened along the line between the last and first column.

    Column ``l`` is drawn at ``x = l``; the first column is repeated at
    ``x = delta`` so that strips wrapping around stay in one piece.
    """
    top = max([abs(h) for e in c.cyl_edges for h in e.heights.values()] + [1])
    f = _Frame([0, c.delta], [-top - 1, top + 1])
    highlight = set(highlight)
    body = []
    for col in range(c.delta + 1):
        x1, y1 = f(col, -top - 1)
        x2, y2 = f(col, top + 1)
        body.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#ddd" stroke-dasharray="4 3"/>')
    for k, e in enumerate(c.cyl_edges):
        cls = "match" if k in highlight else "edge"
        pts = []
        for s in e.strips(c.delta):
            if not pts:
                pts.append(f(s, e.height(s)))
            pts.append(f(s + 1, e.height((s + 1) % c.delta)))
            if s == c.delta - 1:    # wraps around: restart at x = 0
                body.append(_styled(_polyline(pts, cls, f"{e.i}-{e.j}"), cls))
                pts = []
        if pts:
            body.append(_styled(_polyline(pts, cls, f"{e.i}-{e.j}"), cls))
    for col in range(c.delta + 1):
        cx, cy = f(col, 0)
        body.append(f'<circle cx="{cx}" cy="{cy}" r="3.5" fill="black"><title>{col % c.delta}</title></circle>')
    return _document(body)
