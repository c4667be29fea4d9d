"""Realization of a solved skeleton as plane geometry, and back.

All five slope classes have cosines in Q(sqrt 5) and sines that are
Q(sqrt 5)-multiples of sin 36deg, so coordinates propagate exactly as pairs
(x, y/sin36) of field elements.  Every skeleton cycle closes exactly; the
float picture is produced only at the end.  The frame's top side runs
left to right at the top, frame side i having direction -72*(i-1) degrees,
and inner pentagons have their horizontal side at the bottom with the
colour-1 corner (the apex) on top.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ClosureFailure,
    DegenerateContact,
    NegativeInput,
    PentactError,
)
from .forests import FiveColorForest, mod5, validate_fcf
from .planarmap import ValidationReport
from .q5 import PHI, Q5, ZERO

_Q = Fraction
# clockwise direction of a colour-i frame segment: (cos, sin/sin36)
_FRAME_COS = [
    Q5(1),
    Q5(_Q(-1, 4), _Q(1, 4)),
    Q5(_Q(-1, 4), _Q(-1, 4)),
    Q5(_Q(-1, 4), _Q(-1, 4)),
    Q5(_Q(-1, 4), _Q(1, 4)),
]
_FRAME_SIN = [ZERO, -PHI, Q5(-1), Q5(1), PHI]

SIN36 = math.sin(math.pi / 5)


def _direction(seg):
    c = seg.color - 1
    if seg.owner[0] == "frame":
        return _FRAME_COS[c], _FRAME_SIN[c]
    return -_FRAME_COS[c], -_FRAME_SIN[c]


@dataclass
class PentagonShape:
    vertex: int
    apex: tuple           # (x, y) doubles
    side: Q5
    side_float: float

    def corners(self):
        """Corner coordinates clockwise from the apex (labels 1..5)."""
        L = self.side_float
        pts = [self.apex]
        for ang in (-36.0, -108.0, 180.0, 108.0):
            a = math.radians(ang)
            x, y = pts[-1]
            pts.append((x + L * math.cos(a), y + L * math.sin(a)))
        return pts

    def side_endpoints(self, color):
        """Endpoints of the colour-`color` side (corner c+2 to corner c+3)."""
        pts = self.corners()
        i = (color + 1) % 5
        return pts[i], pts[(i + 1) % 5]


@dataclass
class Contact:
    tail: int
    head: int             # vertex whose side (or frame side) is touched
    color: int
    point: tuple
    on_frame: bool


@dataclass
class PentagonLayout:
    frame_corners: list
    frame_sides: dict     # i -> exact Q5 length
    pentagons: dict       # vertex -> PentagonShape
    contacts: list
    exact_nodes: dict     # skeleton node -> (Q5 x, Q5 y/sin36)
    skeleton: object
    closure_residual: float

    def node_float(self, node):
        x, y = self.exact_nodes[node]
        return (x.to_float(), y.to_float() * SIN36)


def realize(sk, sol):
    """Propagate exact segment vectors over a spanning tree of the skeleton.

    All non-tree segments must close exactly; a mismatch means the system
    assembly is inconsistent, not a rounding problem.
    """
    negs = sol.negatives()
    if negs:
        raise NegativeInput(f"solution has negative entries: {negs[:4]}")

    adj = {}
    for seg in sk.segments:
        vec = _seg_vector(seg, sol)
        adj.setdefault(seg.a, []).append((seg.b, vec))
        adj.setdefault(seg.b, []).append((seg.a, (-vec[0], -vec[1])))

    root = ("K", 1)
    pos = {root: (ZERO, ZERO)}
    queue = [root]
    while queue:
        cur = queue.pop()
        cx, cy = pos[cur]
        for (nxt, (dx, dy)) in adj[cur]:
            if nxt not in pos:
                pos[nxt] = (cx + dx, cy + dy)
                queue.append(nxt)
    if len(pos) != len(adj):
        raise ClosureFailure("skeleton is not connected")

    residual = 0.0
    for seg in sk.segments:
        ax, ay = pos[seg.a]
        dx, dy = _seg_vector(seg, sol)
        bx, by = pos[seg.b]
        if bx != ax + dx or by != ay + dy:
            raise ClosureFailure(f"segment {seg.index} does not close exactly")
        fx = abs((ax + dx - bx).to_float())
        fy = abs((ay + dy - by).to_float()) * SIN36
        residual = max(residual, fx, fy)

    fc = [None] * 5
    for i in range(1, 6):
        x, y = pos[("K", i)]
        fc[i - 1] = (x.to_float(), y.to_float() * SIN36)
    frame_lengths = {
        i: _sum_lengths(sk.frame_sides[i], sol) for i in range(1, 6)
    }

    pentagons = {}
    for v, pen in sk.pentagons.items():
        apex_node = pen.nodes[pen.corner_pos[1]]
        x, y = pos[apex_node]
        side = sol[("v", v)]
        pentagons[v] = PentagonShape(
            v, (x.to_float(), y.to_float() * SIN36), side, side.to_float())

    contacts = []
    t = sk.t
    outer_index = {a: i + 1 for i, a in enumerate(t.outer)}
    for (u, w) in sorted(t.inner_edges()):
        tail, head = (u, w) if sk.x.is_directed(u, w) else (w, u)
        _, color = sk.forest.edge_data(tail, head)
        node = ("c", min(u, w), max(u, w))
        px, py = pos[node]
        contacts.append(Contact(
            tail, head, color,
            (px.to_float(), py.to_float() * SIN36),
            head in outer_index))

    return PentagonLayout(fc, frame_lengths, pentagons, contacts, pos, sk,
                          residual)


def _seg_vector(seg, sol):
    value = sol.seg_value(seg)
    cos, sin = _direction(seg)
    return (value * cos, value * sin)


def _sum_lengths(segs, sol):
    total = ZERO
    for seg in segs:
        total = total + sol.seg_value(seg)
    return total


# -- geometric verification ---------------------------------------------------

TOL = 1e-9


def _dist(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _point_to_segment(p, a, b):
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return _dist(p, a), 0.0
    s = ((px - ax) * dx + (py - ay) * dy) / L2
    proj = (ax + s * dx, ay + s * dy)
    return _dist(p, proj), s


def verify(layout, t):
    """Geometric checks on the float picture at unit frame scale."""
    rep = ValidationReport()
    shapes = layout.pentagons
    outer_index = {a: i + 1 for i, a in enumerate(t.outer)}

    for v, shape in shapes.items():
        pts = shape.corners()
        L = shape.side_float
        closing = _dist(pts[0], (pts[4][0] + L * math.cos(math.radians(36)),
                                 pts[4][1] + L * math.sin(math.radians(36))))
        if closing > TOL:
            rep.add(PentactError, f"pentagon {v} does not close")
        if L > 0:
            for i in range(5):
                got = _dist(pts[i], pts[(i + 1) % 5])
                if abs(got - L) / L > TOL:
                    rep.add(PentactError,
                            f"pentagon {v} side {i} length {got} vs {L}")

    for c in layout.contacts:
        corner = shapes[c.tail].corners()[c.color - 1]
        if _dist(corner, c.point) > TOL:
            rep.add(PentactError,
                    f"contact of edge ({c.tail},{c.head}) not at corner "
                    f"{c.color} of pentagon {c.tail}")
        if c.on_frame:
            i = outer_index[c.head]
            a = layout.frame_corners[i - 1]
            b = layout.frame_corners[i % 5]
            side_color = i
        else:
            a, b = shapes[c.head].side_endpoints(c.color)
            side_color = c.color
        d, s = _point_to_segment(c.point, a, b)
        if d > TOL or s < -TOL or s > 1 + TOL:
            rep.add(PentactError,
                    f"contact of edge ({c.tail},{c.head}) misses side "
                    f"{side_color} of {c.head} (distance {d:.2e})")
        if side_color != c.color:
            rep.add(PentactError,
                    f"corner {c.color} of {c.tail} touches side of colour "
                    f"{side_color}")

    verts = sorted(shapes)
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            if _pentagons_overlap(shapes[u], shapes[w]):
                rep.add(PentactError,
                        f"pentagons {u} and {w} overlap beyond tolerance")
    return rep


def _pentagons_overlap(s1, s2):
    pts1, pts2 = s1.corners(), s2.corners()
    # separating-axis test; homothetic pentagons share their five normals
    for k in range(5):
        ang = math.radians(-72.0 * k + 90.0)
        nx, ny = math.cos(ang), math.sin(ang)
        p1 = [nx * x + ny * y for (x, y) in pts1]
        p2 = [nx * x + ny * y for (x, y) in pts2]
        if min(p1) >= max(p2) - TOL or min(p2) >= max(p1) - TOL:
            return False
    return True


# -- forest induced by geometry ---------------------------------------------


def induced_fcf(layout, t):
    """Read the forest off the drawing: orient each contact edge from the
    corner's owner to the side's owner and colour it by the corner label."""
    shapes = layout.pentagons
    outer_index = {a: i + 1 for i, a in enumerate(t.outer)}
    colored = []
    for (u, w) in sorted(t.inner_edges()):
        candidates = []
        for (p, q) in ((u, w), (w, u)):
            if p in outer_index:
                continue
            corners = shapes[p].corners()
            for c in range(1, 6):
                pt = corners[c - 1]
                if q in outer_index:
                    i = outer_index[q]
                    a = layout.frame_corners[i - 1]
                    b = layout.frame_corners[i % 5]
                    d, s = _point_to_segment(pt, a, b)
                    if d <= TOL and -TOL <= s <= 1 + TOL and c == i:
                        candidates.append((p, q, c, s))
                else:
                    a, b = shapes[q].side_endpoints(c)
                    d, s = _point_to_segment(pt, a, b)
                    if d <= TOL and -TOL <= s <= 1 + TOL:
                        candidates.append((p, q, c, s))
        if not candidates:
            raise PentactError(f"no geometric contact found for edge ({u},{w})")
        for (p, q, c, s) in candidates:
            if s <= TOL or s >= 1 - TOL:
                raise DegenerateContact(
                    f"edge ({u},{w}): corner-corner contact")
        if len({(p, q) for (p, q, _, _) in candidates}) > 1:
            raise DegenerateContact(
                f"edge ({u},{w}): contact direction ambiguous")
        p, q, c, _ = candidates[0]
        colored.append((p, q, c))
    f = FiveColorForest(t, colored)
    rep = validate_fcf(t, f)
    if not rep.ok:
        raise PentactError(f"induced colouring invalid: {rep}")
    return f


# -- emission -----------------------------------------------------------------


def emit_svg(layout, contact_graph=False):
    """SVG 1.1 document; y axis flipped so the frame top side is on top."""
    xs = [p[0] for p in layout.frame_corners]
    ys = [p[1] for p in layout.frame_corners]
    pad = 0.05 * (max(xs) - min(xs) or 1.0)
    x0, y0 = min(xs) - pad, -(max(ys)) - pad
    wd, ht = (max(xs) - min(xs)) + 2 * pad, (max(ys) - min(ys)) + 2 * pad

    def pt(p):
        return f"{p[0]:.9f},{-p[1]:.9f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.9f} {y0:.9f} {wd:.9f} {ht:.9f}">',
        f'<g stroke-width="{0.004 * wd:.9f}">',
    ]
    frame_pts = " ".join(pt(p) for p in layout.frame_corners)
    lines.append(f'<polygon class="frame" points="{frame_pts}" '
                 'fill="none" stroke="#444"/>')
    for v in sorted(layout.pentagons):
        shape = layout.pentagons[v]
        pts = " ".join(pt(p) for p in shape.corners())
        lines.append(f'<path class="pentagon" d="M {pts.replace(" ", " L ")} Z" '
                     'fill="#d8d8e8" stroke="#333"/>')
    if contact_graph:
        centers = {v: _centroid(s.corners()) for v, s in layout.pentagons.items()}
        for c in layout.contacts:
            if c.on_frame:
                a, b = centers[c.tail], c.point
            else:
                a, b = centers[c.tail], centers[c.head]
            lines.append(f'<line class="contact-graph" x1="{a[0]:.9f}" '
                         f'y1="{-a[1]:.9f}" x2="{b[0]:.9f}" y2="{-b[1]:.9f}" '
                         'stroke="#a00"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _centroid(pts):
    n = len(pts)
    return (sum(p[0] for p in pts) / n, sum(p[1] for p in pts) / n)


def layout_to_json(layout):
    return {
        "frame": {
            "corners": [[x, y] for (x, y) in layout.frame_corners],
            "side_lengths": {str(i): q.to_json()
                             for i, q in sorted(layout.frame_sides.items())},
        },
        "pentagons": {
            str(v): {
                "apex": [s.apex[0], s.apex[1]],
                "side": s.side.to_json(),
                "side_float": s.side_float,
            }
            for v, s in sorted(layout.pentagons.items())
        },
        "contacts": [
            {
                "from": c.tail,
                "to": c.head,
                "color": c.color,
                "point": [c.point[0], c.point[1]],
                "on_frame": c.on_frame,
            }
            for c in layout.contacts
        ],
    }


def emit(layout, fmt, path, contact_graph=False):
    if fmt == "svg":
        text = emit_svg(layout, contact_graph)
    elif fmt == "json":
        text = json.dumps(layout_to_json(layout), indent=1, sort_keys=True) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path
