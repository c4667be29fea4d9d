"""Sign classification and extraction of sign-separating cycles.

After a solve, each skeleton segment is either negative or non-negative.
Two kinds of oriented edges separate the regions: a normal edge whose tail
pentagon changes sign at the contact point while neither adjacent face
quadrilateral changes sign there, and a stack edge whose face quadrilateral
changes sign at its concave corner.  Every such edge has a unique successor:

* at a stack vertex, the quadrilateral has exactly one sign-changing convex
  corner; the walk leaves to the corner-owner there if the side-owner is the
  edge's own tail, otherwise to the side-owner;
* at a normal vertex reached at a point interior to a pentagon side, the
  walk runs toward the negative segment (toward the non-negative one when
  the pentagon's size variable is negative) and leaves through the corner
  ending that side;
* at a normal vertex reached at one of its own corners, the walk leaves
  through that corner's edge immediately.

Following successors from every sign-separating edge yields the disjoint
union of directed simple cycles whose reversal drives the iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CycleLinkFailure
from .planarmap import canonical_face
from .skeleton import contact_node


@dataclass
class SignedSolution:
    skeleton: object
    solution: object
    negative_segments: set = field(default_factory=set)
    separating_edges: list = field(default_factory=list)
    cycles: list = field(default_factory=list)

    def cycle_edge_set(self):
        return [e for cyc in self.cycles for e in cyc]


def _classify_segments(sk, sol):
    return {seg.index for seg in sk.segments if sol.seg_value(seg).sign() < 0}


def _separating_edges(sk, sol, x, neg):
    edges = []
    # stack edges: quadrilateral sign-change at the concave corner
    for fd in sk.quad_faces():
        r1 = fd.seg_by_role(1)
        r2 = fd.seg_by_role(2)
        if (r1.index in neg) != (r2.index in neg):
            w = sk.ext.stack_of_face[fd.face]
            edges.append((fd.missing_vertex, w))
    # normal edges: tail pentagon changes at the contact, neither face does
    inner = set(sk.t.inner_vertices())
    for (u, v) in sorted(sk.t.inner_edges()):
        tail, head = (u, v) if x.is_directed(u, v) else (v, u)
        if tail not in inner:
            continue
        p = contact_node(tail, head)
        pen = sk.pentagons[tail]
        pos = pen.nodes.index(p)
        if ((pen.seg_before(pos).index in neg)
                == (pen.seg_after(pos).index in neg)):
            continue
        quads_change = False
        for fd in _faces_at_contact(sk, tail, head):
            s_in, s_out = fd.corner_segments(p)
            if (s_in.index in neg) != (s_out.index in neg):
                quads_change = True
        if not quads_change:
            edges.append((tail, head))
    return edges


def _faces_at_contact(sk, u, v):
    t = sk.t
    faces = []
    for (a, b) in ((u, v), (v, u)):
        idx = t.face_index(a, b)
        if idx != t.outer_face_index():
            fv = tuple(h[0] for h in t.faces()[idx])
            faces.append(sk.faces[canonical_face(fv)])
    return faces


def _changed_convex_corner(sk, fd, neg):
    hits = []
    for node in fd.cycle_nodes[1:]:
        s_in, s_out = fd.corner_segments(node)
        if (s_in.index in neg) != (s_out.index in neg):
            hits.append(node)
    if len(hits) != 1:
        raise CycleLinkFailure(
            f"face {fd.face}: {len(hits)} sign-changing convex corners")
    return hits[0]


def _successor(sk, sol, x, neg, edge, ctx):
    u, w = edge
    ext = sk.ext
    if ext.is_stack(w):
        fd = sk.faces[ext.face_of_stack[w]]
        r1, r2 = fd.seg_by_role(1), fd.seg_by_role(2)
        if (r1.index in neg) == (r2.index in neg):
            raise CycleLinkFailure(
                f"stack edge ({u},{w}) walked without a concave sign-change")
        p = _changed_convex_corner(sk, fd, neg)
        a, b = p[1], p[2]
        tail, head = (a, b) if x.is_directed(a, b) else (b, a)
        if head == u:
            return (w, tail), ("corner", p)
        return (w, head), ("side", p)

    kind, p = ctx
    pen = sk.pentagons[w]
    pos = pen.nodes.index(p)
    if kind == "corner":
        # the walk continues through this very corner of the pentagon of w
        node_kind = pen.kinds[pos]
        if node_kind[0] != "corner":
            raise CycleLinkFailure(f"expected corner of pentagon {w} at {p}")
        return _corner_step(sk, w, node_kind)

    s_prev, s_next = pen.seg_before(pos), pen.seg_after(pos)
    if (s_prev.index in neg) == (s_next.index in neg):
        raise CycleLinkFailure(
            f"pentagon {w} has no sign-change at walk point {p}")
    w_nonneg = sol[("v", w)].sign() >= 0
    toward_next = (s_next.index in neg) if w_nonneg else (s_next.index not in neg)
    step = 1 if toward_next else -1
    i = pos
    while True:
        i = (i + step) % len(pen.nodes)
        if pen.kinds[i][0] == "corner":
            break
    return _corner_step(sk, w, pen.kinds[i])


def _corner_step(sk, w, node_kind):
    _, _, head = node_kind
    if sk.ext.is_stack(head):
        return (w, head), None
    return (w, head), ("side", contact_node(w, head))


def _start_ctx(sk, x, edge):
    u, w = edge
    if sk.ext.is_stack(w):
        return None
    return ("side", contact_node(u, w))


def classify_and_extract(sk, sol, x):
    """Signs, sign-separating edges and their linked cycles for a solution."""
    neg = _classify_segments(sk, sol)
    seps = _separating_edges(sk, sol, x, neg)
    has_negative = bool(sol.negatives())
    if has_negative and not seps:
        raise CycleLinkFailure("negative variables but no separating edge")
    if not has_negative and seps:
        raise CycleLinkFailure("separating edges without negative variables")

    cycles = []
    visited = {}
    guard = 4 * len(sk.ext.inner_edges()) + 8
    for start in seps:
        if start in visited:
            continue
        walk = []
        edge, ctx = start, _start_ctx(sk, x, start)
        for _ in range(guard):
            if edge in visited:
                if visited[edge] != "open" or edge != start or not walk:
                    raise CycleLinkFailure(
                        f"edge {edge} reached from two different walks")
                break
            visited[edge] = "open"
            walk.append(edge)
            edge, ctx = _successor(sk, sol, x, neg, edge, ctx)
        else:
            raise CycleLinkFailure("successor walk did not close")
        for e in walk:
            visited[e] = "done"
        cycles.extend(_split_into_simple_cycles(walk))

    _check_disjoint_simple(cycles)
    return SignedSolution(sk, sol, neg, seps, cycles)


def _split_into_simple_cycles(walk):
    """Split a closed edge walk into simple cycles at vertex repeats.

    A walk may pass twice through a pentagon whose size variable is
    negative; peeling off the inner loop restores simplicity without
    touching the edge set.
    """
    cycles = []
    stack = []
    tail_pos = {}
    for (u, v) in walk:
        tail_pos[u] = len(stack)
        stack.append((u, v))
        if v in tail_pos:
            i = tail_pos[v]
            cyc = stack[i:]
            for (a, _) in cyc:
                tail_pos.pop(a, None)
            del stack[i:]
            cycles.append(tuple(cyc))
    if stack:
        raise CycleLinkFailure("closed walk left unmatched edges")
    return cycles


def _check_disjoint_simple(cycles):
    # Edge-disjoint simple directed cycles.  Two cycles may share a vertex
    # (small facial cycles around different faces of one vertex use their
    # own in/out edge pair there), so only edge-disjointness is required.
    seen_edges = set()
    for cyc in cycles:
        verts = [u for (u, _) in cyc]
        if len(set(verts)) != len(verts):
            raise CycleLinkFailure(f"cycle revisits a vertex: {cyc}")
        for i, (u, v) in enumerate(cyc):
            if cyc[(i + 1) % len(cyc)][0] != v:
                raise CycleLinkFailure(f"edges do not chain: {cyc}")
        if seen_edges & set(cyc):
            raise CycleLinkFailure("cycles share an edge")
        seen_edges |= set(cyc)
