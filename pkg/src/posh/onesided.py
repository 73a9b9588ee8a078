"""One-sided Hamiltonian cycles and the embedding onto H_n.

``check_one_sided`` tests the rotation-consecutiveness condition on a plane
graph and classifies vertices into V_I / V_O.  ``embed_on_Hn`` then places
v_i on p_i (V_I) or q_i (V_O); the induction behind that placement can be
asserted step by step in debug mode.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .drawing import Drawing, verify_drawing
from .errors import InputError, InvariantError, OneSidedViolation, StructuralError
from .geometry import LEFT, ON, orientation, segments_cross
from .graph import MultiGraph, PlaneGraph
from .pointset import PointSet

DEBUG_ASSERT_LIMIT = 16  # full inductive assertions are cubic; keep them small


@dataclass
class HamiltonianOrder:
    order: list  # v_1 .. v_n
    special_edge: tuple | None = None  # (v_n, v_1)

    def __post_init__(self):
        if self.special_edge is None and len(self.order) >= 2:
            self.special_edge = (self.order[-1], self.order[0])


@dataclass
class SideAssignment:
    inner: set = field(default_factory=set)  # V_I: back-edges inside D
    outer: set = field(default_factory=set)  # V_O


def _left_sector_ends(pg: PlaneGraph, v, e_in: int, e_out: int) -> list[int]:
    """Edge ids strictly CCW between e_out and e_in at v (the left side of a
    traversal arriving via e_in and leaving via e_out)."""
    rot = pg.rotation[v]
    i = rot.index(e_out)
    out = []
    k = (i + 1) % len(rot)
    while rot[k] != e_in:
        out.append(rot[k])
        k = (k + 1) % len(rot)
    return out


def _cycle_edges(pg: PlaneGraph, order: list) -> list[int]:
    n = len(order)
    cyc = []
    for i in range(n):
        u, v = order[i], order[(i + 1) % n]
        e = pg.graph.edge_between(u, v)
        if e is None:
            raise InputError(f"order is not a Hamiltonian cycle: missing edge ({u},{v})")
        cyc.append(e)
    return cyc


def oriented_ccw(pg: PlaneGraph, order: list) -> bool:
    """Does the cycle traverse the bounded disk D counter-clockwise, i.e. is
    the outer face not among the faces left of the traversal?"""
    n = len(order)
    cyc = _cycle_edges(pg, order)
    walks = pg.face_walks()
    dart_walk = {}
    for i, w in enumerate(walks):
        for d in w:
            dart_walk[d] = i
    outer_ids = {dart_walk[d] for d in pg.outer_darts}
    left_ids = set()
    for i in range(n):
        u, v = order[i], order[(i + 1) % n]
        left_ids.add(dart_walk[(cyc[i], u, v)])
    return not (left_ids & outer_ids)


def check_one_sided(pg: PlaneGraph, ho: HamiltonianOrder) -> SideAssignment:
    """Validate one-sidedness; returns the V_I/V_O split or raises.

    Vertices whose strict back-edges (i < j-1) lie inside D form V_I; all
    others, including vertices with no strict back-edges, default to V_O.
    """
    order = ho.order
    n = len(order)
    g = pg.graph
    if sorted(order) != sorted(g._adj):
        raise InputError("order must be a permutation of the vertex set")
    if not g.is_simple():
        raise InputError("one-sidedness is defined on simple plane graphs here")
    if n == 1:
        return SideAssignment(inner=set(), outer={order[0]})
    if n == 2:
        if g.edge_between(order[0], order[1]) is None:
            raise InputError("missing edge in 2-vertex order")
        return SideAssignment(inner=set(), outer=set(order))

    cyc = _cycle_edges(pg, order)
    special = cyc[-1]
    on_outer = any(d[0] == special for w in pg.outer_face().walks for d in w)
    if not on_outer:
        raise InputError("special edge is not incident to the outer face")

    if not oriented_ccw(pg, order):
        pg = pg.mirror()

    posn = {v: i for i, v in enumerate(order)}
    inner: set = set()
    for j in range(1, n):
        v = order[j]
        e_in = cyc[j - 1]
        e_out = cyc[j]  # for j = n-1 this is the special edge
        induced_limit = j + 1 if j < n - 1 else n - 1
        rot = [
            e
            for e in pg.rotation[v]
            if posn[g.other_end(e, v)] <= induced_limit
        ]
        ia, ib = rot.index(e_in), rot.index(e_out)
        if not (abs(ia - ib) == 1 or abs(ia - ib) == len(rot) - 1):
            raise OneSidedViolation(
                f"cycle edges not rotation-consecutive at position {j + 1}", index=j + 1
            )
        left = _left_sector_ends(pg, v, e_in, e_out)
        for e in g.incident(v):
            w = g.other_end(e, v)
            if posn[w] < j - 1:
                if e in left:
                    inner.add(v)
    outer = set(order) - inner
    return SideAssignment(inner=inner, outer=outer)


# -- geometric helpers for the inductive assertions ---------------------------


def _angular_rotation(center, ends: list[tuple]) -> list:
    """Sort (key, point) pairs CCW-from-east around center, exactly."""

    def half(p):
        dx, dy = p[0] - center[0], p[1] - center[1]
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a, b):
        pa, pb = a[1], b[1]
        ha, hb = half(pa), half(pb)
        if ha != hb:
            return -1 if ha < hb else 1
        s = orientation(center, pa, pb)
        if s == LEFT:
            return -1
        if s == ON:
            return 0
        return 1

    return [k for k, _ in sorted(ends, key=functools.cmp_to_key(cmp))]


def drawing_planegraph(g: MultiGraph, d: Drawing) -> PlaneGraph:
    """PlaneGraph of a crossing-free straight-line drawing, with true CCW
    rotations and the outer face pinned geometrically."""
    rotation = {}
    for v in g._adj:
        ends = [(e, d.placement[g.other_end(e, v)]) for e in g.incident(v)]
        rotation[v] = _angular_rotation(d.placement[v], ends)
    pg = PlaneGraph(g.copy(), rotation)
    pg.outer_darts = set()
    for comp in g.components():
        with_edges = [v for v in comp if g.incident(v)]
        if not with_edges:
            continue
        v0 = min(with_edges, key=lambda v: (d.placement[v][0], d.placement[v][1]))
        # no point lies west of v0, so the outer face covers direction 180
        # there; the corner holding it is entered along the first end of the
        # lower angular half (wrapping to the first end overall)
        rot = pg.rotation[v0]
        x0, y0 = d.placement[v0]

        def lower_half(e):
            wx, wy = d.placement[g.other_end(e, v0)]
            dx, dy = wx - x0, wy - y0
            return not (dy > 0 or (dy == 0 and dx > 0))

        idx = next((i for i, e in enumerate(rot) if lower_half(e)), 0)
        b = rot[idx]
        pg.outer_darts.add((b, g.other_end(b, v0), v0))
    return pg


def prefix_outer_walk(pg: PlaneGraph, order: list, j: int) -> list:
    """Outer face walk of the plane subgraph induced by order[:j+1], found by
    widening an outer corner of the host graph at v_1."""
    g = pg.graph
    keep = set(order[: j + 1])
    v1 = order[0]
    sub_rot = {
        v: [e for e in pg.rotation[v] if g.other_end(e, v) in keep]
        for v in keep
    }

    def next_dart(dart):
        e, u, v = dart
        rot = sub_rot[v]
        i = rot.index(e)
        f = rot[(i - 1) % len(rot)]
        return (f, v, g.other_end(f, v))

    # an outer corner of the host at v1: entering dart d_in with next = d_out
    d_in = None
    for w in pg.outer_face().walks:
        for d in w:
            if d[2] == v1:
                d_in = d
                break
        if d_in:
            break
    if d_in is None:
        raise StructuralError("v_1 is not on the outer face")
    e_a = d_in[0]
    rot_full = pg.rotation[v1]
    ia = rot_full.index(e_a)
    deg = len(rot_full)
    e_enter = None
    for step in range(deg):
        cand = rot_full[(ia + step) % deg]
        if cand in sub_rot[v1]:
            e_enter = cand
            break
    dart0 = (e_enter, g.other_end(e_enter, v1), v1)
    walk = [dart0]
    cur = next_dart(dart0)
    while cur != dart0:
        walk.append(cur)
        cur = next_dart(cur)
    return walk


def _cyclic_eq(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    bb = b + b
    return any(bb[i : i + len(a)] == a for i in range(len(b)))


def _reference_for_drawing(pg: PlaneGraph, geo: PlaneGraph) -> PlaneGraph:
    """The reference embedding aligned with a realized drawing.

    The realized drawing must have the same rotation system as the reference
    up to one global reflection; its outer face is then some face of the
    reference sphere embedding, to which the reference gets re-pinned.  The
    construction may legitimately roll the sphere, so the realized outer face
    need not be the pinned one.
    """
    outer_geo = geo.outer_face().walks[0]
    for cand in (pg, pg.mirror()):
        if not all(
            _cyclic_eq(geo.rotation[v], cand.rotation[v]) for v in pg.graph._adj
        ):
            continue
        for w in cand.face_walks():
            if _same_cyclic(w, outer_geo):
                ref = cand.copy()
                ref.outer_darts = {w[0]}
                return ref
    raise InvariantError("drawing does not realize the reference embedding")


def assert_embedding_induction(
    pg: PlaneGraph, ho: HamiltonianOrder, sa: SideAssignment, ps: PointSet, placement
) -> None:
    """Inductive properties of the placement: every prefix drawing is plane,
    has the same outer walk as the combinatorial prefix, and its boundary
    vertices see the remaining chain points."""
    order = ho.order
    n = len(order)
    g = pg.graph
    full_geo = drawing_planegraph(g, Drawing(dict(placement)))
    ref = _reference_for_drawing(pg, full_geo)
    for j in range(1, n):
        keep = order[: j + 1]
        sub = g.induced(keep)
        d = Drawing({v: placement[v] for v in keep})
        report = verify_drawing(sub, d)
        if not report.crossing_free:
            raise InvariantError(f"prefix drawing {j + 1} has crossings: {report.crossing_pairs[:3]}")
        walk_comb = prefix_outer_walk(ref, order, j)
        geo = drawing_planegraph(sub, d)
        walk_geo = geo.outer_face().walks[0]
        if not _same_cyclic(walk_comb, walk_geo):
            raise InvariantError(f"outer walks differ at prefix {j + 1}")
        # boundary split: the CCW boundary (reverse of the outer face walk)
        # runs v_1 .. v_i along the right part first
        verts = [d0[1] for d0 in walk_comb][::-1]
        k1 = verts.index(order[0])
        verts = verts[k1:] + verts[:k1]
        vi = order[j]
        k2 = verts.index(vi)
        right_part = verts[: k2 + 1]
        left_part = [verts[0]] + verts[k2:][::-1]
        segs = []
        for e in sub.edges:
            u, w = sub.edges[e]
            segs.append((e, placement[u], placement[w]))
        for part, point_of in ((left_part, ps.p), (right_part, ps.q)):
            for v in part:
                pv = placement[v]
                for k in range(j + 2, n + 1):
                    target = point_of(k)
                    for e, a, b in segs:
                        if segments_cross(pv, target, a, b):
                            raise InvariantError(
                                f"visibility fails at prefix {j + 1}: {v} -> {k}"
                            )


def _same_cyclic(w1: list, w2: list) -> bool:
    if len(w1) != len(w2):
        return False
    if not w1:
        return True
    s1 = list(w1)
    s2 = list(w2) + list(w2)
    for i in range(len(w2)):
        if s2[i : i + len(s1)] == s1:
            return True
    return False


def embed_on_Hn(
    pg: PlaneGraph,
    sub: MultiGraph | None,
    ho: HamiltonianOrder,
    sa: SideAssignment,
    ps: PointSet,
    debug: bool | None = None,
) -> Drawing:
    """Theorem-1 placement: v_i at p_i if v_i in V_I else q_i.

    The returned drawing places every vertex of the supergraph; restriction
    to ``sub`` (a spanning subgraph) stays crossing-free.  The final exact
    verification always runs; inductive step assertions run in debug mode
    (default: only for small n).
    """
    order = ho.order
    n = len(order)
    if ps.n < n:
        raise InputError(f"point set H_{ps.n} too small for n={n}")
    placement = {}
    for i, v in enumerate(order, start=1):
        placement[v] = ps.p(i) if v in sa.inner else ps.q(i)
    if debug is None:
        debug = n <= DEBUG_ASSERT_LIMIT
    if debug and n >= 3:
        assert_embedding_induction(pg, ho, sa, ps, placement)
    drawing = Drawing(placement)
    report = verify_drawing(pg.graph, drawing)
    if not report.crossing_free:
        raise InvariantError(
            f"embedding produced crossings (invalid side assignment?): "
            f"{report.crossing_pairs[:5]}"
        )
    if sub is not None:
        rep = verify_drawing(sub, drawing.restricted_to(sub._adj, sub.edges))
        if not rep.crossing_free:
            raise InvariantError("restriction to subgraph has crossings")
    return drawing
