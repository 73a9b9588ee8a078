"""Theorem-2 pipeline: plane bipartite graphs are POSH.

Route: complete to a quadrangulation, compute a 2-orientation by augmenting
paths, recover the unique separating decomposition whose orientation it is,
walk the equatorial line to get the spine, and close the alternating 2-page
book embedding into a one-sided Hamiltonian supergraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .book import LOWER, SPINE, UPPER, BookEmbedding, close_to_hamiltonian
from .errors import InputError, InvariantError
from .graph import MultiGraph, PlaneGraph
from .onesided import HamiltonianOrder, SideAssignment, check_one_sided
from .quadrangulate import (
    AugmentationMap,
    Quadrangulation,
    augment_to_quadrangulation,
    is_star,
)

RED = "red"
BLUE = "blue"


@dataclass
class TwoOrientation:
    tail: dict  # edge id -> tail vertex

    def head(self, g: MultiGraph, e: int) -> int:
        return g.other_end(e, self.tail[e])


def compute_2orientation(q: Quadrangulation) -> TwoOrientation:
    """Orient so every non-pole vertex has out-degree 2, poles 0.

    Kuhn-style augmenting paths on the edge/slot incidence; existence is
    guaranteed for quadrangulations, so failure is an internal error.
    """
    g = q.pg.graph
    slots = {v: 0 if v in (q.s, q.t) else 2 for v in g.vertices}
    assigned: dict[int, list[int]] = {v: [] for v in g.vertices}
    tail: dict[int, int] = {}

    def try_assign(e: int, seen: set) -> bool:
        u, v = g.edges[e]
        for cand in (min(u, v), max(u, v)):
            if cand in seen:
                continue
            seen.add(cand)
            if len(assigned[cand]) < slots[cand]:
                assigned[cand].append(e)
                tail[e] = cand
                return True
        for cand in (min(u, v), max(u, v)):
            for other in list(assigned[cand]):
                ou, ov = g.edges[other]
                alt = ov if ou == cand else ou
                if alt in seen:
                    continue
                seen.add(alt)
                if len(assigned[alt]) < slots[alt]:
                    assigned[cand].remove(other)
                    assigned[alt].append(other)
                    tail[other] = alt
                    assigned[cand].append(e)
                    tail[e] = cand
                    return True
        return False

    # simple two-phase Kuhn: direct fills first, then reassignments
    pending = []
    for e in sorted(g.edges):
        if not try_assign(e, set()):
            pending.append(e)
    for e in pending:
        if not _augment(g, slots, assigned, tail, e):
            raise InvariantError("2-orientation augmenting path search failed")
    orientation = TwoOrientation(tail=tail)
    validate_2orientation(q, orientation)
    return orientation


def _augment(g, slots, assigned, tail, e0) -> bool:
    """BFS augmenting path over alternating edge/vertex states."""
    from collections import deque

    parent: dict[int, tuple] = {}
    seen_v: set[int] = set()
    queue = deque()
    for v in g.edges[e0]:
        if v not in seen_v:
            seen_v.add(v)
            parent[v] = (None, e0)
            queue.append(v)
    end = None
    while queue and end is None:
        v = queue.popleft()
        if len(assigned[v]) < slots[v]:
            end = v
            break
        for other in assigned[v]:
            ou, ov = g.edges[other]
            alt = ov if ou == v else ou
            if alt not in seen_v:
                seen_v.add(alt)
                parent[alt] = (v, other)
                queue.append(alt)
    if end is None:
        return False
    v = end
    while True:
        prev_v, via = parent[v]
        if prev_v is None:
            assigned[v].append(via)
            tail[via] = v
            return True
        assigned[prev_v].remove(via)
        assigned[v].append(via)
        tail[via] = v
        v = prev_v


def validate_2orientation(q: Quadrangulation, o: TwoOrientation) -> None:
    g = q.pg.graph
    if set(o.tail) != set(g.edges):
        raise InvariantError("orientation must cover every edge")
    out = {v: 0 for v in g.vertices}
    for e, v in o.tail.items():
        if v not in g.edges[e]:
            raise InvariantError("tail is not an endpoint")
        out[v] += 1
    for v in g.vertices:
        want = 0 if v in (q.s, q.t) else 2
        if out[v] != want:
            raise InvariantError(f"out-degree {out[v]} != {want} at {v}")


@dataclass
class SeparatingDecomposition:
    q: Quadrangulation
    orientation: TwoOrientation
    color: dict  # edge id -> RED | BLUE

    def red_edges(self) -> list[int]:
        return [e for e, c in self.color.items() if c == RED]

    def blue_edges(self) -> list[int]:
        return [e for e, c in self.color.items() if c == BLUE]


def derive_separating_decomposition(
    q: Quadrangulation, o: TwoOrientation
) -> SeparatingDecomposition:
    """Colour the 2-orientation; the bijection of separating decompositions
    with 2-orientations makes the colouring unique, so local propagation from
    the poles determines everything."""
    g = q.pg.graph
    pg = q.pg
    out_edges: dict[int, list[int]] = {v: [] for v in g.vertices}
    for e, v in o.tail.items():
        out_edges[v].append(e)

    color: dict[int, str] = {}
    queue: list[tuple[int, str]] = []

    def set_color(e: int, c: str) -> None:
        if e in color:
            if color[e] != c:
                raise InvariantError("colour propagation conflict")
            return
        color[e] = c
        queue.append((e, c))

    for e in g.incident(q.s):
        if o.tail[e] == q.s:
            raise InvariantError("pole s has an outgoing edge")
        set_color(e, RED)
    for e in g.incident(q.t):
        if o.tail[e] == q.t:
            raise InvariantError("pole t has an outgoing edge")
        set_color(e, BLUE)

    resolved: set[int] = set()

    def resolve(v: int) -> None:
        """Once one out-colour of v is known, colour all ends at v.

        Incoming edges take the colour of the clockwise-previous outgoing
        edge at white vertices and of the clockwise-next one at black
        vertices; that is exactly the interval condition read locally.
        """
        if v in resolved or v in (q.s, q.t):
            return
        o1, o2 = out_edges[v]
        c1 = color.get(o1)
        c2 = color.get(o2)
        if c1 is None and c2 is None:
            return
        if c1 is None:
            set_color(o1, RED if c2 == BLUE else BLUE)
        elif c2 is None:
            set_color(o2, RED if c1 == BLUE else BLUE)
        elif c1 == c2:
            raise InvariantError("both outgoing edges got the same colour")
        resolved.add(v)
        cw = pg.cw_rotation(v)
        k = len(cw)
        outs = {o1, o2}
        is_white = v in q.white
        for idx, e in enumerate(cw):
            if e in outs:
                continue
            if is_white:
                j = (idx - 1) % k
                while cw[j] not in outs:
                    j = (j - 1) % k
            else:
                j = (idx + 1) % k
                while cw[j] not in outs:
                    j = (j + 1) % k
            set_color(e, color[cw[j]])

    # propagate: colouring an edge fixes its tail's split, which colours all
    # ends at the tail; incoming colours fix heads through the sector rule
    guard = 0
    while queue:
        guard += 1
        if guard > 10 * len(g.edges) + 100:
            raise InvariantError("colour propagation did not converge")
        e, c = queue.pop()
        u = o.tail[e]
        resolve(u)
        v = g.other_end(e, u)
        if v not in (q.s, q.t) and v not in resolved:
            # invert the sector rule at the head
            o1, o2 = out_edges[v]
            if o1 not in color and o2 not in color:
                cw = pg.cw_rotation(v)
                k = len(cw)
                idx = cw.index(e)
                if v in q.white:
                    j = (idx - 1) % k
                    while cw[j] not in (o1, o2):
                        j = (j - 1) % k
                else:
                    j = (idx + 1) % k
                    while cw[j] not in (o1, o2):
                        j = (j + 1) % k
                set_color(cw[j], c)
            resolve(v)
    if set(color) != set(g.edges):
        raise InvariantError("colour propagation did not reach every edge")
    sd = SeparatingDecomposition(q=q, orientation=o, color=color)
    validate_separating_decomposition(sd)
    return sd


def validate_separating_decomposition(sd: SeparatingDecomposition) -> None:
    q, o = sd.q, sd.orientation
    g = q.pg.graph
    for e in g.incident(q.s):
        if sd.color[e] != RED:
            raise InvariantError("edges at s must be incoming red")
    for e in g.incident(q.t):
        if sd.color[e] != BLUE:
            raise InvariantError("edges at t must be incoming blue")
    for v in g.vertices:
        if v in (q.s, q.t):
            continue
        cw = q.pg.cw_rotation(v)
        cols = [sd.color[e] for e in cw]
        if RED not in cols or BLUE not in cols:
            raise InvariantError(f"vertex {v} lacks a colour interval")
        changes = sum(1 for i in range(len(cols)) if cols[i] != cols[(i + 1) % len(cols)])
        if changes != 2:
            raise InvariantError(f"colours at {v} do not form two intervals")
        for col in (RED, BLUE):
            idxs = [i for i, c in enumerate(cols) if c == col]
            k = len(cols)
            # rotate so the interval is contiguous from its first element
            start = next(
                i for i in idxs if cols[(i - 1) % k] != col
            )
            interval = [cw[(start + d) % k] for d in range(len(idxs))]
            outgoing = [e for e in interval if o.tail[e] == v]
            if len(outgoing) != 1:
                raise InvariantError(f"vertex {v} needs one outgoing {col} edge")
            if v in q.white and interval[0] != outgoing[0]:
                raise InvariantError(f"white {v}: outgoing {col} must be cw-first")
            if v in q.black and interval[-1] != outgoing[0]:
                raise InvariantError(f"black {v}: outgoing {col} must be cw-last")
    _check_tree(sd, RED, q.s, q.t)
    _check_tree(sd, BLUE, q.t, q.s)


def _check_tree(sd: SeparatingDecomposition, col: str, root: int, excluded: int) -> None:
    g = sd.q.pg.graph
    o = sd.orientation
    parent = {}
    for e, c in sd.color.items():
        if c != col:
            continue
        u = o.tail[e]
        if u in parent:
            raise InvariantError(f"vertex {u} has two outgoing {col} edges")
        parent[u] = g.other_end(e, u)
    expect = set(g.vertices) - {root, excluded}
    if set(parent) != expect:
        raise InvariantError(f"{col} tree does not span the non-pole vertices")
    for v in expect:
        seen = {v}
        cur = v
        while cur != root:
            cur = parent.get(cur, None)
            if cur is None or cur in seen:
                raise InvariantError(f"{col} edges do not form a tree into {root}")
            seen.add(cur)


@dataclass
class SpineOrder:
    order: list  # s = v_1 .. v_n = t
    pages: dict  # edge id -> UPPER (red) | LOWER (blue)


def equatorial_spine(sd: SeparatingDecomposition) -> SpineOrder:
    """Spine of the alternating 2-page book embedding.

    The red tree is traversed from s with children in clockwise order after
    the parent edge (the outer-face gap at the root); black vertices are
    emitted on entry, white on exit, and t closes the sequence.  This is the
    vertex order in which the equatorial line meets the quadrangulation, and
    it is validated purely through the output invariants.
    """
    q, o = sd.q, sd.orientation
    g = q.pg.graph
    pg = q.pg

    red_parent_edge: dict[int, int] = {}
    for e, c in sd.color.items():
        if c == RED:
            u = o.tail[e]
            if u != q.s:
                red_parent_edge[u] = e

    def children_after(v: int, anchor_edge: int) -> list[int]:
        # the parent edge is outgoing at v and drops out via the tail test;
        # at the root the anchor is the outer-corner edge and may itself be
        # a child edge, in which case it is the clockwise-last child
        cw = pg.cw_rotation(v)
        k = len(cw)
        i = cw.index(anchor_edge)
        out = []
        for d in range(1, k + 1):
            e = cw[(i + d) % k]
            if sd.color[e] == RED and o.tail[e] != v:
                out.append(o.tail[e])
        return out

    # anchor at the root: the outer-face corner
    root_dart = None
    for w in pg.outer_face().walks:
        for d in w:
            if d[2] == q.s:
                root_dart = d
                break
    if root_dart is None:
        raise InvariantError("pole s is not on the outer face")
    order: list = []
    seen: set = set()

    def visit(v: int, anchor: int) -> None:
        if v in seen:
            raise InvariantError("red tree traversal revisited a vertex")
        seen.add(v)
        if v in q.black:
            order.append(v)
        for c in children_after(v, anchor):
            visit(c, red_parent_edge[c])
        if v in q.white:
            order.append(v)

    visit(q.s, root_dart[0])
    order.append(q.t)
    if sorted(order) != sorted(g.vertices):
        raise InvariantError("equatorial order is not a permutation")
    pages = {e: (UPPER if c == RED else LOWER) for e, c in sd.color.items()}
    spine = SpineOrder(order=order, pages=pages)
    validate_spine(sd, spine)
    return spine


def validate_spine(sd: SeparatingDecomposition, spine: SpineOrder) -> None:
    """Alternating-tree and one-sidedness certificate of the book layout."""
    q = sd.q
    g = q.pg.graph
    pos = {v: i for i, v in enumerate(spine.order)}
    if spine.order[0] != q.s or spine.order[-1] != q.t:
        raise InvariantError("spine must run from s to t")
    for v in g.vertices:
        for e in g.incident(v):
            w = g.other_end(e, v)
            if pos[w] > pos[v]:
                continue
            col = sd.color[e]
            if v in q.black and col == RED:
                raise InvariantError("black vertex with a red edge to the left")
            if v in q.white and col == BLUE:
                raise InvariantError("white vertex with a blue edge to the left")
    book = BookEmbedding(list(spine.order), g.copy(), dict(spine.pages))
    book.check_valid()  # crossing-free pages
    for tree_col in (RED, BLUE):
        for v in g.vertices:
            sides = set()
            for e in g.incident(v):
                if sd.color[e] != tree_col:
                    continue
                w = g.other_end(e, v)
                sides.add(pos[w] > pos[v])
            if len(sides) > 1:
                raise InvariantError(
                    f"{tree_col} tree is not alternating at vertex {v}"
                )


@dataclass
class BipartitePoshResult:
    supergraph: PlaneGraph  # Q+ with spine and closing edges
    ho: HamiltonianOrder
    sa: SideAssignment
    book: BookEmbedding  # of Q+
    quadrangulation: Quadrangulation
    orientation: TwoOrientation
    decomposition: SeparatingDecomposition
    spine: SpineOrder
    augmap: AugmentationMap
    original_vertices: list
    original_edges: list


def star_book(g: MultiGraph, pg: PlaneGraph | None = None) -> BookEmbedding:
    """Direct book embedding of a star: centre first, leaves following, all
    arcs on one page (rotation order respected when an embedding is given)."""
    if not is_star(g):
        raise InputError("star handler got a non-star")
    if len(g.vertices) == 1:
        return BookEmbedding(list(g.vertices), g.copy(), {})
    center = next(c for c in sorted(g.vertices) if all(c in g.edges[e] for e in g.edges))
    if pg is not None:
        leaf_edges = list(pg.rotation[center])
    else:
        leaf_edges = sorted(g.incident(center))
    spine = [center] + [g.other_end(e, center) for e in leaf_edges]
    pages = {}
    for i, e in enumerate(leaf_edges):
        pages[e] = SPINE if i == 0 else UPPER
    return BookEmbedding(spine, g.copy(), pages)


def degenerate_book(g: MultiGraph) -> BookEmbedding:
    """Books for graphs with at most 2 vertices."""
    vs = sorted(g.vertices)
    pages = {e: SPINE for e in g.edges}
    return BookEmbedding(vs, g.copy(), pages)


def _tiny_book(g: MultiGraph) -> BookEmbedding:
    """Books for bipartite graphs on at most 3 vertices (per component the
    pieces are isolated vertices, edges, or paths)."""
    spine: list = []
    pages: dict = {}
    for comp in g.components():
        sub = sorted(comp)
        if len(sub) <= 2:
            spine.extend(sub)
        else:
            center = next(v for v in sub if g.degree(v) == 2)
            ends = sorted(v for v in sub if v != center)
            spine.extend([ends[0], center, ends[1]])
    for e in g.edges:
        pages[e] = SPINE
    return BookEmbedding(spine, g.copy(), pages)


def bipartite_posh(pg: PlaneGraph, allow_reembed: bool = False) -> BipartitePoshResult:
    """Full Theorem-2 pipeline for a simple bipartite plane graph."""
    g = pg.graph
    if not g.is_simple() or g.has_loops():
        raise InputError("expected a simple loop-free graph")
    orig_vertices = sorted(g.vertices)
    orig_edges = sorted(g.edges)

    if is_star(g) or len(g.vertices) < 4:
        from .graph import two_coloring

        two_coloring(g)  # raises if not bipartite
        book = star_book(g, pg) if is_star(g) else _tiny_book(g)
        return _finish_pipeline(book, None, None, None, None, None, orig_vertices, orig_edges)

    q, augmap = augment_to_quadrangulation(pg, allow_new_vertices=not allow_reembed,
                                           allow_reembed=allow_reembed)
    o = compute_2orientation(q)
    sd = derive_separating_decomposition(q, o)
    spine = equatorial_spine(sd)
    book = BookEmbedding(list(spine.order), q.pg.graph.copy(), dict(spine.pages))
    return _finish_pipeline(book, q, o, sd, spine, augmap, orig_vertices, orig_edges)


def _finish_pipeline(book, q, o, sd, spine, augmap, orig_vertices, orig_edges):
    closed, _added = close_to_hamiltonian(book)
    plane = closed.to_planegraph()
    ho = HamiltonianOrder(list(closed.spine))
    if len(closed.spine) >= 2:
        sa = check_one_sided(plane, ho)
        if len(closed.spine) >= 3:
            rev = HamiltonianOrder(list(reversed(closed.spine)))
            check_one_sided(plane, rev)  # §4 closing remark must hold too
    else:
        sa = SideAssignment(inner=set(), outer=set(closed.spine))
    return BipartitePoshResult(
        supergraph=plane,
        ho=ho,
        sa=sa,
        book=closed,
        quadrangulation=q,
        orientation=o,
        decomposition=sd,
        spine=spine,
        augmap=augmap if augmap is not None else AugmentationMap(),
        original_vertices=orig_vertices,
        original_edges=orig_edges,
    )
