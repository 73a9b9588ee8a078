"""Completing a plane bipartite graph to a quadrangulation.

Two strategies are available:

* embedding-preserving (default): connect components inside the outer face,
  then repeatedly split faces of degree >= 6 (or with repeated boundary
  vertices) by a chord between opposite-colour boundary vertices at odd
  boundary distance, inserting a fresh degree-2 vertex when no chord is
  addable.
* re-embedding (``allow_reembed``): greedily add any opposite-colour edge
  that keeps the graph planar and re-embed; never adds vertices, which the
  1-bend route needs to stay inside its point budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, InvariantError
from .graph import MultiGraph, PlaneGraph, planar_embed, two_coloring

MAX_AUGMENT_ROUNDS = 100000


def is_star(g: MultiGraph) -> bool:
    """K_{1,k} for k >= 0 (single vertices and single edges included)."""
    vs = g.vertices
    if len(g.components()) != 1:
        return False
    if not g.edges:
        return len(vs) == 1
    for c in vs:
        if all(c in g.edges[e] for e in g.edges):
            return True
    return False


@dataclass
class AugmentationMap:
    added_vertices: list = field(default_factory=list)
    added_edges: list = field(default_factory=list)
    reembedded: bool = False


@dataclass
class Quadrangulation:
    pg: PlaneGraph
    black: set
    white: set
    s: int
    t: int

    def validate(self) -> None:
        g = self.pg.graph
        if not g.is_simple():
            raise InvariantError("quadrangulation must be simple")
        if len(g.edges) != 2 * len(g.vertices) - 4:
            raise InvariantError("quadrangulation edge count is off")
        for f in self.pg.faces():
            if f.degree != 4 or len(set(f.vertex_list())) != 4:
                raise InvariantError("face is not a simple quadrilateral")
        outer = set(self.pg.outer_face().vertex_list())
        if not (self.s in outer and self.t in outer and self.s != self.t):
            raise InvariantError("poles must be distinct outer-face vertices")
        if not (self.s in self.black and self.t in self.black):
            raise InvariantError("poles must both be black")


def _connect_components(pg: PlaneGraph, colors: dict, augmap: AugmentationMap) -> None:
    """Join all components with opposite-colour edges inside the outer face,
    flipping component colourings as needed."""
    while True:
        comps = pg.graph.components()
        if len(comps) <= 1:
            return
        comp_of = {}
        for i, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = i
        # representative attachment per component: an outer corner dart, or
        # the bare vertex when isolated
        attach: dict[int, object] = {}
        for w in pg.outer_face().walks if pg.graph.edges else []:
            i = comp_of[w[0][1]]
            attach.setdefault(i, w[0])
        for i, comp in enumerate(comps):
            if i not in attach:
                attach[i] = ("isolated", min(comp))
        ids = sorted(attach)
        a_id, b_id = ids[0], ids[1]

        def vertex_of(att):
            return att[1] if att[0] == "isolated" else att[2]

        va, vb = vertex_of(attach[a_id]), vertex_of(attach[b_id])
        if colors[va] == colors[vb]:
            for v in comps[b_id]:
                colors[v] = 1 - colors[v]
        da, db = attach[a_id], attach[b_id]
        if da[0] == "isolated" and db[0] == "isolated":
            e = pg.graph.add_edge(va, vb)
            pg.rotation[va] = [e]
            pg.rotation[vb] = [e]
            pg.outer_darts.add((e, va, vb))
        elif da[0] == "isolated" or db[0] == "isolated":
            dart, v_iso = (db, va) if da[0] == "isolated" else (da, vb)
            e = pg.graph.add_edge(dart[2], v_iso)
            pg._insert_after_entering_dart(dart, e)
            pg.rotation[v_iso] = [e]
        else:
            e = pg.insert_edge_at_corners(da, db)
        augmap.added_edges.append(e)
        # the outer walks of the two components merged; keep one pin each
        _normalize_outer_pins(pg)


def _normalize_outer_pins(pg: PlaneGraph) -> None:
    walks = [w for w in pg.outer_face().walks]
    pg.outer_darts = {w[0] for w in walks}


def _needs_work(face) -> bool:
    return face.degree >= 6 or (
        face.degree >= 2 and len(set(face.vertex_list())) != face.degree
    )


def _try_chord(pg: PlaneGraph, walk, colors: dict, augmap: AugmentationMap) -> bool:
    k = len(walk)
    verts = [d[1] for d in walk]
    for dist in range(3, k - 2, 2):
        for i in range(k):
            u = verts[i]
            v = verts[(i + dist) % k]
            if u == v or colors[u] == colors[v]:
                continue
            if pg.graph.edge_between(u, v) is not None:
                continue
            da = walk[(i - 1) % k]
            db = walk[(i + dist - 1) % k]
            e = pg.insert_edge_at_corners(da, db)
            augmap.added_edges.append(e)
            return True
    return False


def _insert_degree2_vertex(pg: PlaneGraph, walk, colors: dict, augmap: AugmentationMap) -> bool:
    k = len(walk)
    verts = [d[1] for d in walk]
    for dist in range(2, k - 1, 2):
        for i in range(k):
            u = verts[i]
            v = verts[(i + dist) % k]
            if u == v or colors[u] != colors[v]:
                continue
            da = walk[(i - 1) % k]
            db = walk[(i + dist - 1) % k]
            x, ids = pg.insert_vertex_in_face([da, db])
            colors[x] = 1 - colors[u]
            augmap.added_vertices.append(x)
            augmap.added_edges.extend(ids)
            return True
    return False


def _augment_preserving(pg: PlaneGraph, colors: dict, augmap: AugmentationMap,
                        allow_new_vertices: bool) -> None:
    for _ in range(MAX_AUGMENT_ROUNDS):
        bad = [f for f in pg.faces() if _needs_work(f)]
        if not bad:
            return
        face = max(bad, key=lambda f: f.degree)
        walk = face.walks[0]
        if _try_chord(pg, walk, colors, augmap):
            continue
        if not allow_new_vertices:
            raise InvariantError("face splitting is stuck without new vertices")
        if not _insert_degree2_vertex(pg, walk, colors, augmap):
            raise InvariantError("no chord and no degree-2 insertion applies")
    raise InvariantError("augmentation did not terminate")


def _augment_reembedding(g: MultiGraph, colors: dict, augmap: AugmentationMap) -> PlaneGraph:
    """Edge-maximalize on the same vertex set, re-embedding as needed."""
    g = g.copy()
    augmap.reembedded = True
    blacks = sorted(v for v in g.vertices if colors[v] == 0)
    whites = sorted(v for v in g.vertices if colors[v] == 1)
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from((u, v) for (u, v) in g.edges.values())
    progress = True
    while progress:
        progress = False
        for u in blacks:
            for v in whites:
                if nxg.has_edge(u, v):
                    continue
                nxg.add_edge(u, v)
                if nx.check_planarity(nxg, counterexample=False)[0]:
                    e = g.add_edge(u, v)
                    augmap.added_edges.append(e)
                    progress = True
                else:
                    nxg.remove_edge(u, v)
    return planar_embed(g)


def augment_to_quadrangulation(
    pg: PlaneGraph,
    allow_new_vertices: bool = True,
    allow_reembed: bool = False,
) -> tuple[Quadrangulation, AugmentationMap]:
    """Complete a simple bipartite plane graph to a quadrangulation.

    Stars cannot be completed and are rejected; route them to ``star_book``
    instead.  The embedding of the input is preserved unless the preserving
    strategy gets stuck and ``allow_reembed`` is set.
    """
    g = pg.graph
    if not g.is_simple() or g.has_loops():
        raise InputError("expected a simple loop-free graph")
    if is_star(g):
        raise InputError("stars are not subgraphs of quadrangulations")
    if len(g.vertices) < 4:
        raise InputError("a quadrangulation needs at least 4 vertices")
    black, white = two_coloring(g)
    colors = {v: 0 for v in black} | {v: 1 for v in white}
    augmap = AugmentationMap()
    work = pg.copy()
    _connect_components(work, colors, augmap)
    try:
        _augment_preserving(work, colors, augmap, allow_new_vertices)
    except InvariantError:
        if not allow_reembed:
            raise
        work = _augment_reembedding(work.graph, colors, augmap)
    work.validate()
    q = _finish(work, colors)
    q.validate()
    return q, augmap


def _finish(pg: PlaneGraph, colors: dict) -> Quadrangulation:
    outer = pg.outer_face().vertex_list()
    blacks_outer = sorted(v for v in set(outer) if colors[v] == 0)
    if len(blacks_outer) != 2:
        raise InvariantError("outer face does not have exactly two black vertices")
    s, t = blacks_outer
    return Quadrangulation(
        pg=pg,
        black={v for v, c in colors.items() if c == 0},
        white={v for v, c in colors.items() if c == 1},
        s=s,
        t=t,
    )
