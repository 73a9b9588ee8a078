"""Seeded random graph generators for tests and batch runs.

Bipartite plane graphs come from growing a random quadrangulation and
deleting edges; subcubic planar graphs from the dual of a grown random
triangulation (a cubic planar graph) with random edge deletions.
"""

from __future__ import annotations

import random

from .errors import InvariantError
from .graph import MultiGraph, PlaneGraph, planar_embed


def random_quadrangulation(n_target: int, rng: random.Random) -> PlaneGraph:
    """Grow a quadrangulation from C4 by splitting faces with a new degree-2
    vertex joined to an opposite pair."""
    g = MultiGraph(vertices=[0, 1, 2, 3])
    for u, v in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        g.add_edge(u, v)
    pg = planar_embed(g)
    while len(pg.graph.vertices) < n_target:
        faces = pg.faces()
        face = faces[rng.randrange(len(faces))]
        walk = face.walks[0]
        i = rng.randrange(4)
        da, db = walk[i - 1], walk[(i + 1) % 4]
        if da[2] == db[2]:
            continue
        pg.insert_vertex_in_face([da, db])
    pg.validate()
    return pg


def random_plane_bipartite(n_target: int, rng: random.Random,
                           keep_prob: float = 0.8) -> PlaneGraph:
    """Random plane bipartite graph on <= n_target vertices."""
    pg = random_quadrangulation(max(4, n_target), rng)
    g = pg.graph
    for e in sorted(g.edges):
        if rng.random() > keep_prob:
            if any(d[0] == e for d in pg.outer_darts):
                continue
            pg.remove_edge(e)
    # drop isolated vertices with probability 1/2 to vary shapes
    for v in sorted(g.vertices):
        if not g.incident(v) and rng.random() < 0.5:
            pg.remove_vertex(v)
    if not pg.graph.vertices:
        pg.graph.add_vertex(0)
        pg.rotation[0] = []
    from .graph import _pin_largest_outer_faces

    if pg.graph.edges:
        _pin_largest_outer_faces(pg)
    pg.validate()
    return pg


def random_triangulation(n_target: int, rng: random.Random) -> PlaneGraph:
    """Random stacked triangulation grown by inserting vertices in faces."""
    g = MultiGraph(vertices=[0, 1, 2])
    for u, v in [(0, 1), (1, 2), (2, 0)]:
        g.add_edge(u, v)
    pg = planar_embed(g)
    while len(pg.graph.vertices) < n_target:
        faces = pg.faces()
        face = faces[rng.randrange(len(faces))]
        walk = face.walks[0]
        pg.insert_vertex_in_face(list(walk))
    pg.validate()
    return pg


def dual_graph(pg: PlaneGraph) -> tuple[MultiGraph, dict, dict]:
    """Dual multigraph; returns (dual, face_of_dual_vertex, primal_edge_of_dual_edge)."""
    walks = pg.face_walks()
    dart_walk = {}
    for i, w in enumerate(walks):
        for d in w:
            dart_walk[d] = i
    dual = MultiGraph(vertices=list(range(len(walks))))
    primal_of = {}
    for e, (u, v) in sorted(pg.graph.edges.items()):
        a = dart_walk[(e, u, v)]
        b = dart_walk[(e, v, u)]
        de = dual.add_edge(a, b)
        primal_of[de] = e
    face_of = {i: w for i, w in enumerate(walks)}
    return dual, face_of, primal_of


def random_subcubic_planar(n_target: int, rng: random.Random,
                           keep_prob: float = 0.85) -> MultiGraph:
    """Random subcubic planar graph: dual of a random triangulation (cubic)
    with random edge deletions."""
    # a triangulation on k vertices has 2k-4 faces; invert for the dual size
    k = max(4, (n_target + 4) // 2)
    tri = random_triangulation(k, rng)
    cubic, _, _ = dual_graph(tri)
    if any(len(cubic.incident(v)) != 3 for v in cubic.vertices):
        raise InvariantError("triangulation dual is not cubic")
    g = cubic
    for e in sorted(g.edges):
        if rng.random() > keep_prob:
            g.remove_edge(e)
    for v in sorted(g.vertices):
        if not g.incident(v) and rng.random() < 0.5:
            g.remove_vertex(v)
    if not g.vertices:
        g.add_vertex(0)
    if not g.is_simple():
        # duals of stacked triangulations may have parallel edges only if the
        # triangulation had multi-edges; it cannot, so this is defensive
        raise InvariantError("cubic dual is unexpectedly non-simple")
    return g


def random_planar(n_target: int, rng: random.Random, keep_prob: float = 0.8) -> MultiGraph:
    """Random connected planar graph from a triangulation with deletions."""
    pg = random_triangulation(max(3, n_target), rng)
    g = pg.graph.copy()
    for e in sorted(g.edges):
        if rng.random() > keep_prob:
            u, v = g.edges[e]
            g.remove_edge(e)
            # keep it connected for nicer downstream defaults
            if not _connected(g):
                g.add_edge(u, v, e)
    return g


def _connected(g: MultiGraph) -> bool:
    return len(g.components()) <= 1
