"""Planar multigraph and combinatorial embedding (rotation system) machinery.

Conventions
-----------
* Rotations are stored counter-clockwise; CCW is the positive orientation.
* A dart is a directed edge occurrence ``(edge_id, tail, head)``.
* Faces are traced with the face on the left of each dart: the successor of
  dart (e, u, v) leaves v along the edge immediately clockwise of e at v.
  Inner faces come out counter-clockwise, the outer face clockwise.
* The outer face of each connected component is pinned by one representative
  dart in ``outer_darts`` (isolated vertices need none).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import (
    InputError,
    InvariantError,
    NonPlanarError,
    NotBipartiteError,
    StructuralError,
)

Dart = tuple  # (edge_id, tail, head)


class MultiGraph:
    """Undirected multigraph; loops representable but rejected by pipelines."""

    def __init__(self, vertices=(), edges=()):
        self._adj: dict[int, list[int]] = {}
        self.edges: dict[int, tuple[int, int]] = {}
        self._next_vertex = 0
        self._next_edge = 0
        for v in vertices:
            self.add_vertex(v)
        for item in edges:
            if len(item) == 3:
                e, u, v = item
                self.add_edge(u, v, e)
            else:
                u, v = item
                self.add_edge(u, v)

    # -- construction -----------------------------------------------------

    def add_vertex(self, v: int | None = None) -> int:
        if v is None:
            v = self._next_vertex
        if v in self._adj:
            raise InputError(f"duplicate vertex id {v}")
        self._adj[v] = []
        self._next_vertex = max(self._next_vertex, v + 1)
        return v

    def add_edge(self, u: int, v: int, e: int | None = None) -> int:
        if u not in self._adj or v not in self._adj:
            raise InputError(f"edge ({u},{v}) references a missing vertex")
        if e is None:
            e = self._next_edge
        if e in self.edges:
            raise InputError(f"duplicate edge id {e}")
        self.edges[e] = (u, v)
        self._adj[u].append(e)
        if v != u:
            self._adj[v].append(e)
        self._next_edge = max(self._next_edge, e + 1)
        return e

    def remove_edge(self, e: int) -> None:
        u, v = self.edges.pop(e)
        self._adj[u].remove(e)
        if v != u:
            self._adj[v].remove(e)

    def remove_vertex(self, v: int) -> None:
        for e in list(self._adj[v]):
            self.remove_edge(e)
        del self._adj[v]

    def copy(self) -> "MultiGraph":
        g = MultiGraph()
        g._adj = {v: list(es) for v, es in self._adj.items()}
        g.edges = dict(self.edges)
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    # -- queries ----------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return list(self._adj)

    def has_vertex(self, v) -> bool:
        return v in self._adj

    def incident(self, v: int) -> list[int]:
        return list(self._adj[v])

    def degree(self, v: int) -> int:
        return sum(2 if self.edges[e][0] == self.edges[e][1] else 1 for e in self._adj[v])

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise StructuralError(f"vertex {v} not an endpoint of edge {e}")

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self._adj[v]]

    def edge_between(self, u: int, v: int) -> int | None:
        for e in self._adj[u]:
            if self.other_end(e, u) == v:
                return e
        return None

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._adj[u] if self.other_end(e, u) == v]

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges.values())

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges.values():
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self._adj:
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def induced(self, vs) -> "MultiGraph":
        keep = set(vs)
        g = MultiGraph(vertices=sorted(keep))
        for e, (u, v) in sorted(self.edges.items()):
            if u in keep and v in keep:
                g.add_edge(u, v, e)
        return g


def two_coloring(g: MultiGraph) -> tuple[set, set]:
    """Proper 2-coloring (black, white) or NotBipartiteError with an odd cycle."""
    color: dict[int, int] = {}
    parent: dict[int, tuple] = {}
    for s in sorted(g._adj):
        if s in color:
            continue
        color[s] = 0
        parent[s] = (None, None)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for e in g.incident(v):
                w = g.other_end(e, v)
                if w == v:
                    raise NotBipartiteError("loop edge", odd_cycle=[v])
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = (v, e)
                    queue.append(w)
                elif color[w] == color[v]:
                    cycle = _odd_cycle_witness(parent, v, w)
                    raise NotBipartiteError(odd_cycle=cycle)
    black = {v for v, c in color.items() if c == 0}
    white = {v for v, c in color.items() if c == 1}
    return black, white


def _odd_cycle_witness(parent, v, w):
    path_v, path_w = [v], [w]
    av, aw = v, w
    seen = {v: 0}
    while parent[av][0] is not None:
        av = parent[av][0]
        seen[av] = len(path_v)
        path_v.append(av)
    while aw not in seen:
        aw = parent[aw][0]
        path_w.append(aw)
    return path_v[: seen[aw] + 1][::-1] + path_w[:-1]


@dataclass
class FacialWalk:
    """One face: a list of closed dart walks (more than one only for the
    merged outer face of a disconnected graph)."""

    walks: list = field(default_factory=list)
    is_outer: bool = False

    @property
    def darts(self) -> list[Dart]:
        return [d for w in self.walks for d in w]

    @property
    def degree(self) -> int:
        return len(self.darts)

    def vertex_list(self) -> list[int]:
        return [d[1] for d in self.darts]


class PlaneGraph:
    """MultiGraph plus CCW rotation system and designated outer face."""

    def __init__(self, graph: MultiGraph, rotation: dict, outer_darts=()):
        self.graph = graph
        self.rotation = {v: list(rot) for v, rot in rotation.items()}
        for v in graph._adj:
            self.rotation.setdefault(v, [])
        self.outer_darts: set[Dart] = set(outer_darts)

    def copy(self) -> "PlaneGraph":
        return PlaneGraph(self.graph.copy(), {v: list(r) for v, r in self.rotation.items()},
                          set(self.outer_darts))

    # -- dart navigation ---------------------------------------------------

    def darts(self) -> list[Dart]:
        out = []
        for e, (u, v) in self.graph.edges.items():
            out.append((e, u, v))
            out.append((e, v, u))
        return out

    def next_dart(self, d: Dart) -> Dart:
        """Face successor: leave d's head along the edge clockwise of d."""
        e, u, v = d
        rot = self.rotation[v]
        i = rot.index(e)
        f = rot[(i - 1) % len(rot)]
        return (f, v, self.graph.other_end(f, v))

    def prev_dart(self, d: Dart) -> Dart:
        e, u, v = d
        rot = self.rotation[u]
        i = rot.index(e)
        f = rot[(i + 1) % len(rot)]
        return (f, self.graph.other_end(f, u), u)

    def cw_rotation(self, v: int) -> list[int]:
        return list(reversed(self.rotation[v]))

    # -- faces --------------------------------------------------------------

    def face_walks(self) -> list[list[Dart]]:
        """Orbit decomposition of all darts under next_dart."""
        seen: set[Dart] = set()
        walks = []
        for d0 in self.darts():
            if d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = self.next_dart(d)
                if d == d0:
                    break
                if d in seen:
                    raise StructuralError("rotation system is malformed (open face walk)")
            walks.append(walk)
        return walks

    def faces(self) -> list[FacialWalk]:
        """Faces with the outer walks of all components merged into one face."""
        walks = self.face_walks()
        outer = FacialWalk(is_outer=True)
        faces = []
        for w in walks:
            if any(d in self.outer_darts for d in w):
                outer.walks.append(w)
            else:
                faces.append(FacialWalk(walks=[w]))
        if self.graph.edges and not outer.walks:
            raise StructuralError("no face walk contains an outer representative dart")
        if outer.walks:
            faces.append(outer)
        return faces

    def outer_face(self) -> FacialWalk:
        for f in self.faces():
            if f.is_outer:
                return f
        raise StructuralError("graph has no edges, outer face is degenerate")

    def face_of_dart(self, d: Dart) -> list[Dart]:
        walk = [d]
        cur = self.next_dart(d)
        while cur != d:
            walk.append(cur)
            cur = self.next_dart(cur)
        return walk

    def validate(self) -> None:
        """Euler relation and rotation well-formedness; raises on failure."""
        g = self.graph
        for v in g._adj:
            rot = self.rotation.get(v, [])
            if sorted(rot) != sorted(g._adj[v]):
                raise StructuralError(f"rotation at {v} does not list its edge ends")
        n_comp = len(g.components()) if g._adj else 0
        v_count = len(g._adj)
        e_count = len(g.edges)
        f_count = len(self.faces()) if g.edges else 1
        if g.edges and v_count - e_count + f_count != 1 + n_comp:
            raise StructuralError(
                f"Euler check failed: V={v_count} E={e_count} F={f_count} C={n_comp}"
            )
        # every component with an edge must pin exactly one outer walk
        if g.edges:
            walks = self.face_walks()
            per_walk = [sum(1 for d in w if d in self.outer_darts) for w in walks]
            if sum(per_walk) != len(self.outer_darts):
                raise StructuralError("an outer dart is missing from all face walks")
            comp_of = {}
            for i, comp in enumerate(g.components()):
                for v in comp:
                    comp_of[v] = i
            outer_comps = set()
            for w, k in zip(walks, per_walk):
                if k:
                    outer_comps.add(comp_of[w[0][1]])
            edge_comps = {comp_of[u] for u, v in g.edges.values()} | {
                comp_of[v] for u, v in g.edges.values()
            }
            if outer_comps != edge_comps:
                raise StructuralError("every component with edges needs an outer dart")

    # -- corners and surgery -------------------------------------------------

    def corner_after(self, d: Dart) -> tuple[int, int, int]:
        """The corner (v, e_in, e_out) entered by dart d = (e_in, u, v)."""
        nxt = self.next_dart(d)
        return (d[2], d[0], nxt[0])

    def insert_edge_at_corners(self, da: Dart, db: Dart, e: int | None = None) -> int:
        """Add an edge inside the face containing darts da and db, attaching at
        the corners entered by da and db.  da and db must lie on one face."""
        va, vb = da[2], db[2]
        new = self.graph.add_edge(va, vb, e)
        self._insert_after_entering_dart(da, new)
        self._insert_after_entering_dart(db, new)
        return new

    def _insert_after_entering_dart(self, d: Dart, new_edge: int) -> None:
        e, u, v = d
        rot = self.rotation[v]
        i = rot.index(e)
        # corner gap sits between e (entering) and its CW successor; with CCW
        # storage that means inserting immediately before e's position
        rot.insert(i, new_edge)

    def insert_vertex_in_face(self, corner_darts: list[Dart], v: int | None = None):
        """Add a new vertex inside a face, joined to the corners entered by the
        given darts (listed in face walk order).  Returns (vertex, edge ids)."""
        x = self.graph.add_vertex(v)
        ids = []
        for d in corner_darts:
            e = self.graph.add_edge(d[2], x)
            self._insert_after_entering_dart(d, e)
            ids.append(e)
        # seen from x the corners appear in reverse walk order CCW
        self.rotation[x] = list(reversed(ids))
        return x, ids

    def remove_edge(self, e: int) -> None:
        if any(d[0] == e for d in self.outer_darts):
            raise StructuralError("removing an outer representative dart; re-pin first")
        u, v = self.graph.edges[e]
        self.graph.remove_edge(e)
        self.rotation[u].remove(e)
        if v != u:
            self.rotation[v].remove(e)

    def remove_vertex(self, v: int) -> None:
        for e in list(self.graph._adj[v]):
            if any(d[0] == e for d in self.outer_darts):
                raise StructuralError("removing an outer representative dart; re-pin first")
            self.remove_edge(e)
        self.graph.remove_vertex(v)
        del self.rotation[v]

    def subdivide_edge(self, e: int) -> tuple[int, int, int]:
        """Replace edge e=(u,v) by u-x-v; returns (x, e_ux, e_xv)."""
        u, v = self.graph.edges[e]
        repin = [d for d in self.outer_darts if d[0] == e]
        for d in repin:
            self.outer_darts.discard(d)
        self.graph.remove_edge(e)
        x = self.graph.add_vertex()
        e1 = self.graph.add_edge(u, x)
        e2 = self.graph.add_edge(x, v)
        self.rotation[u][self.rotation[u].index(e)] = e1
        self.rotation[v][self.rotation[v].index(e)] = e2
        self.rotation[x] = [e1, e2]
        for d in repin:
            # keep the outer face pinned along the same side of the path
            _, a, b = d
            if a == u:
                self.outer_darts.add((e1, u, x))
            else:
                self.outer_darts.add((e2, v, x))
        return x, e1, e2

    def mirror(self) -> "PlaneGraph":
        pg = self.copy()
        pg.rotation = {v: list(reversed(r)) for v, r in pg.rotation.items()}
        # reflections reverse face walks, so outer representatives flip too
        pg.outer_darts = {(e, v, u) for (e, u, v) in self.outer_darts}
        return pg

    def repin_outer(self, old_dart: Dart, face_darts: list[Dart]) -> None:
        self.outer_darts.discard(old_dart)
        self.outer_darts.add(face_darts[0])


# -- planarity embedding ----------------------------------------------------


def planar_embed(g: MultiGraph) -> PlaneGraph:
    """Embed a simple loop-free graph, or raise NonPlanarError with witness.

    Components are embedded side by side in the outer face; per component the
    largest face is chosen as outer.  Uses the LR planarity test.
    """
    if g.has_loops():
        raise InputError("planar_embed expects a loop-free graph")
    if not g.is_simple():
        raise InputError("planar_embed expects a simple graph")
    nxg = nx.Graph()
    nxg.add_nodes_from(sorted(g._adj))
    for e, (u, v) in sorted(g.edges.items()):
        nxg.add_edge(u, v)
    ok, cert = nx.check_planarity(nxg, counterexample=True)
    if not ok:
        raise NonPlanarError(witness=sorted(cert.edges()))
    # networkx lists neighbors in clockwise order; reverse for CCW storage
    rotation = {}
    for v in sorted(g._adj):
        order = [w for w in cert.neighbors_cw_order(v)] if nxg.degree(v) else []
        edge_ids = []
        used: dict[int, int] = {}
        for w in order:
            es = g.edges_between(v, w)
            k = used.get(w, 0)
            edge_ids.append(es[k])
            used[w] = k + 1
        rotation[v] = list(reversed(edge_ids))
    pg = PlaneGraph(g.copy(), rotation)
    _pin_largest_outer_faces(pg)
    pg.validate()
    return pg


def _pin_largest_outer_faces(pg: PlaneGraph) -> None:
    """Choose the largest walk of each component as its outer walk."""
    pg.outer_darts = set()
    walks = pg.face_walks()
    comp_of = {}
    for i, comp in enumerate(pg.graph.components()):
        for v in comp:
            comp_of[v] = i
    best: dict[int, list] = {}
    for w in walks:
        c = comp_of[w[0][1]]
        cur = best.get(c)
        if cur is None or len(w) > len(cur) or (len(w) == len(cur) and w < cur):
            best[c] = w
    pg.outer_darts = {w[0] for w in best.values()}


# -- cycle side machinery -----------------------------------------------------


def cycle_interior_vertices(pg: PlaneGraph, cycle_edges) -> set:
    """Vertices strictly inside the closed curve formed by ``cycle_edges``.

    The cycle must be a set of edge ids forming a simple closed walk.  The
    side of the curve not containing the outer face is the interior.  The
    graph must be connected.
    """
    cyc = set(cycle_edges)
    walks = pg.face_walks()
    dart_walk = {}
    for i, w in enumerate(walks):
        for d in w:
            dart_walk[d] = i
    outer_ids = {dart_walk[d] for d in pg.outer_darts}
    if not outer_ids:
        raise StructuralError("outer face is not pinned")
    # flood fill across non-cycle edges
    adj: dict[int, set[int]] = {i: set() for i in range(len(walks))}
    for e, (u, v) in pg.graph.edges.items():
        if e in cyc:
            continue
        a = dart_walk[(e, u, v)]
        b = dart_walk[(e, v, u)]
        adj[a].add(b)
        adj[b].add(a)
    reach = set()
    queue = deque(outer_ids)
    reach |= outer_ids
    while queue:
        f = queue.popleft()
        for x in adj[f]:
            if x not in reach:
                reach.add(x)
                queue.append(x)
    cycle_vertices = set()
    for e in cyc:
        u, v = pg.graph.edges[e]
        cycle_vertices |= {u, v}
    inside = set()
    for i, w in enumerate(walks):
        if i in reach:
            continue
        for d in w:
            if d[1] not in cycle_vertices:
                inside.add(d[1])
    return inside


def separating_triangles(pg: PlaneGraph) -> list[tuple]:
    """All separating 3-cycles as (vertex triple, edge triple, interior set)."""
    out = []
    g = pg.graph
    vs = sorted(g._adj)
    for a in vs:
        for b in g.neighbors(a):
            if b <= a:
                continue
            for c in g.neighbors(b):
                if c <= b or c == a:
                    continue
                eab = g.edge_between(a, b)
                ebc = g.edge_between(b, c)
                eca = g.edge_between(c, a)
                if eca is None:
                    continue
                inside = cycle_interior_vertices(pg, {eab, ebc, eca})
                if inside:
                    out.append(((a, b, c), (eab, ebc, eca), inside))
    return out


def four_cycles(g: MultiGraph) -> list[tuple]:
    """Simple 4-cycles (v1,v2,v3,v4) with their edges, one orientation each."""
    out = []
    vs = sorted(g._adj)
    seen = set()
    for v1 in vs:
        for v2 in g.neighbors(v1):
            for v3 in g.neighbors(v2):
                if v3 == v1:
                    continue
                for v4 in g.neighbors(v3):
                    if v4 == v2 or v4 == v1:
                        continue
                    if g.edge_between(v4, v1) is None:
                        continue
                    key = frozenset([frozenset([v1, v2]), frozenset([v2, v3]),
                                     frozenset([v3, v4]), frozenset([v4, v1])])
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(
                        (
                            (v1, v2, v3, v4),
                            (
                                g.edge_between(v1, v2),
                                g.edge_between(v2, v3),
                                g.edge_between(v3, v4),
                                g.edge_between(v4, v1),
                            ),
                        )
                    )
    return out


def separating_four_cycles(pg: PlaneGraph) -> list[tuple]:
    out = []
    for quad, edges in four_cycles(pg.graph):
        inside = cycle_interior_vertices(pg, set(edges))
        if inside:
            out.append((quad, edges, inside))
    return out


def separating_two_cycles(pg: PlaneGraph) -> list[tuple]:
    """Separating 2-cycles (pairs of parallel edges with vertices inside)."""
    out = []
    by_pair: dict[tuple, list[int]] = {}
    for e, (u, v) in pg.graph.edges.items():
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        by_pair.setdefault(key, []).append(e)
    for key, es in sorted(by_pair.items()):
        if len(es) < 2:
            continue
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                inside = cycle_interior_vertices(pg, {es[i], es[j]})
                if inside:
                    out.append((key, (es[i], es[j]), inside))
    return out


# -- JSON ---------------------------------------------------------------------


def graph_to_json(g: MultiGraph, pg: PlaneGraph | None = None) -> dict:
    data = {
        "vertices": sorted(g._adj),
        "edges": [[e, u, v] for e, (u, v) in sorted(g.edges.items())],
    }
    if pg is not None:
        data["rotation"] = {str(v): list(pg.rotation[v]) for v in sorted(pg.rotation)}
        data["outer_face"] = [list(d) for d in sorted(pg.outer_darts)]
    return data


def graph_from_json(data: dict) -> tuple[MultiGraph, PlaneGraph | None]:
    g = MultiGraph(vertices=data["vertices"], edges=data["edges"])
    if "rotation" in data:
        rotation = {int(v): list(r) for v, r in data["rotation"].items()}
        outer = {tuple(d) for d in data.get("outer_face", [])}
        pg = PlaneGraph(g, rotation, outer)
        if not outer and g.edges:
            _pin_largest_outer_faces(pg)
        pg.validate()
        return g, pg
    return g, None
