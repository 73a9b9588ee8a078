"""2-page book embeddings, possibly with multi-edges.

A book embedding places the vertices on a spine (the x-axis) and draws each
edge as a half-circle on the upper or lower page, or straight on the spine
(only between consecutive vertices).  Parallel arcs carry a nesting rank so
rotations are well defined.

The conversion to a PlaneGraph realizes the drawing with arcs: the CCW
rotation at a spine vertex reads

    [spine-right] [upper-right near->far] [upper-left far->near]
    [spine-left] [lower-left near->far] [lower-right far->near]
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, InvariantError, StructuralError
from .graph import MultiGraph, PlaneGraph

UPPER = "upper"
LOWER = "lower"
SPINE = "spine"


@dataclass
class BookEmbedding:
    spine: list  # vertex ids left to right
    graph: MultiGraph
    pages: dict  # edge id -> UPPER | LOWER | SPINE
    nesting: dict = field(default_factory=dict)  # edge id -> rank, inner = smaller
    provenance: dict = field(default_factory=dict)  # vertex -> marker (e.g. 'leaf')

    def copy(self) -> "BookEmbedding":
        return BookEmbedding(
            list(self.spine),
            self.graph.copy(),
            dict(self.pages),
            dict(self.nesting),
            dict(self.provenance),
        )

    # -- positions ---------------------------------------------------------

    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.spine)}

    def span(self, e: int, pos: dict | None = None) -> tuple[int, int]:
        pos = pos or self.position()
        u, v = self.graph.edges[e]
        a, b = pos[u], pos[v]
        return (a, b) if a < b else (b, a)

    # -- validity ----------------------------------------------------------

    def page_crossings(self) -> list[tuple[int, int]]:
        """Pairs of same-page arcs whose spans strictly interleave."""
        pos = self.position()
        crossings = []
        for page in (UPPER, LOWER):
            arcs = [
                (self.span(e, pos), e) for e, p in self.pages.items() if p == page
            ]
            arcs.sort()
            for i in range(len(arcs)):
                (a1, b1), e1 = arcs[i]
                for j in range(i + 1, len(arcs)):
                    (a2, b2), e2 = arcs[j]
                    if a2 >= b1:
                        break
                    if a1 < a2 < b1 < b2:
                        crossings.append((e1, e2))
        return crossings

    def check_valid(self) -> None:
        pos = self.position()
        if sorted(pos) != sorted(self.graph._adj):
            raise StructuralError("spine does not list the vertex set")
        for e, page in self.pages.items():
            u, v = self.graph.edges[e]
            if u == v:
                raise StructuralError("loops cannot be book-embedded")
            if page == SPINE and abs(pos[u] - pos[v]) != 1:
                raise StructuralError(f"spine edge {e} joins non-consecutive vertices")
            if page not in (UPPER, LOWER, SPINE):
                raise StructuralError(f"edge {e} has unknown page {page}")
        cr = self.page_crossings()
        if cr:
            raise InvariantError(f"book pages are not crossing-free: {cr[:5]}")

    def one_sided_violations(self) -> list:
        """Positions j whose non-spine back-edges use both pages."""
        pos = self.position()
        bad = []
        for j, v in enumerate(self.spine):
            seen = set()
            for e in self.graph.incident(v):
                w = self.graph.other_end(e, v)
                if pos[w] < j and self.pages[e] != SPINE:
                    seen.add(self.pages[e])
            if len(seen) > 1:
                bad.append(j)
        return bad

    def is_one_sided(self) -> bool:
        return not self.one_sided_violations()

    # -- rotations ----------------------------------------------------------

    def rotation_at(self, v: int) -> list[int]:
        """CCW rotation of edge ids at v per the arc drawing."""
        pos = self.position()
        i = pos[v]
        spine_r, spine_l = [], []
        ur, ul, ll, lr = [], [], [], []
        for e in self.graph.incident(v):
            w = self.graph.other_end(e, v)
            j = pos[w]
            page = self.pages[e]
            rank = self.nesting.get(e, 0)
            if page == SPINE:
                (spine_r if j > i else spine_l).append((rank, e))
            elif page == UPPER:
                (ur if j > i else ul).append((j, rank, e))
            else:
                (ll if j < i else lr).append((j, rank, e))
        if len(spine_r) > 1 or len(spine_l) > 1:
            raise StructuralError(f"vertex {v} has parallel spine edges")
        ur.sort(key=lambda t: (t[0], t[1]))            # near -> far
        ul.sort(key=lambda t: (t[0], -t[1]))           # far -> near
        ll.sort(key=lambda t: (-t[0], t[1]))           # near -> far
        lr.sort(key=lambda t: (-t[0], -t[1]))          # far -> near
        rot = [e for _, e in sorted(spine_r)]
        rot += [e for *_, e in ur]
        rot += [e for *_, e in ul]
        rot += [e for _, e in sorted(spine_l)]
        rot += [e for *_, e in ll]
        rot += [e for *_, e in lr]
        return rot

    def to_planegraph(self) -> PlaneGraph:
        """Realize the book drawing as a PlaneGraph (validated)."""
        self.check_valid()
        pos = self.position()
        comps = self.graph.components()
        for comp in comps:
            ps = sorted(pos[v] for v in comp)
            if ps[-1] - ps[0] != len(ps) - 1:
                raise StructuralError("components must occupy contiguous spine intervals")
        rotation = {v: self.rotation_at(v) for v in self.graph._adj}
        pg = PlaneGraph(self.graph.copy(), rotation)
        pg.outer_darts = set()
        for comp in comps:
            leftmost = min(comp, key=lambda v: pos[v])
            dart = self._outer_dart_at(leftmost, pos)
            if dart is not None:
                pg.outer_darts.add(dart)
        pg.validate()
        return pg

    def _outer_dart_at(self, v: int, pos: dict):
        uppers, lowers, spine_r = [], [], []
        for e in self.graph.incident(v):
            w = self.graph.other_end(e, v)
            page = self.pages[e]
            rank = self.nesting.get(e, 0)
            if page == UPPER:
                uppers.append((pos[w], rank, e, w))
            elif page == LOWER:
                lowers.append((pos[w], rank, e, w))
            else:
                spine_r.append((e, w))
        if uppers:
            _, _, e, w = max(uppers)
            return (e, v, w)  # walking up the outermost upper arc: outer on the left
        if lowers:
            _, _, e, w = max(lowers)
            return (e, w, v)  # arriving from the outermost lower arc
        if spine_r:
            e, w = spine_r[0]
            return (e, w, v)  # walking right-to-left on the spine: outer below
        return None  # isolated vertex

    # -- hamiltonian structure ----------------------------------------------

    def backedge_page_of_vertex(self, v: int) -> str | None:
        """The common page of v's non-spine back-edges (None if it has none)."""
        pos = self.position()
        j = pos[v]
        pages = set()
        for e in self.graph.incident(v):
            w = self.graph.other_end(e, v)
            if pos[w] < j and self.pages[e] != SPINE:
                pages.add(self.pages[e])
        if len(pages) > 1:
            raise InvariantError(f"vertex {v} is not one-sided")
        return pages.pop() if pages else None


def concatenate_books(books: list[BookEmbedding]) -> BookEmbedding:
    """Place component books side by side on one spine."""
    spine: list = []
    g = MultiGraph()
    pages: dict = {}
    nesting: dict = {}
    provenance: dict = {}
    for b in books:
        for v in b.spine:
            g.add_vertex(v)
        spine.extend(b.spine)
        for e, (u, v) in b.graph.edges.items():
            g.add_edge(u, v, e)
        pages.update(b.pages)
        nesting.update(b.nesting)
        provenance.update(b.provenance)
    return BookEmbedding(spine, g, pages, nesting, provenance)


def close_to_hamiltonian(book: BookEmbedding) -> tuple[BookEmbedding, list[int]]:
    """Add the missing spine edges and the closing back edge, yielding the
    book of the Hamiltonian supergraph.  Existing consecutive-pair edges are
    reassigned to the spine.  Returns (book, added edge ids)."""
    out = book.copy()
    pos = out.position()
    added = []
    for e, (u, v) in list(out.graph.edges.items()):
        if abs(pos[u] - pos[v]) == 1 and out.pages[e] != SPINE:
            others = [
                f
                for f in out.graph.edges_between(u, v)
                if f != e and out.pages[f] == SPINE
            ]
            if not others:
                out.pages[e] = SPINE
    for i in range(len(out.spine) - 1):
        u, v = out.spine[i], out.spine[i + 1]
        if not any(out.pages[f] == SPINE for f in out.graph.edges_between(u, v)):
            e = out.graph.add_edge(u, v)
            out.pages[e] = SPINE
            added.append(e)
    u, v = out.spine[-1], out.spine[0]
    if len(out.spine) > 2:
        closing = out.graph.edges_between(u, v)
        if closing:
            e = closing[0]
            if out.pages[e] == SPINE:
                raise InvariantError("closing edge cannot be a spine edge")
        else:
            e = out.graph.add_edge(u, v)
            added.append(e)
        # outermost upper arc: nesting above every existing upper arc
        out.pages[e] = UPPER
        out.nesting[e] = max([out.nesting.get(f, 0) for f in out.graph.edges], default=0) + 1
    out.check_valid()
    return out, added
