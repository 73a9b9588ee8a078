"""Straight-line (and 1-bend) drawings with exact crossing certification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import StructuralError
from .geometry import segments_cross
from .graph import MultiGraph


@dataclass
class Drawing:
    """Vertex placement with exact rational coordinates; optional bends."""

    placement: dict  # vertex -> (x, y) ints or Fractions
    bends: dict = field(default_factory=dict)  # edge id -> [point, ...]

    def segments_of_edge(self, g: MultiGraph, e: int) -> list[tuple]:
        u, v = g.edges[e]
        pts = [self.placement[u]] + list(self.bends.get(e, [])) + [self.placement[v]]
        return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]

    def restricted_to(self, vertices, edge_ids=None) -> "Drawing":
        keep = set(vertices)
        bends = dict(self.bends) if edge_ids is None else {
            e: b for e, b in self.bends.items() if e in set(edge_ids)
        }
        return Drawing({v: p for v, p in self.placement.items() if v in keep}, bends)


@dataclass
class CertifiedReport:
    crossing_pairs: list
    coincident_vertices: list

    @property
    def crossing_free(self) -> bool:
        return not self.crossing_pairs and not self.coincident_vertices


def verify_drawing(g: MultiGraph, d: Drawing) -> CertifiedReport:
    """Exact pairwise segment check over all edge segments (bends included).

    Collinear overlap counts as a crossing.  Symmetric in edge order and
    invariant under edge id relabeling.  Raises on unplaced vertices.
    """
    for v in g._adj:
        if v not in d.placement:
            raise StructuralError(f"vertex {v} is not placed")
    placed = {}
    coincident = []
    for v in sorted(g._adj):
        pt = (Fraction(d.placement[v][0]), Fraction(d.placement[v][1]))
        if pt in placed:
            coincident.append((placed[pt], v))
        placed[pt] = v

    segs = []  # (edge id, seg index, p, q)
    for e in sorted(g.edges):
        for k, (p, q) in enumerate(d.segments_of_edge(g, e)):
            segs.append((e, k, p, q))

    crossings = []
    for i in range(len(segs)):
        e1, k1, p1, p2 = segs[i]
        for j in range(i + 1, len(segs)):
            e2, k2, q1, q2 = segs[j]
            if e1 == e2 and abs(k1 - k2) == 1:
                continue  # consecutive segments of one polyline share a bend
            if segments_cross(p1, p2, q1, q2):
                crossings.append(((e1, k1), (e2, k2)))
    return CertifiedReport(crossing_pairs=crossings, coincident_vertices=coincident)


def drawing_to_json(d: Drawing) -> dict:
    def quad(pt):
        x, y = Fraction(pt[0]), Fraction(pt[1])
        return [str(x.numerator), str(x.denominator), str(y.numerator), str(y.denominator)]

    return {
        "points": {str(v): quad(p) for v, p in sorted(d.placement.items(), key=lambda t: str(t[0]))},
        "bends": {str(e): [quad(p) for p in pts] for e, pts in sorted(d.bends.items())},
    }


def drawing_from_json(data: dict) -> Drawing:
    def unquad(q):
        return (Fraction(int(q[0]), int(q[1])), Fraction(int(q[2]), int(q[3])))

    placement = {int(v): unquad(q) for v, q in data["points"].items()}
    bends = {int(e): [unquad(q) for q in pts] for e, pts in data.get("bends", {}).items()}
    return Drawing(placement, bends)
