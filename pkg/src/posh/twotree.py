"""2-trees, the 499-vertex non-POSH counterexample, and brute-force search
for one-sided 2-page book embeddings.

The searcher enumerates spine orders left to right, assigning each new
vertex's back-edges a common page, pruning on page crossings; it therefore
finds exactly the one-sided crossing-free layouts (the reverse edge from the
last to the first vertex is drawable as an outermost arc for free).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .book import LOWER, SPINE, UPPER, BookEmbedding
from .errors import InputError, InvariantError
from .graph import MultiGraph


@dataclass
class TwoTree:
    """Stacking sequence: base edge (a, b), then (new vertex, parent edge)."""

    base: tuple
    stacks: list  # (vertex, (parent_u, parent_v))

    def graph(self) -> MultiGraph:
        g = MultiGraph(vertices=[self.base[0], self.base[1]])
        g.add_edge(self.base[0], self.base[1])
        for v, (pu, pv) in self.stacks:
            g.add_vertex(v)
            g.add_edge(v, pu)
            g.add_edge(v, pv)
        return g

    def stacked_over(self) -> dict:
        """X(e): edge (as sorted vertex pair) -> vertices stacked over it."""
        out: dict = {}
        for v, (pu, pv) in self.stacks:
            out.setdefault(_key(pu, pv), []).append(v)
        return out

    def stack_edges(self) -> dict:
        """S(e): edge -> edges created by stacking over it."""
        out: dict = {}
        for v, (pu, pv) in self.stacks:
            out.setdefault(_key(pu, pv), []).extend([_key(v, pu), _key(v, pv)])
        return out


def _key(u, v):
    return (u, v) if u < v else (v, u)


def build_counterexample() -> TwoTree:
    """The 499-vertex 2-tree with stacking profile (7, 5, 3).

    A base edge carries 7 stacked vertices; each of the 14 edges so created
    carries 5; each of the 140 second-level edges carries 3; the 840 last
    edges carry nothing.  995 edges in total, so 499 vertices.
    """
    base = (0, 1)
    stacks = []
    next_v = 2

    def stack_over(edge, count):
        nonlocal next_v
        created = []
        for _ in range(count):
            v = next_v
            next_v += 1
            stacks.append((v, edge))
            created.extend([(v, edge[0]), (v, edge[1])])
        return created

    level1 = stack_over(base, 7)
    level2 = []
    for e in level1:
        level2.extend(stack_over(e, 5))
    for e in level2:
        stack_over(e, 3)
    return TwoTree(base=base, stacks=stacks)


def audit_counterexample(tt: TwoTree) -> dict:
    g = tt.graph()
    s_of = tt.stack_edges()
    x_of = tt.stacked_over()
    base = _key(*tt.base)
    level1 = s_of.get(base, [])
    level2 = [e2 for e1 in level1 for e2 in s_of.get(e1, [])]
    level3 = [e3 for e2 in level2 for e3 in s_of.get(e2, [])]
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "base_stacked": len(x_of.get(base, [])),
        "level1_edges": len(level1),
        "level2_edges": len(level2),
        "level3_edges": len(level3),
        "profile": (
            len(x_of.get(base, [])),
            len(x_of.get(level1[0], [])) if level1 else 0,
            len(x_of.get(level2[0], [])) if level2 else 0,
        ),
    }


# -- brute force ---------------------------------------------------------------


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    budget: int | None = None
    exhausted: bool = False


def search_one_sided_layouts(
    g: MultiGraph,
    on_solution,
    node_budget: int | None = None,
) -> SearchStats:
    """Enumerate one-sided crossing-free 2-page layouts of g.

    The spine is built left to right; each vertex commits its strict
    back-edges to a single page, spine-adjacent back-edges to the spine.
    ``on_solution(order, page_choice)`` receives the vertex order and the
    per-position page of the strict back-edges; returning True stops the
    search.  The hot loop works on bitmasks, so g must be loop-free.
    """
    vs = sorted(g.vertices)
    n = len(vs)
    if g.has_loops():
        raise InputError("loops cannot be book-embedded")
    stats = SearchStats(budget=node_budget)
    if n == 0:
        stats.exhausted = True
        return stats
    idx = {v: i for i, v in enumerate(vs)}
    adj_mask = [0] * n
    for u, w in g.edges.values():
        adj_mask[idx[u]] |= 1 << idx[w]
        adj_mask[idx[w]] |= 1 << idx[u]

    order = [0] * n
    pos = [0] * n  # by vertex index
    pages = [None] * n  # page choice of the vertex at each position
    arcs = {UPPER: [], LOWER: []}
    stop = [False]

    def rec(j: int, placed: int):
        if stop[0]:
            return
        if node_budget is not None and stats.nodes >= node_budget:
            return
        stats.nodes += 1
        if j == n:
            stats.solutions += 1
            if on_solution([vs[i] for i in order[:n]], list(pages)):
                stop[0] = True
            return
        for v in range(n):
            if placed & (1 << v):
                continue
            back = adj_mask[v] & placed
            strict = []
            m = back
            while m:
                b = m & -m
                i = pos[b.bit_length() - 1]
                if i < j - 1:
                    strict.append(i)
                m ^= b
            order[j] = v
            pos[v] = j
            if not strict:
                pages[j] = None
                rec(j + 1, placed | (1 << v))
            else:
                for page in (UPPER, LOWER):
                    cur = arcs[page]
                    ok = True
                    for i in strict:
                        for a, b in cur:
                            if a < i < b:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        continue
                    pages[j] = page
                    added = [(i, j) for i in strict]
                    cur.extend(added)
                    rec(j + 1, placed | (1 << v))
                    del cur[len(cur) - len(added):]
            if stop[0]:
                return
    rec(0, 0)
    if node_budget is None or stats.nodes < node_budget:
        stats.exhausted = True
    return stats


def layout_to_book(g: MultiGraph, order: list, pages: list) -> BookEmbedding:
    """Materialize a search solution as a BookEmbedding."""
    posn = {v: i for i, v in enumerate(order)}
    page_of = {}
    for e, (u, w) in g.edges.items():
        i, j = sorted((posn[u], posn[w]))
        if j - i == 1:
            page_of[e] = SPINE
        else:
            page_of[e] = pages[j] if pages[j] is not None else UPPER
    return BookEmbedding(list(order), g.copy(), page_of)


def brute_force_posh(
    g: MultiGraph,
    node_budget: int | None = None,
    find_all: bool = False,
) -> tuple[list[BookEmbedding], SearchStats]:
    """Search one-sided crossing-free 2-page book embeddings of g.

    Returns (layouts, stats).  With ``find_all`` every layout is collected;
    otherwise the first one is returned.  ``stats.exhausted`` distinguishes a
    proven NONE from a budget-limited NONE.
    """
    results: list[BookEmbedding] = []

    def on_solution(order, pages):
        results.append(layout_to_book(g, order, pages))
        return not find_all

    stats = search_one_sided_layouts(g, on_solution, node_budget)
    return results, stats


# -- 2-tree enumeration ---------------------------------------------------------


def generate_two_trees(n: int) -> list[TwoTree]:
    """All 2-trees on n vertices up to isomorphism (VF2 dedup per level)."""
    import networkx as nx

    if n < 3:
        raise InputError("2-trees start at the triangle")

    def to_nx(tt):
        g = tt.graph()
        h = nx.Graph()
        h.add_nodes_from(g.vertices)
        h.add_edges_from(g.edges.values())
        return h

    level = [TwoTree(base=(0, 1), stacks=[(2, (0, 1))])]
    for size in range(4, n + 1):
        buckets: dict = {}
        for tt in level:
            g = tt.graph()
            edges = sorted({_key(u, v) for (u, v) in g.edges.values()})
            for e in edges:
                cand = TwoTree(base=tt.base, stacks=tt.stacks + [(size - 1, e)])
                h = to_nx(cand)
                key = (size, tuple(sorted(d for _, d in h.degree())))
                reps = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(h, r_h) for _, r_h in reps):
                    reps.append((cand, h))
        level = [cand for reps in buckets.values() for cand, _ in reps]
    return level


# -- claims ---------------------------------------------------------------------


@dataclass
class ClaimReport:
    xr_violations: list = field(default_factory=list)
    xm_violations: list = field(default_factory=list)
    xl_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.xr_violations or self.xm_violations or self.xl_violations)


def check_claims(tt: TwoTree, book: BookEmbedding) -> ClaimReport:
    """The three structural claims about any valid one-sided layout of a
    2-tree: |XR(e)| <= 2 for every edge; |XM(e)| <= 3 when every stack edge
    of e is itself heavily stacked; and the rightmost left-stacked vertex
    forces one of its stack edges to have |XL| <= 1 with both XR empty."""
    g = tt.graph()
    if sorted(book.spine) != sorted(g.vertices):
        raise InputError("layout does not match the 2-tree")
    book.check_valid()
    if not book.is_one_sided():
        raise InputError("layout is not one-sided")
    return check_claims_positions(tt, book.position())


def check_claims_positions(tt: TwoTree, pos: dict, x_of=None, s_of=None) -> ClaimReport:
    """Positional core of the claims (they only mention spine positions)."""
    x_of = tt.stacked_over() if x_of is None else x_of
    s_of = tt.stack_edges() if s_of is None else s_of
    report = ClaimReport()

    def parts(e):
        i, j = sorted((pos[e[0]], pos[e[1]]))
        xl = [v for v in x_of.get(e, []) if pos[v] < i]
        xm = [v for v in x_of.get(e, []) if i < pos[v] < j]
        xr = [v for v in x_of.get(e, []) if pos[v] > j]
        return xl, xm, xr

    for e in x_of:
        xl, xm, xr = parts(e)
        if len(xr) > 2:
            report.xr_violations.append((e, xr))
        if len(xm) > 3 and all(len(x_of.get(e2, [])) >= 3 for e2 in s_of.get(e, [])):
            report.xm_violations.append((e, xm))
        if len(xl) >= 2:
            x = max(xl, key=lambda v: pos[v])
            incident = [e2 for e2 in s_of.get(e, []) if x in e2]
            stats = []
            for e2 in incident:
                xl2, _, xr2 = parts(e2)
                stats.append((e2, len(xl2), len(xr2)))
            if not any(c <= 1 for _, c, _ in stats) or any(r != 0 for *_, r in stats):
                report.xl_violations.append((e, x, stats))
    return report
