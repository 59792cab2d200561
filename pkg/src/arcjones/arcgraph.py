"""Arc graphs of long-knot diagrams and their n-sheet cablings.

Vertices are 0-based.  A vertex of the n-cabled graph is a pair ``(v, j)`` with
``j`` in ``0..n-1`` the sheet, sheet 0 being the leftmost parallel copy when
looking along the orientation; the plain graph is the case ``n = 1`` and uses
the same representation.

Excess numbers are computed on the uncontracted picture.  In the cable the
under-strand of sheet ``j`` at crossing ``k`` is cut into ``n`` pieces, one per
over-sheet it passes; piece ``m`` sits under over-sheet ``i(m)`` with
``i(m) = m`` at a negative crossing and ``n - 1 - m`` at a positive one.  A
contracted red edge into over-sheet ``i`` uses the blue pieces before ``i(m)``;
a contracted blue edge uses all ``n``.  Every used blue piece contributes the
crossing sign times the number of chosen edges that precede that piece's red
edge at its head.  For ``n = 1`` this is the usual per-vertex excess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .diagram import Diagram
from .poly import ONE, LaurentPoly, exact_divide, render, t_pow

Vertex = tuple[int, int]


@dataclass(frozen=True)
class Edge:
    src: Vertex
    dst: Vertex
    blue: bool
    weight: LaurentPoly
    rot: int
    key: tuple  # position in the incoming order at dst; smaller comes first

    @property
    def color(self) -> str:
        return "blue" if self.blue else "red"


@dataclass
class ArcGraph:
    r: int
    n: int
    sign: tuple[int, ...]
    over: tuple[int, ...]  # red target of each base vertex (may equal r: deleted)
    position: tuple[int, ...]  # 1-based position of base vertex v in over_order(over(v))
    blue_rot: tuple[int, ...]
    red_rot: tuple[int, ...]
    edges: list[Edge] = field(default_factory=list)
    full: bool = False

    @property
    def vertices(self) -> list[Vertex]:
        nv = self.r + 1 if self.full else self.r
        return [(v, j) for v in range(nv) for j in range(self.n)]

    def out_edges(self, x: Vertex) -> list[Edge]:
        return self._out.get(x, [])

    def in_edges(self, x: Vertex) -> list[Edge]:
        return self._in.get(x, [])

    def __post_init__(self):
        self._index()

    def _index(self):
        self._out: dict[Vertex, list[Edge]] = {}
        self._in: dict[Vertex, list[Edge]] = {}
        for e in self.edges:
            self._out.setdefault(e.src, []).append(e)
            self._in.setdefault(e.dst, []).append(e)
        for lst in self._in.values():
            lst.sort(key=lambda e: e.key)

    def sheet_rank(self, k: int, j: int) -> int:
        """Order in which an over-sheet meets under-sheet ``j`` at crossing ``k``."""
        return j if self.sign[k] > 0 else self.n - 1 - j

    def over_sheet(self, k: int, m: int) -> int:
        """Over-sheet passed by piece ``m`` of an under-sheet at crossing ``k``."""
        return m if self.sign[k] < 0 else self.n - 1 - m

    def red_key(self, k: int, j: int) -> tuple:
        return (1, self.position[k], self.sheet_rank(k, j))

    def precedes(self, e: Edge, f: Edge) -> bool:
        """The partial order on cabled edges: shared head, or shared base tail."""
        if e.dst == f.dst and e.key[:2] < f.key[:2]:
            return True
        if e.src[0] == f.src[0]:
            if self.sign[e.src[0]] > 0:
                return e.src[1] < f.src[1]
            return f.src[1] < e.src[1]
        return False


def _edge_rots(d: Diagram) -> tuple[list[int], list[int]]:
    n = d.n_cross
    blue = [sum(d.partarc_rot[(i + 1) % n]) for i in range(n)]
    red = []
    for i in range(n):
        w = d.over[i]
        k = d.position(i)
        red.append(sum(d.partarc_rot[w][k:]))
    return blue, red


def build_arc_graph(d: Diagram, full: bool = False) -> ArcGraph:
    """G_K (``full=False``) or the undeleted graph with r+1 vertices."""
    n = d.n_cross
    if n == 0:
        return ArcGraph(0, 1, (), (), (), (), (), [], full)
    r = n - 1
    blue_rot, red_rot = _edge_rots(d)
    pos = tuple(d.position(i) for i in range(n))
    nv = n if full else r
    edges = []
    for v in range(nv):
        s = d.sign[v]
        b = (v + 1) % n
        if b < nv:
            edges.append(Edge((v, 0), (b, 0), True, t_pow(-s), blue_rot[v], (0,)))
        w = d.over[v]
        if w < nv:
            edges.append(Edge((v, 0), (w, 0), False, ONE - t_pow(-s), red_rot[v], (1, pos[v], 0)))
    return ArcGraph(r, 1, tuple(d.sign), tuple(d.over), pos, tuple(blue_rot), tuple(red_rot), edges, full)


def cable_graph(g: ArcGraph, n: int) -> ArcGraph:
    if n < 1:
        raise ValueError("n must be positive")
    if g.n != 1 or g.full:
        raise ValueError("cable the plain long-knot graph")
    h = ArcGraph(g.r, n, g.sign, g.over, g.position, g.blue_rot, g.red_rot, [], False)
    edges = []
    for v in range(g.r):
        s = g.sign[v]
        if v + 1 < g.r:
            for j in range(n):
                edges.append(Edge((v, j), (v + 1, j), True, t_pow(-s * n), g.blue_rot[v], (0,)))
        w = g.over[v]
        if w < g.r:
            for j in range(n):
                if s < 0:
                    wt = t_pow(j) * (ONE - t_pow(1))
                else:
                    wt = t_pow(-(n - 1 - j)) * (ONE - t_pow(-1))
                for i in range(n):
                    edges.append(Edge((v, i), (w, j), False, wt, g.red_rot[v], h.red_key(v, i)))
    h.edges = edges
    h._index()
    return h


# -- admissible subgraphs ---------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSubgraph:
    edges: frozenset  # of Edge

    @property
    def weight(self) -> LaurentPoly:
        out = ONE
        for e in self.edges:
            out = out * e.weight
        return out


def enumerate_admissible(g: ArcGraph) -> Iterator[AdmissibleSubgraph]:
    """All vertex-disjoint unions of directed cycles, the empty one included.

    Such a subgraph is a partial permutation: each vertex either sits out or
    picks one outgoing edge, targets are distinct, and the set of sources equals
    the set of targets.  Vertices are decided in order; a vertex that sits out
    may never become a target, and a chosen vertex must be hit by the time all
    of its possible predecessors have been decided.
    """
    vs = g.vertices
    idx = {x: i for i, x in enumerate(vs)}
    last_pred = [max((idx[e.src] for e in g.in_edges(x)), default=-1) for x in vs]
    settle_at: dict[int, list[int]] = {}
    for i, lp in enumerate(last_pred):
        settle_at.setdefault(max(lp, i), []).append(i)
    state = [0] * len(vs)  # 0 undecided, 1 out, 2 in
    hit = [False] * len(vs)
    chosen: list[Edge] = []

    def settled(i):
        return all(state[j] != 2 or hit[j] for j in settle_at.get(i, ()))

    def rec(i):
        if i == len(vs):
            yield AdmissibleSubgraph(frozenset(chosen))
            return
        if not hit[i]:
            state[i] = 1
            if settled(i):
                yield from rec(i + 1)
        state[i] = 2
        for e in g.out_edges(vs[i]):
            k = idx[e.dst]
            if hit[k] or state[k] == 1:
                continue
            hit[k] = True
            chosen.append(e)
            if settled(i):
                yield from rec(i + 1)
            chosen.pop()
            hit[k] = False
        state[i] = 0

    yield from rec(0)


def is_admissible(edges) -> bool:
    outs, ins = {}, {}
    for e in edges:
        outs[e.src] = outs.get(e.src, 0) + 1
        ins[e.dst] = ins.get(e.dst, 0) + 1
    return all(v == 1 for v in outs.values()) and outs.keys() == ins.keys() and all(v == 1 for v in ins.values())


def subgraph_exc(g: ArcGraph, edges) -> int:
    edges = list(edges)
    into: dict[Vertex, list[tuple]] = {}
    for e in edges:
        into.setdefault(e.dst, []).append(e.key)
    exc = 0
    for e in edges:
        k, j = e.src
        w = g.over[k]
        if w >= g.r:
            continue  # phantom red edge into the deleted vertex
        if e.blue:
            used = g.n
        else:
            used = next(m for m in range(g.n) if g.over_sheet(k, m) == e.dst[1])
        key = g.red_key(k, j)
        for m in range(used):
            head = (w, g.over_sheet(k, m))
            exc += g.sign[k] * sum(1 for kk in into.get(head, ()) if kk < key)
    return exc


def subgraph_delta(g: ArcGraph, c) -> tuple[int, int, int]:
    edges = c.edges if isinstance(c, AdmissibleSubgraph) else c
    rot = sum(e.rot for e in edges)
    exc = subgraph_exc(g, edges)
    return exc, rot, exc - rot


# -- matrices ----------------------------------------------------------------------

def weight_matrix(g: ArcGraph) -> list[list[LaurentPoly]]:
    vs = g.vertices
    idx = {x: i for i, x in enumerate(vs)}
    m = [[LaurentPoly() for _ in vs] for _ in vs]
    for e in g.edges:
        m[idx[e.src]][idx[e.dst]] = m[idx[e.src]][idx[e.dst]] + e.weight
    return m


def dump_matrix(m) -> str:
    cells = [[render(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def det(m: list[list[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant over Z[t^(1/2), t^(-1/2)]."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign
