"""Flows on the long-knot arc graph, sortings, n-sortings and their lifts.

A flow is stored as a tuple of non-negative integers aligned with
``g.edges``.  Red copies are pairs ``(edge, index)``; the copies of all red
edges ending at a vertex are ordered by the incoming order at that vertex and
then by index.  Sheets are 0-based throughout, so the value ``v_e`` of an
n-sorting is directly the target sheet of the lifted red edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, NamedTuple

from .arcgraph import AdmissibleSubgraph, ArcGraph, Edge, cable_graph
from .poly import ONE, ZERO, InvalidArgs, LaurentPoly, multinomial, qbinom, qint, t_pow


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class Flow:
    graph: ArcGraph = field(compare=False, hash=False, repr=False)
    values: tuple[int, ...]

    def __getitem__(self, e: Edge) -> int:
        return self.values[self.graph.edges.index(e)]

    def value_map(self) -> dict[Edge, int]:
        return dict(zip(self.graph.edges, self.values))

    def throughput(self, x) -> int:
        vals = self.value_map()
        return sum(vals[e] for e in self.graph.out_edges(x))

    def is_zero(self) -> bool:
        return not any(self.values)


class RedCopy(NamedTuple):
    edge: Edge
    index: int  # 0-based copy index

    @property
    def head(self) -> int:
        return self.edge.dst[0]

    @property
    def tail(self) -> int:
        return self.edge.src[0]


def _conserved(g, vals: dict, x) -> bool:
    return sum(vals[e] for e in g.in_edges(x)) == sum(vals[e] for e in g.out_edges(x))


def enumerate_flows(g, n: int) -> Iterator[Flow]:
    """All flows with throughput at most ``n`` at every vertex."""
    if n < 0:
        raise InvalidArgs("n must be non-negative")
    vs = list(g.vertices)
    pos = {x: i for i, x in enumerate(vs)}
    # a vertex can be checked once it and all its in-neighbours have been assigned
    ready: dict[int, list] = {}
    for x in vs:
        last = max([pos[x]] + [pos[e.src] for e in g.in_edges(x)])
        ready.setdefault(last, []).append(x)
    vals: dict[Edge, int] = {}

    def rec(i):
        if i == len(vs):
            yield Flow(g, tuple(vals[e] for e in g.edges))
            return
        outs = g.out_edges(vs[i])
        for choice in product(range(n + 1), repeat=len(outs)):
            if sum(choice) > n:
                continue
            vals.update(zip(outs, choice))
            if all(_conserved(g, vals, x) for x in ready.get(i, ())):
                yield from rec(i + 1)
        for e in outs:
            vals.pop(e, None)

    yield from rec(0)


def _blue_red(g: ArcGraph, v: int) -> tuple[Edge | None, Edge | None]:
    blue = red = None
    for e in g.out_edges((v, 0)):
        if e.blue:
            blue = e
        else:
            red = e
    return blue, red


def flow_mult(f: Flow) -> int:
    g, vals = f.graph, f.value_map()
    out = 1
    for x in g.vertices:
        out *= multinomial([vals[e] for e in g.out_edges(x)])
    return out


def flow_mult_q(f: Flow) -> LaurentPoly:
    g, vals = f.graph, f.value_map()
    out = ONE
    for v in range(g.r):
        blue, _ = _blue_red(g, v)
        fb = vals[blue] if blue is not None else 0
        out = out * qbinom(f.throughput((v, 0)), fb, g.sign[v])
    return out


def flow_exc(f: Flow) -> int:
    g, vals = f.graph, f.value_map()
    exc = 0
    for v in range(g.r):
        blue, _ = _blue_red(g, v)
        w = g.over[v]
        if blue is None or not vals[blue] or w >= g.r:
            continue
        key = g.red_key(v, 0)
        exc += g.sign[v] * vals[blue] * sum(vals[e] for e in g.in_edges((w, 0)) if e.key < key)
    return exc


def flow_delta(f: Flow) -> tuple[int, int, int]:
    rot = sum(x * e.rot for e, x in zip(f.graph.edges, f.values))
    exc = flow_exc(f)
    return exc, rot, exc - rot


def beta(f: Flow) -> LaurentPoly:
    out = ONE
    for e, x in zip(f.graph.edges, f.values):
        out = out * e.weight ** x
    return out


# -- red copies ----------------------------------------------------------------------

def red_copies(f: Flow) -> list[RedCopy]:
    """F_r in its fixed linear order: head vertex, incoming order, copy index."""
    out = []
    for e, x in zip(f.graph.edges, f.values):
        if not e.blue:
            out.extend(RedCopy(e, i) for i in range(x))
    out.sort(key=lambda c: (c.head, c.edge.key, c.index))
    return out


def pset_size(f: Flow, c: RedCopy) -> int:
    g, vals = f.graph, f.value_map()
    before = sum(vals[e] for e in g.in_edges(c.edge.dst) if e.key < c.edge.key)
    return before + c.index


def _pset(f: Flow, c: RedCopy, copies, carried) -> list[RedCopy]:
    """P(f, e) with its blue copies represented by the carried red copies."""
    same = [d for d in copies if d.head == c.head and (d.edge.key, d.index) < (c.edge.key, c.index)]
    return carried + same


# -- sortings ------------------------------------------------------------------------

Sorting = tuple  # tuple of frozensets C_0 .. C_{r-1}


def enumerate_sortings(f: Flow) -> Iterator[Sorting]:
    g, vals = f.graph, f.value_map()
    copies = red_copies(f)
    arriving = [[c for c in copies if c.head == v] for v in range(g.r)]
    sizes = []
    for v in range(g.r):
        blue, _ = _blue_red(g, v)
        sizes.append(vals[blue] if blue is not None else 0)

    def rec(v, prev, acc):
        if v == g.r:
            yield tuple(acc)
            return
        pool = sorted(prev, key=copies.index) + arriving[v]
        for pick in combinations(pool, sizes[v]):
            yield from rec(v + 1, frozenset(pick), acc + [frozenset(pick)])

    yield from rec(0, frozenset(), [])


def departure(C: Sorting, c: RedCopy) -> int:
    """First vertex at or after the head of ``c`` whose set no longer holds ``c``."""
    d = c.head
    while d < len(C) and c in C[d]:
        d += 1
    return d


def is_admissible_n_sorting(C: Sorting, vmap: dict) -> bool:
    copies = list(vmap)
    for a, b in combinations(copies, 2):
        if vmap[a] != vmap[b]:
            continue
        if a.head > b.head:
            a, b = b, a
        if departure(C, a) >= b.head:
            return False
    return True


@dataclass(frozen=True)
class NSorting:
    C: Sorting
    v: tuple[int, ...]  # aligned with red_copies(f)
    weight: LaurentPoly
    exc: int
    admissible: bool


def n_sorting_weight(f: Flow, vmap: dict, n: int) -> LaurentPoly:
    g, vals = f.graph, f.value_map()
    out = ONE
    for e, x in vals.items():
        s = g.sign[e.src[0]]
        if e.blue:
            out = out * t_pow(-s * n * x)
    for c, j in vmap.items():
        if g.sign[c.tail] < 0:
            out = out * (ONE - t_pow(1)) * t_pow(j)
        else:
            out = out * (ONE - t_pow(-1)) * t_pow(-(n - 1) + j)
    return out


def _exc_data(f: Flow, C: Sorting, copies):
    """Per copy: sign at the tail, P(f, e), departure vertex, sign there, C at departure."""
    g = f.graph
    out = []
    for c in copies:
        carried = list(C[c.head - 1]) if c.head > 0 else []
        dd = departure(C, c)
        if dd >= g.r:
            raise NotAdmissible("red copy carried past the last vertex")
        out.append((c, g.sign[c.tail], _pset(f, c, copies, carried), g.sign[dd], list(C[dd])))
    return out


def _exc_from_data(data, vmap) -> int:
    total = 0
    for c, s_tail, pset, s_dep, held in data:
        vc = vmap[c]
        def1 = sum(1 for d in pset if vmap[d] < vc)
        total += (len(pset) - def1) if s_tail > 0 else -def1
        def2 = sum(1 for d in held if vmap[d] < vc)
        total += (len(held) - def2) if s_dep > 0 else -def2
    return total


def n_sorting_exc(f: Flow, C: Sorting, vmap: dict) -> int:
    """Excess of an n-sorting from the def_1/def_2 counts."""
    return _exc_from_data(_exc_data(f, C, list(vmap)), vmap)


def _conflicts(C: Sorting, copies) -> dict:
    """Pairs of copies that may not share a sheet."""
    adj = {c: set() for c in copies}
    for a, b in combinations(copies, 2):
        if a.head > b.head:
            a, b = b, a
        if departure(C, a) >= b.head:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _colorings(copies, adj, n) -> Iterator[tuple[int, ...]]:
    v = [0] * len(copies)
    idx = {c: i for i, c in enumerate(copies)}
    earlier = [[idx[d] for d in adj[c] if idx[d] < i] for i, c in enumerate(copies)]

    def rec(i):
        if i == len(copies):
            yield tuple(v)
            return
        banned = {v[j] for j in earlier[i]}
        for x in range(n):
            if x not in banned:
                v[i] = x
                yield from rec(i + 1)

    yield from rec(0)


def enumerate_n_sortings(f: Flow, n: int, admissible_only: bool = True) -> Iterator[NSorting]:
    if n < 1:
        raise InvalidArgs("n must be positive")
    copies = red_copies(f)
    base = n_sorting_weight(f, {}, n)
    for c in copies:
        base = base * ((ONE - t_pow(1)) if f.graph.sign[c.tail] < 0 else (ONE - t_pow(-1)) * t_pow(-(n - 1)))
    for C in enumerate_sortings(f):
        adj = _conflicts(C, copies)
        data = None
        vs = _colorings(copies, adj, n) if admissible_only else product(range(n), repeat=len(copies))
        for v in vs:
            adm = admissible_only or all(v[copies.index(b)] != x for a, x in zip(copies, v) for b in adj[a])
            exc = 0
            if adm:
                data = data if data is not None else _exc_data(f, C, copies)
                exc = _exc_from_data(data, dict(zip(copies, v)))
            yield NSorting(C, v, base.shift(sum(v)), exc, adm)


def phi_lift(f: Flow, P: NSorting, n: int, cabled: ArcGraph | None = None) -> AdmissibleSubgraph:
    """The admissible subgraph of the n-cabled graph encoded by ``P``."""
    g = f.graph
    h = cabled if cabled is not None else cable_graph(g, n)
    lookup = {(e.src, e.dst): e for e in h.edges}
    copies = red_copies(f)
    vmap = dict(zip(copies, P.v))
    if not is_admissible_n_sorting(P.C, vmap):
        raise NotAdmissible("n-sorting violates the sheet condition")
    chosen = []
    for v in range(g.r):
        incoming = {vmap[c] for c in copies if c.head == v}
        through = {vmap[c] for c in P.C[v - 1]} if v > 0 else set()
        occupied = incoming | through
        blue_out = {vmap[c] for c in P.C[v]}
        for j in sorted(blue_out):
            chosen.append(lookup[((v, j), (v + 1, j))])
        free = sorted(occupied - blue_out, reverse=g.sign[v] < 0)
        _, red = _blue_red(g, v)
        reds = sorted((c for c in copies if red is not None and c.edge == red), key=lambda c: c.index)
        if len(free) != len(reds):
            raise NotAdmissible(f"vertex {v}: {len(free)} free sheets for {len(reds)} red copies")
        for j, c in zip(free, reds):
            chosen.append(lookup[((v, j), (c.head, vmap[c]))])
    return AdmissibleSubgraph(frozenset(chosen))


# -- structures ------------------------------------------------------------------------

def _check_sizes(a, b):
    if len(a) != len(b) or not a or any(x < 1 for x in a) or b[0] != 0:
        raise InvalidArgs("need equal-length block sizes with a_i >= 1 and b_1 = 0")
    for i in range(1, len(a)):
        if not 0 <= b[i] <= a[i - 1] + b[i - 1]:
            raise InvalidArgs(f"b_{i + 1} = {b[i]} exceeds the previous block")


def count_structures(a, b) -> int:
    _check_sizes(a, b)
    out = 1
    for i in range(1, len(a)):
        out *= multinomial([b[i], a[i - 1] + b[i - 1] - b[i]])
    return out


def enumerate_structures(a, b) -> Iterator[tuple[list, list]]:
    _check_sizes(a, b)
    blocks, start = [], 0
    for x in a:
        blocks.append(list(range(start, start + x)))
        start += x

    def rec(i, B):
        if i == len(a):
            yield blocks, B
            return
        pool = sorted(blocks[i - 1] + B[-1])
        for pick in combinations(pool, b[i]):
            yield from rec(i + 1, B + [sorted(pick)])

    yield from rec(1, [[]])


def _qint_or_zero(m: int) -> LaurentPoly:
    return qint(m) if m > 0 else ZERO


def structure_sum(a, b, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the structure identity: (enumerated sum, product formula)."""
    _check_sizes(a, b)
    lhs = ZERO
    k = sum(a)
    for A, B in enumerate_structures(a, b):
        block_of = {i: x for x, blk in enumerate(A) for i in blk}
        for v in product(range(n), repeat=k):
            if any(len({v[j] for j in A[x] + B[x]}) < len(A[x]) + len(B[x]) for x in range(len(A))):
                continue
            e = 0
            for i in range(k):
                x = block_of[i]
                grp = A[x] + B[x]
                d1 = sum(1 for j in grp if j < i and v[j] < v[i])
                y = x
                while y + 1 < len(B) and i in B[y + 1]:
                    y += 1
                nxt = B[y + 1] if y + 1 < len(B) else []
                d2 = sum(1 for j in nxt if v[j] < v[i])
                e += v[i] - d1 - d2
            lhs = lhs + t_pow(e)
    rhs = ONE
    for x in range(len(a)):
        for r in range(a[x]):
            rhs = rhs * _qint_or_zero(n - (b[x] + r))
    for x in range(len(a) - 1):
        rhs = rhs * qbinom(a[x] + b[x], b[x + 1], -1)
    return lhs, rhs
