"""Zeta function of a weighted digraph, computed three ways.

Every series lives in ``MultiPoly``: integer polynomials in one commuting
variable per edge, truncated at a total degree ``D``.  A monomial is packed
into a single int, with exponents as base-``D+1`` digits and the total degree
as the leading digit, so multiplying monomials is integer addition and
truncation is a single comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence


class MultiPoly:
    __slots__ = ("nvars", "D", "names", "terms", "_base", "_top")

    def __init__(self, nvars: int, D: int, names: Sequence[str] | None = None, terms: dict | None = None):
        if D < 0:
            raise ValueError("degree bound must be non-negative")
        self.nvars, self.D = nvars, D
        self.names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(nvars))
        self._base = D + 1
        self._top = self._base ** nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # packing
    def pack(self, exps: Sequence[int]) -> int | None:
        deg = sum(exps)
        if deg > self.D:
            return None
        k = deg * self._top
        for i, e in enumerate(exps):
            k += e * self._base ** i
        return k

    def unpack(self, k: int) -> tuple[int, ...]:
        k %= self._top
        out = []
        for _ in range(self.nvars):
            k, e = divmod(k, self._base)
            out.append(e)
        return tuple(out)

    def degree_of(self, k: int) -> int:
        return k // self._top

    def _like(self, terms: dict) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.nvars, p.D, p.names, p._base, p._top = self.nvars, self.D, self.names, self._base, self._top
        p.terms = terms
        return p

    @classmethod
    def one(cls, nvars: int, D: int, names=None) -> "MultiPoly":
        p = cls(nvars, D, names)
        p.terms = {0: 1}
        return p

    def const(self, c: int) -> "MultiPoly":
        return self._like({0: c} if c else {})

    def var(self, i: int) -> "MultiPoly":
        if self.D < 1:
            return self._like({})
        return self._like({self._top + self._base ** i: 1})

    def monomial(self, exps: Sequence[int], c: int = 1) -> "MultiPoly":
        k = self.pack(exps)
        return self._like({} if k is None or not c else {k: c})

    # arithmetic
    def _check(self, other: "MultiPoly"):
        if (self.nvars, self.D) != (other.nvars, other.D):
            raise ValueError("incompatible MultiPoly operands")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.const(other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._like({k: v for k, v in out.items() if v})

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like({k: v * other for k, v in self.terms.items() if v * other})
        self._check(other)
        limit = (self.D + 1) * self._top
        bs = sorted(other.terms.items())
        out: dict[int, int] = {}
        for a, ca in self.terms.items():
            for b, cb in bs:
                k = a + b
                if k >= limit:
                    break
                out[k] = out.get(k, 0) + ca * cb
        return self._like({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.const(1)
        for _ in range(n):
            out = out * self
        return out

    def geometric(self) -> "MultiPoly":
        """1/(1 - self) for ``self`` without constant term."""
        if 0 in self.terms:
            raise ValueError("geometric series needs a vanishing constant term")
        out = self.const(1)
        power = self.const(1)
        for _ in range(self.D):
            power = power * self
            if not power.terms:
                break
            out = out + power
        return out

    def inverse(self) -> "MultiPoly":
        c = self.terms.get(0, 0)
        if c not in (1, -1):
            raise ValueError("constant term must be a unit")
        return ((self * c) * -1 + 1).geometric() * c

    def degree_part(self, d: int) -> "MultiPoly":
        return self._like({k: v for k, v in self.terms.items() if self.degree_of(k) == d})

    def truncate(self, d: int) -> "MultiPoly":
        return self._like({k: v for k, v in self.terms.items() if self.degree_of(k) <= d})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.nvars, self.D) == (other.nvars, other.D) and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.D, frozenset(self.terms.items())))

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        for k in sorted(self.terms):
            yield self.unpack(k), self.terms[k]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = " ".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c} {mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


@dataclass(frozen=True)
class WeightedDigraph:
    """Digraph on vertices ``0..nv-1``; edge ``i`` carries the variable ``names[i]``."""

    nv: int
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < self.nv and 0 <= b < self.nv):
                raise ValueError(f"edge ({a}, {b}) out of range")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"b{i}" for i in range(len(self.edges))))
        elif len(self.names) != len(self.edges):
            raise ValueError("one name per edge")

    def ring(self, D: int) -> MultiPoly:
        return MultiPoly(len(self.edges), D, self.names)

    def out_edges(self, v: int) -> list[int]:
        return [i for i, (a, _) in enumerate(self.edges) if a == v]

    @classmethod
    def complete(cls, r: int) -> "WeightedDigraph":
        """K_r with loops; edge (i, j) is named b_ij in 1-based labels."""
        edges = tuple((i, j) for i in range(r) for j in range(r))
        names = tuple(_bname(i + 1, j + 1, r) for i, j in edges)
        return cls(r, edges, names)

    @classmethod
    def from_multiplicities(cls, M: Sequence[Sequence[int]]) -> "WeightedDigraph":
        edges = []
        for i, row in enumerate(M):
            for j, m in enumerate(row):
                edges.extend([(i, j)] * m)
        return cls(len(M), tuple(edges))


def _bname(i: int, j: int, r: int) -> str:
    return f"b{i}{j}" if r < 10 else f"b{i},{j}"


# -- flows ---------------------------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for x in range(total, -1, -1):
        for rest in _compositions(total - x, parts - 1):
            yield (x,) + rest


def enumerate_digraph_flows(g: WeightedDigraph, D: int) -> Iterator[tuple[int, ...]]:
    """Conserved non-negative edge vectors with total value at most ``D``."""
    outs = [g.out_edges(v) for v in range(g.nv)]
    heads = [b for _, b in g.edges]
    for through in _throughputs(g.nv, D):
        vals = [0] * len(g.edges)
        inflow = [0] * g.nv

        def rec(v):
            if v == g.nv:
                if inflow == list(through):
                    yield tuple(vals)
                return
            t = through[v]
            if t and not outs[v]:
                return
            for comp in _compositions(t, len(outs[v])):
                ok = True
                for e, x in zip(outs[v], comp):
                    vals[e] = x
                    inflow[heads[e]] += x
                    if inflow[heads[e]] > through[heads[e]]:
                        ok = False
                if ok:
                    yield from rec(v + 1)
                for e, x in zip(outs[v], comp):
                    inflow[heads[e]] -= x
                    vals[e] = 0

        yield from rec(0)


def _throughputs(nv: int, D: int) -> Iterator[tuple[int, ...]]:
    for d in range(D + 1):
        yield from _compositions(d, nv)


def flow_multiplicity(g: WeightedDigraph, f: Sequence[int]) -> int:
    m = 1
    for v in range(g.nv):
        xs = [f[e] for e in g.out_edges(v)]
        m *= factorial(sum(xs))
        for x in xs:
            m //= factorial(x)
    return m


def zeta_flow_sum_naive(g: WeightedDigraph, D: int) -> MultiPoly:
    """Reference route: one term per enumerated flow."""
    ring = g.ring(D)
    terms: dict[int, int] = {}
    for f in enumerate_digraph_flows(g, D):
        k = ring.pack(f)
        terms[k] = terms.get(k, 0) + flow_multiplicity(g, f)
    return ring._like(terms)


def _tables(pairs: list[tuple[int, int]], T: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Non-negative values on ``pairs`` with row sums and column sums both equal to ``T``."""
    nv = len(T)
    rows = [[i for i, (a, _) in enumerate(pairs) if a == v] for v in range(nv)]
    vals = [0] * len(pairs)
    room = list(T)

    def rec(v):
        if v == nv:
            if not any(room):
                yield tuple(vals)
            return
        for comp in _compositions(T[v], len(rows[v])):
            ok = True
            for i, x in zip(rows[v], comp):
                w = pairs[i][1]
                room[w] -= x
                vals[i] = x
                ok = ok and room[w] >= 0
            if ok:
                yield from rec(v + 1)
            for i, x in zip(rows[v], comp):
                room[pairs[i][1]] += x

    if all(rows[v] or T[v] == 0 for v in range(nv)):
        yield from rec(0)


@lru_cache(maxsize=4096)
def _grouped_tables(nv: int, pairs: tuple, D: int) -> list[tuple[tuple[int, ...], int]]:
    """All pair tables F of total at most ``D`` with their row multinomials."""
    out = []
    for T in _throughputs(nv, D):
        for F in _tables(list(pairs), T):
            coef = 1
            for t in T:
                coef *= factorial(t)
            for x in F:
                coef //= factorial(x)
            out.append((F, coef))
    return out


def zeta_flow_sum(g: WeightedDigraph, D: int) -> MultiPoly:
    """Sum of beta(f) mult(f) over flows of total value at most ``D``.

    Flows are grouped by their totals F on ordered vertex pairs.  Within a
    group the edges parallel to a pair share F_vw in every possible way, and
    mult(f) splits as a row multinomial in F times one multinomial per pair,
    so each group contributes a product of expanded powers (sum_e b_e)^F_vw.
    """
    ring = g.ring(D)
    limit = (D + 1) * ring._top
    groups: dict[tuple[int, int], list[int]] = {}
    for e, ab in enumerate(g.edges):
        groups.setdefault(ab, []).append(e)
    pairs = list(groups)
    powers = []
    for ab in pairs:
        s = ring.const(0)
        for e in groups[ab]:
            s = s + ring.var(e)
        pw, acc = [ring.const(1).terms], ring.const(1)
        for _ in range(D):
            acc = acc * s
            pw.append(acc.terms)
        powers.append(pw)
    terms: dict[int, int] = {}
    for F, coef in _grouped_tables(g.nv, tuple(pairs), D):
        cur = {0: 1}
        for i, x in enumerate(F):
            if x:
                nxt: dict[int, int] = {}
                for ka, ca in cur.items():
                    for kb, cb in powers[i][x].items():
                        k = ka + kb
                        if k < limit:
                            nxt[k] = nxt.get(k, 0) + ca * cb
                cur = nxt
        for k, c in cur.items():
            terms[k] = terms.get(k, 0) + coef * c
    return ring._like({k: v for k, v in terms.items() if v})


# -- nonperiodic cycles ----------------------------------------------------------------

def is_lyndon(w: Sequence) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def nonperiodic_cycles(g: WeightedDigraph, D: int) -> Iterator[tuple[int, ...]]:
    """Closed edge walks of length at most ``D`` in their Lyndon rotation, one per cycle."""
    m = len(g.edges) if D > 0 else 0
    succ = [[j for j in range(m) if g.edges[j][0] == g.edges[i][1]] for i in range(m)]
    for first in range(m):
        start = g.edges[first][0]
        walk = [first]

        def rec():
            if g.edges[walk[-1]][1] == start and is_lyndon(walk):
                yield tuple(walk)
            if len(walk) == D:
                return
            for j in succ[walk[-1]]:
                if j >= first:
                    walk.append(j)
                    yield from rec()
                    walk.pop()

        yield from rec()


def zeta_lyndon(g: WeightedDigraph, D: int) -> MultiPoly:
    ring = g.ring(D)
    out = ring.const(1)
    for c in nonperiodic_cycles(g, D):
        exps = [0] * len(g.edges)
        for e in c:
            exps[e] += 1
        out = out * ring.monomial(exps).geometric()
    return out


# -- determinant -----------------------------------------------------------------------

def _perm_sign(p: Sequence[int]) -> int:
    s, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


def det_I_minus_B(g: WeightedDigraph, D: int) -> MultiPoly:
    ring = g.ring(D)
    A = [[ring.const(1 if i == j else 0) for j in range(g.nv)] for i in range(g.nv)]
    for e, (a, b) in enumerate(g.edges):
        A[a][b] = A[a][b] - ring.var(e)
    out = ring.const(0)
    for p in permutations(range(g.nv)):
        term = ring.const(_perm_sign(p))
        for i, j in enumerate(p):
            term = term * A[i][j]
            if not term.terms:
                break
        out = out + term
    return out


def fz_identity_check(g: WeightedDigraph, D: int) -> bool:
    return (det_I_minus_B(g, D) * zeta_flow_sum(g, D)).is_one()


def three_way_check(g: WeightedDigraph, D: int) -> dict[str, bool]:
    fs = zeta_flow_sum(g, D)
    ly = zeta_lyndon(g, D)
    inv = det_I_minus_B(g, D).inverse()
    return {"flow=lyndon": fs == ly, "flow=det": fs == inv, "lyndon=det": ly == inv}


# -- words ---------------------------------------------------------------------------

def lyndon_factorization(w: Sequence) -> list[tuple]:
    """Duval's algorithm: nonincreasing Lyndon factors of ``w``."""
    w = tuple(w)
    out, i, n = [], 0, len(w)
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            out.append(w[i:i + j - k])
            i += j - k
    return out


def _word(w) -> tuple[int, ...]:
    return tuple(int(c) for c in w) if isinstance(w, str) else tuple(w)


def word_ring(r: int, D: int) -> MultiPoly:
    return WeightedDigraph.complete(r).ring(D)


def _b(ring: MultiPoly, r: int, pairs) -> MultiPoly:
    exps = [0] * (r * r)
    for i, j in pairs:
        exps[(i - 1) * r + (j - 1)] += 1
    return ring.monomial(exps)


def beta_circ(r: int, w, D: int | None = None) -> MultiPoly:
    w = _word(w)
    ring = word_ring(r, len(w) if D is None else D)
    return _b(ring, r, zip(w, w[1:] + w[:1]))


@dataclass(frozen=True)
class WordMaps:
    factors: tuple[tuple[int, ...], ...]
    beta_dec: MultiPoly
    beta_vert: MultiPoly


def word_maps(r: int, w, D: int | None = None) -> WordMaps:
    """Lyndon factorization, beta_dec and beta_vert of a word over ``1..r``."""
    w = _word(w)
    if any(not 1 <= x <= r for x in w):
        raise ValueError(f"letters must lie in 1..{r}")
    ring = word_ring(r, len(w) if D is None else D)
    factors = tuple(lyndon_factorization(w))
    dec = _b(ring, r, [p for l in factors for p in zip(l, l[1:] + l[:1])])
    vert = _b(ring, r, zip(sorted(w), w))
    return WordMaps(factors, dec, vert)


def vert_sum(r: int, L: int, D: int | None = None) -> MultiPoly:
    """Sum of beta_vert over all words of length ``L``."""
    ring = word_ring(r, L if D is None else D)
    out = ring.const(0)
    for w in product(range(1, r + 1), repeat=L):
        out = out + _b(ring, r, zip(sorted(w), w))
    return out


# -- test families -------------------------------------------------------------------

def small_digraphs(max_vertices: int = 3, max_parallel: int = 2) -> Iterator[WeightedDigraph]:
    for nv in range(max_vertices + 1):
        for ms in product(range(max_parallel + 1), repeat=nv * nv):
            yield WeightedDigraph.from_multiplicities([ms[i * nv:(i + 1) * nv] for i in range(nv)])


def random_digraph(rng: random.Random, nv: int, max_edges: int = 8) -> WeightedDigraph:
    m = rng.randint(0, max_edges)
    return WeightedDigraph(nv, tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(m)))


def random_digraphs(seed: int, count: int, nv: int, max_edges: int = 8) -> list[WeightedDigraph]:
    rng = random.Random(seed)
    return [random_digraph(rng, nv, max_edges) for _ in range(count)]
