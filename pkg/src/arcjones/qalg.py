"""Non-commutative transition matrices and their quantum MacMahon inverse.

A word is a tuple of matrix positions ``(row, col)``; since every indeterminate
sits in exactly one entry, a position names its generator.  Entries carry their
``q``-power prefix, so the commutation relations act on entries and the prefix
only enters at n-evaluation.  Coefficients are Laurent polynomials in ``q``,
identified with ``t`` throughout.  Canonical words are sorted by column and
then by row.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterator, Sequence

from .arcgraph import build_arc_graph
from .diagram import Diagram
from .flows import Flow, enumerate_flows, flow_exc, flow_mult_q
from .invariants import colored_jones_flow, compare, framing_shift
from .poly import ONE, ZERO, LaurentPoly, t_pow

Pos = tuple[int, int]
Word = tuple[Pos, ...]


class NonTerminating(RuntimeError):
    pass


class MalformedWord(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    kind: str  # "u", "r" or "z"
    sign: int  # +-1 for u and r, 0 for z
    vertex: int  # arc (row of B_K) the indeterminate belongs to
    qpow: int = 0  # the entry is q^qpow times the indeterminate

    def __str__(self):
        if self.kind == "z":
            return f"z_{self.vertex + 1}"
        return f"{self.kind}{'+' if self.sign > 0 else '-'}_{self.vertex + 1}"

    def same(self, kind: str, sign: int | None = None) -> bool:
        """Equality up to a power of q."""
        return self.kind == kind and (sign is None or self.sign == sign)


def _is(g: Generator | None, kind: str, sign: int | None = None) -> bool:
    if g is None:
        return kind == "z"
    return g.same(kind, sign)


@dataclass
class QMatrix:
    entries: list[list[Generator | None]]
    rows: tuple[int, ...] = ()  # arc labels of the rows
    cols: tuple[int, ...] = ()

    def __post_init__(self):
        r = len(self.entries)
        if any(len(row) != r for row in self.entries):
            raise ValueError("matrix must be square")
        if not self.rows:
            self.rows = tuple(range(r))
        if not self.cols:
            self.cols = tuple(range(r))
        seen = set()
        for row in self.entries:
            for g in row:
                if g is not None and g.kind != "z":
                    if (g.kind, g.vertex) in seen:
                        raise ValueError(f"indeterminate {g} appears twice")
                    seen.add((g.kind, g.vertex))

    @property
    def r(self) -> int:
        return len(self.entries)

    def __getitem__(self, pos: Pos) -> Generator | None:
        return self.entries[pos[0]][pos[1]]

    def _non_z(self, j: int) -> list[Generator]:
        return [self.entries[i][j] for i in range(self.r) if not _is(self.entries[i][j], "z")]

    def L(self) -> frozenset[int]:
        """Columns whose last non-z entry is a u."""
        return frozenset(j for j in range(self.r) if self._non_z(j) and self._non_z(j)[-1].kind == "u")

    def check_columns(self) -> bool:
        for j in range(self.r):
            col = self._non_z(j)
            us = [k for k, g in enumerate(col) if g.kind == "u"]
            if len(us) > 1 or (us and us[0] not in (0, len(col) - 1)):
                return False
        return True

    def permuted(self, R: Sequence[int], C: Sequence[int]) -> "QMatrix":
        """Rows in the order ``R`` and columns in the order ``C`` (lists of current indices)."""
        ent = [[self.entries[i][j] for j in C] for i in R]
        return QMatrix(ent, tuple(self.rows[i] for i in R), tuple(self.cols[j] for j in C))

    def render(self) -> str:
        w = max((len(_entry_str(g)) for row in self.entries for g in row), default=1)
        return "\n".join("  ".join(_entry_str(g).rjust(w) for g in row) for row in self.entries)


def _entry_str(g: Generator | None) -> str:
    if g is None:
        return "0"
    return f"q^{g.qpow}*{g}" if g.qpow else str(g)


# -- construction from a diagram -----------------------------------------------------

def build_B(d: Diagram) -> QMatrix:
    g = build_arc_graph(d)
    r = g.r
    ent: list[list[Generator | None]] = [[Generator("z", 0, i) for _ in range(r)] for i in range(r)]
    for e in g.edges:
        v, w = e.src[0], e.dst[0]
        kind = "u" if e.blue else "r"
        if ent[v][w].kind != "z":
            raise ValueError(f"two transitions from arc {v} to arc {w}")
        ent[v][w] = Generator(kind, g.sign[v], v, -e.rot)
    return QMatrix(ent)


def blocks(d: Diagram) -> tuple[dict, dict]:
    """T(i) and S(i) for every arc ``i`` including the special one, along the arc."""
    n, star = d.n_cross, d.star
    T, S = {}, {}
    for i in range(n):
        T[i] = [c for c in d.over_order[i] if c != star]
        S[i] = [(c + 1) % n for c in d.over_order[i] if (c + 1) % n != star]
    return T, S


def row_col_orders(d: Diagram) -> tuple[list[int], list[int]]:
    """The row order R and column order C of B'_K.

    Arcs under the special arc lie outside every block of the long knot; their
    T block is appended to R and their S block, listed like the others, to C.
    """
    r, star = d.r, d.star
    T, S = blocks(d)
    s_blocks = [(i, list(reversed(S[i]))) for i in reversed(range(r))] + [(star, list(reversed(S[star])))]
    flat = [a for _, b in s_blocks for a in b]

    def where(i):  # -1 before the block S(i), +1 after it, 0 if undecided
        if i not in flat or not S[i]:
            return 0
        k = flat.index(i)
        idx = [flat.index(a) for a in S[i]]
        return -1 if k < min(idx) else (1 if k > max(idx) else 0)

    R = []
    for i in range(r):
        R.extend(reversed(T[i]) if where(i) < 0 else T[i])
    R.extend(T[star])
    C = []
    for i, b in s_blocks:
        C.extend(list(reversed(b)) if i != star and where(i) > 0 else b)
    return R, C


def build_Bprime(d: Diagram) -> QMatrix:
    B = build_B(d)
    R, C = row_col_orders(d)
    if sorted(R) != list(range(B.r)) or sorted(C) != list(range(B.r)):
        raise ValueError("row or column order is not a permutation")
    return B.permuted(R, C)


def specialize(A: QMatrix) -> list[list[LaurentPoly]]:
    """q = 1, z = 0, u^s = t^-s, r^s = 1 - t^-s."""
    out = []
    for row in A.entries:
        cur = []
        for g in row:
            if g is None or g.kind == "z":
                cur.append(ZERO)
            elif g.kind == "u":
                cur.append(t_pow(-g.sign))
            else:
                cur.append(ONE - t_pow(-g.sign))
        out.append(cur)
    return out


# -- the algebra ---------------------------------------------------------------------

Q = t_pow(1)
QINV = t_pow(-1)


def _key(p: Pos) -> tuple[int, int]:
    return (p[1], p[0])


def _rule2_exponent(a, b, c, d) -> int:
    if _is(c, "u") and _is(b, "r"):
        return -1 + c.sign
    if _is(b, "u") and _is(c, "r"):
        return -1 + b.sign
    if _is(c, "u") and _is(b, "u") and _is(d, "r") and _is(a, "z"):
        return -1 + c.sign
    if _is(b, "u") and _is(c, "u") and _is(a, "r") and _is(d, "z"):
        return -1 + b.sign
    if _is(b, "u") and _is(c, "u") and _is(a, "r") and _is(d, "r"):
        return -1 + b.sign + c.sign
    return -1


def swap_rule(A: QMatrix, x: Pos, y: Pos) -> list[tuple[LaurentPoly, tuple[Pos, ...]]]:
    """Rewrite the out-of-order pair ``x y`` as a combination of pairs."""
    (i1, j1), (i2, j2) = x, y
    if j1 == j2:  # same column, lower row first: ca = q ac
        return [(Q, (y, x))]
    if i1 == i2:  # same row: ba = q^-2 ab when a u^- is involved
        neg = _is(A[x], "u", -1) or _is(A[y], "u", -1)
        return [(t_pow(-2) if neg else ONE, (y, x))]
    if i2 > i1:  # x = b, y = c
        a, d = A[(i1, j2)], A[(i2, j1)]
        return [(t_pow(_rule2_exponent(a, A[x], A[y], d)), (y, x))]
    # x = d, y = a: da = ad - q^-1 cb + q bc, and bc = q^e cb
    cpos, bpos = (i1, j2), (i2, j1)
    out = [(ONE, (y, x))]
    c, b = A[cpos], A[bpos]
    if c is not None and b is not None:
        e = _rule2_exponent(A[y], b, c, A[x])
        coef = t_pow(1 + e) - QINV
        if not coef.is_zero():
            out.append((coef, (cpos, bpos)))
    return out


def is_canonical(w: Word) -> bool:
    return all(_key(w[k]) <= _key(w[k + 1]) for k in range(len(w) - 1))


def _inversions(w: Word) -> list[int]:
    return [k for k in range(len(w) - 1) if _key(w[k]) > _key(w[k + 1])]


class Normalizer:
    """Rewrites words of one matrix into canonical form.

    ``choose`` picks which adjacent inversion to resolve; different choices
    give independent routes for confluence testing.
    """

    def __init__(self, A: QMatrix, choose: Callable[[list[int]], int] | None = None, budget: int = 10**6):
        self.A = A
        self.choose = choose or (lambda inv: inv[0])
        self.budget = budget
        self.steps = 0
        self._memo: dict[Word, dict[Word, LaurentPoly]] = {}

    def word(self, w: Word) -> dict[Word, LaurentPoly]:
        w = tuple(w)
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        inv = _inversions(w)
        if not inv:
            out = {w: ONE}
        else:
            self.steps += 1
            if self.steps > self.budget:
                raise NonTerminating(f"more than {self.budget} rewrite steps")
            k = self.choose(inv)
            out: dict[Word, LaurentPoly] = {}
            for coef, pair in swap_rule(self.A, w[k], w[k + 1]):
                for v, c in self.word(w[:k] + pair + w[k + 2:]).items():
                    out[v] = out.get(v, ZERO) + coef * c
            out = {v: c for v, c in out.items() if not c.is_zero()}
        self._memo[w] = out
        return out

    def poly(self, p: "NCPoly") -> "NCPoly":
        out: dict[Word, LaurentPoly] = {}
        for w, c in p.terms.items():
            for v, cv in self.word(w).items():
                out[v] = out.get(v, ZERO) + c * cv
        return NCPoly(p.A, out)


@dataclass
class NCPoly:
    A: QMatrix = field(repr=False)
    terms: dict[Word, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {w: c for w, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def const(cls, A: QMatrix, c: LaurentPoly = ONE) -> "NCPoly":
        return cls(A, {(): c})

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return NCPoly(self.A, out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + other.scale(-ONE)

    def scale(self, c: LaurentPoly) -> "NCPoly":
        return NCPoly(self.A, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        out: dict[Word, LaurentPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return NCPoly(self.A, out)

    def truncate(self, D: int) -> "NCPoly":
        return NCPoly(self.A, {w: c for w, c in self.terms.items() if len(w) <= D})

    def is_canonical(self) -> bool:
        return all(is_canonical(w) for w in self.terms)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            gens = " ".join(str(self.A[p]) for p in w) or "1"
            parts.append(f"({self.terms[w]}) · {gens}")
        return " + ".join(parts)


def nc_normalize(p: NCPoly, choose=None, budget: int = 10**6) -> NCPoly:
    return Normalizer(p.A, choose, budget).poly(p)


def random_choice(seed: int) -> Callable[[list[int]], int]:
    rng = random.Random(seed)
    return lambda inv: rng.choice(inv)


# -- determinants --------------------------------------------------------------------

def _inv_count(p: Sequence[int]) -> int:
    return sum(1 for a, b in combinations(range(len(p)), 2) if p[a] > p[b])


def det_q(A: QMatrix, J: Sequence[int] | None = None) -> NCPoly:
    """Quantum determinant of the principal submatrix on positions ``J`` (all of A by default)."""
    J = list(range(A.r)) if J is None else list(J)
    out: dict[Word, LaurentPoly] = {}
    for perm in permutations(range(len(J))):
        w = tuple((J[perm[c]], J[c]) for c in range(len(J)))
        if any(A[p] is None for p in w):
            continue
        k = _inv_count(perm)
        out[w] = out.get(w, ZERO) + t_pow(-k) * (-1) ** k
    return NCPoly(A, out)


def ferm(A: QMatrix) -> NCPoly:
    out = NCPoly(A)
    for size in range(A.r + 1):
        for J in combinations(range(A.r), size):
            out = out + det_q(A, J).scale(ONE * (-1) ** size)
    return out


def commutative_image(p: NCPoly) -> dict[tuple[Pos, ...], int]:
    """q = 1 with all generators commuting."""
    out: dict[tuple[Pos, ...], int] = {}
    for w, c in p.terms.items():
        k = tuple(sorted(w))
        out[k] = out.get(k, 0) + c.at_one()
    return {k: v for k, v in out.items() if v}


def det_I_minus(A: QMatrix) -> dict[tuple[Pos, ...], int]:
    """det(I - A) with commuting entries, as monomials in positions."""
    out: dict[tuple[Pos, ...], int] = {}
    r = A.r
    for perm in permutations(range(r)):
        sgn = (-1) ** _inv_count(perm)
        terms = [((), sgn)]
        for i in range(r):
            j = perm[i]
            opts = []
            if i == j:
                opts.append(((), 1))
            if A[(i, j)] is not None:
                opts.append((((i, j),), -1))
            terms = [(m + m2, c * c2) for m, c in terms for m2, c2 in opts]
        for m, c in terms:
            k = tuple(sorted(m))
            out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


# -- quantum MacMahon ----------------------------------------------------------------

def _multiset_perms(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    total = sum(counts)
    counts = list(counts)
    seq = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for j, c in enumerate(counts):
            if c:
                counts[j] -= 1
                seq.append(j)
                yield from rec()
                seq.pop()
                counts[j] += 1

    yield from rec()


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for x in range(total, -1, -1):
        for rest in _compositions(total - x, parts - 1):
            yield (x,) + rest


def G_coefficient(A: QMatrix, m: Sequence[int], by_label: bool = False) -> NCPoly:
    """Coefficient of the x-monomial with exponents ``m`` in prod_i X_i^m_i, unnormalized.

    ``m`` is aligned with the rows.  By default row ``i`` is paired with column
    ``i``.  With ``by_label`` it is paired with the column carrying the same arc
    label instead, which is what makes the monomials of a matrix with
    separately permuted rows and columns into flows.  The x's commute with the
    entries; sorting them into column order uses x_j x_i = q x_i x_j for
    i < j, one q per inversion.
    """
    if by_label:
        col_of = {lab: j for j, lab in enumerate(A.cols)}
        pair = [col_of[A.rows[i]] for i in range(A.r)]
    else:
        pair = list(range(A.r))
    counts = [0] * A.r
    for i, k in enumerate(m):
        counts[pair[i]] += k
    rows = [i for i, k in enumerate(m) for _ in range(k)]
    out: dict[Word, LaurentPoly] = {}
    for cols in _multiset_perms(counts):
        w = tuple(zip(rows, cols))
        if any(A[p] is None for p in w):
            continue
        c = t_pow(_inv_count(cols))
        out[w] = out.get(w, ZERO) + c
    return NCPoly(A, out)


def qmm_terms(A: QMatrix, D: int, by_label: bool = False) -> Iterator[tuple[tuple[int, ...], NCPoly]]:
    for total in range(D + 1):
        for m in _compositions(total, A.r):
            yield m, G_coefficient(A, m, by_label)


def qmm_inverse(A: QMatrix, D: int, normalizer: Normalizer | None = None, by_label: bool = False) -> NCPoly:
    """Sum of G_A(m) over |m| <= D, normalized."""
    if D < 0:
        raise ValueError("D must be non-negative")
    norm = normalizer or Normalizer(A)
    out = NCPoly(A)
    for _, p in qmm_terms(A, D, by_label):
        out = out + norm.poly(p)
    return out


def ferm_inverse_check(A: QMatrix, D: int) -> bool:
    """Ferm(A) times the truncated inverse is 1 up to words of length D."""
    norm = Normalizer(A)
    prod = norm.poly(ferm(A) * qmm_inverse(A, D, norm)).truncate(D)
    return prod == NCPoly.const(A)


# -- n-evaluation --------------------------------------------------------------------

def _column_trace(gens: list[Generator], n: int) -> LaurentPoly:
    out = ONE
    k = 0
    p0 = 0
    while k < len(gens) and gens[k].kind == "u":
        if gens[k] != gens[0]:
            raise MalformedWord("two different u generators in one column")
        p0 += 1
        k += 1
    if p0:
        out = out * t_pow(-gens[0].sign * p0 * n)
    before = p0
    while k < len(gens):
        g = gens[k]
        if g.kind != "r":
            raise MalformedWord(f"{g} in a non-extremal position")
        p = 0
        while k < len(gens) and gens[k] == g:
            p += 1
            k += 1
        for j in range(p):
            m = n - j - before
            if m == 0:
                return ZERO
            out = out * (ONE - t_pow(-g.sign * m))
        before += p
    return out


def evaluate_word(A: QMatrix, w: Word, n: int) -> LaurentPoly:
    if not is_canonical(w):
        raise MalformedWord("n-evaluation needs a canonical word")
    gens = [A[p] for p in w]
    if any(_is(g, "z") for g in gens):
        return ZERO
    L = A.L()
    out = t_pow(sum(g.qpow for g in gens))
    for j in range(A.r):
        col = [A[p] for p in w if p[1] == j]
        if j in L:
            col.reverse()
        out = out * _column_trace(col, n)
        if out.is_zero():
            return ZERO
    return out


def n_evaluate(p: NCPoly, n: int) -> LaurentPoly:
    if n < 1:
        raise ValueError("n must be positive")
    out = ZERO
    for w, c in p.terms.items():
        out = out + c * evaluate_word(p.A, w, n)
    return out


# -- comparison with flows -----------------------------------------------------------

def word_flow(A: QMatrix, g, w: Word) -> tuple[int, ...] | None:
    """Flow values (aligned with ``g.edges``) of a z-free word, or None."""
    vals = [0] * len(g.edges)
    index = {}
    for k, e in enumerate(g.edges):
        index[(e.src[0], "u" if e.blue else "r")] = k
    for p in w:
        gen = A[p]
        if gen is None or gen.kind == "z":
            return None
        vals[index[(gen.vertex, gen.kind)]] += 1
    return tuple(vals)


def canonical_word(A: QMatrix, f: Flow) -> Word:
    where = {}
    for i in range(A.r):
        for j in range(A.r):
            gen = A[(i, j)]
            if gen is not None and gen.kind != "z":
                where[(gen.vertex, gen.kind)] = (i, j)
    w = []
    for e, x in zip(f.graph.edges, f.values):
        w.extend([where[(e.src[0], "u" if e.blue else "r")]] * x)
    return tuple(sorted(w, key=_key))


@dataclass
class NoncReport:
    name: str
    n: int
    D: int
    result: str
    flows_checked: int
    flows_failed: list = field(default_factory=list)
    value: LaurentPoly | None = None

    @property
    def ok(self) -> bool:
        return not self.result.startswith("MISMATCH") and not self.flows_failed

    def lines(self) -> list[str]:
        out = [f"{self.name} n={self.n} D={self.D}: ferm vs flow: {self.result}",
               f"  per-flow G(f) = q^exc mult_q C(f): {self.flows_checked - len(self.flows_failed)}/{self.flows_checked}"]
        for f, got, want in self.flows_failed[:5]:
            out.append(f"    flow {f}: got {got}, expected {want}")
        return out


def _ferm_sum(d: Diagram, n: int, D: int | None, on_word=None) -> LaurentPoly:
    A = build_Bprime(d)
    D = A.r * n if D is None else D
    norm = Normalizer(A)
    total = ZERO
    for _, p in qmm_terms(A, D, by_label=True):
        q = norm.poly(p)
        total = total + n_evaluate(q, n)
        if on_word is not None:
            for w, c in q.terms.items():
                on_word(A, w, c)
    return total


def colored_jones_ferm(d: Diagram, n: int, D: int | None = None) -> LaurentPoly:
    """J_n from the n-evaluated inverse of Ferm(B'_K), truncated at degree ``D`` (default r n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if d.n_cross == 0:
        return ONE
    return _ferm_sum(d, n, D).shift(framing_shift(d, n))


def verify_nonc(d: Diagram, n: int, D: int | None = None) -> NoncReport:
    """Evaluate the truncated inverse of Ferm(B'_K) and compare with the flow sum.

    Entries carry their q^-rot prefix, so the per-flow identity reads
    G(f) = q^exc(f) mult_q(f) C(f) on the canonical entry word C(f).
    """
    if d.n_cross == 0:
        value = ONE
        return NoncReport(d.name, n, 0, compare(value, colored_jones_flow(d, n)), 0, [], value)
    g = build_arc_graph(d)
    D = d.r * n if D is None else D
    G: dict[tuple, dict[Word, LaurentPoly]] = {}

    def collect(A, w, c):
        f = word_flow(A, g, w)
        if f is not None:
            G.setdefault(f, {})
            G[f][w] = G[f].get(w, ZERO) + c

    total = _ferm_sum(d, n, D, collect)
    A = build_Bprime(d)
    failed = []
    checked = 0
    for f in enumerate_flows(g, n):
        if f.is_zero():
            continue
        checked += 1
        want = {canonical_word(A, f): flow_mult_q(f).shift(flow_exc(f))}
        got = {w: c for w, c in G.get(f.values, {}).items() if not c.is_zero()}
        if got != want:
            failed.append((f.values, {str(k): str(v) for k, v in got.items()}, str(next(iter(want.values())))))
    value = total.shift(framing_shift(d, n))
    return NoncReport(d.name, n, D, compare(value, colored_jones_flow(d, n)), checked, failed, value)
