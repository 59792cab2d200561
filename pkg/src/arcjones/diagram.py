"""Long-knot diagrams: KDT parsing, validation, Seifert circles, writhe and rotation.

Indexing is 0-based internally: arc ``i`` ends (goes under) at crossing ``i``
and starts at crossing ``i - 1`` (cyclically); the last arc is the special one.
The KDT text format is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

Partarc = tuple[int, int]  # (arc, position along the arc)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


class ValidationError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class Diagram:
    name: str
    sign: tuple[int, ...]
    over: tuple[int, ...]
    over_order: tuple[tuple[int, ...], ...]
    partarc_rot: tuple[tuple[int, ...], ...]

    @property
    def n_cross(self) -> int:
        return len(self.sign)

    @property
    def n_arcs(self) -> int:
        return max(self.n_cross, 1)

    @property
    def star(self) -> int:
        return self.n_arcs - 1

    @property
    def r(self) -> int:
        """Number of vertices of the long-knot arc graph."""
        return max(self.n_cross - 1, 0)

    def partarcs(self) -> list[Partarc]:
        return [(j, k) for j in range(self.n_arcs) for k in range(len(self.partarc_rot[j]))]

    def position(self, c: int) -> int:
        """1-based position of crossing ``c`` in the over-order of its over-arc."""
        return self.over_order[self.over[c]].index(c) + 1

    def strands(self, c: int) -> tuple[Partarc, Partarc, Partarc, Partarc]:
        """(under_in, under_out, over_in, over_out) partarcs at crossing ``c``."""
        n = self.n_cross
        w = self.over[c]
        p = self.position(c)
        return (c, len(self.over_order[c])), ((c + 1) % n, 0), (w, p - 1), (w, p)

    def end_crossing(self, pa: Partarc) -> tuple[int, bool]:
        """Crossing where partarc ``pa`` ends and whether it arrives as the under strand."""
        j, k = pa
        oo = self.over_order[j]
        if k == len(oo):
            return j, True
        return oo[k], False

    def rot_of(self, pa: Partarc) -> int:
        return self.partarc_rot[pa[0]][pa[1]]


@dataclass(frozen=True)
class SeifertCircles:
    circles: tuple[tuple[Partarc, ...], ...]
    rot: tuple[int, ...]
    special_index: int


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    circles: SeifertCircles | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


# -- text format -----------------------------------------------------------------

_KEYS = {"knot", "crossings", "sign", "over", "overorder", "rot"}


def parse_kdt(text: str) -> Diagram:
    name = None
    ncross = None
    signs: dict[int, int] = {}
    overs: dict[int, int] = {}
    orders: dict[int, tuple[int, ...]] = {}
    rots: dict[int, tuple[int, ...]] = {}

    def ints(tok, ln):
        try:
            return [int(x) for x in tok]
        except ValueError:
            raise ParseError(f"expected integers, got {' '.join(tok)!r}", ln) from None

    def once(store, key, ln, what):
        if key in store:
            raise ParseError(f"duplicate {what} {key}", ln)

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key, args = tok[0], tok[1:]
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", ln)
        if key == "knot":
            if name is not None:
                raise ParseError("duplicate knot line", ln)
            if len(args) != 1:
                raise ParseError("knot takes one name", ln)
            name = args[0]
        elif key == "crossings":
            if ncross is not None:
                raise ParseError("duplicate crossings line", ln)
            (ncross,) = ints(args, ln) if len(args) == 1 else (None,)
            if ncross is None or ncross < 0:
                raise ParseError("crossings takes one non-negative integer", ln)
        else:
            if ncross is None:
                raise ParseError(f"{key} before crossings", ln)
            if key == "sign":
                if len(args) != 2 or args[1] not in ("+", "-"):
                    raise ParseError("sign takes <i> <+|->", ln)
                (i,) = ints(args[:1], ln)
                _check_index(i, ncross, ln, "crossing")
                once(signs, i, ln, "sign")
                signs[i] = 1 if args[1] == "+" else -1
            elif key == "over":
                if len(args) != 2:
                    raise ParseError("over takes <i> <v>", ln)
                i, v = ints(args, ln)
                _check_index(i, ncross, ln, "crossing")
                _check_index(v, ncross, ln, "arc")
                once(overs, i, ln, "over")
                overs[i] = v
            elif key == "overorder":
                if len(args) < 2:
                    raise ParseError("overorder takes <j> <i1> ...", ln)
                j, *cs = ints(args, ln)
                _check_index(j, ncross, ln, "arc")
                for c in cs:
                    _check_index(c, ncross, ln, "crossing")
                once(orders, j, ln, "overorder")
                orders[j] = tuple(cs)
            else:
                if len(args) < 2:
                    raise ParseError("rot takes <j> <k0> ...", ln)
                j, *ks = ints(args, ln)
                _check_index(j, max(ncross, 1), ln, "arc")
                once(rots, j, ln, "rot")
                rots[j] = tuple(ks)

    if name is None:
        raise ParseError("missing knot line")
    if ncross is None:
        raise ParseError("missing crossings line")
    for i in range(1, ncross + 1):
        if i not in signs:
            raise ParseError(f"missing sign for crossing {i}")
        if i not in overs:
            raise ParseError(f"missing over for crossing {i}")
    narcs = max(ncross, 1)
    for j in range(1, narcs + 1):
        if j not in rots:
            raise ParseError(f"missing rot for arc {j}")
    return Diagram(
        name=name,
        sign=tuple(signs[i] for i in range(1, ncross + 1)),
        over=tuple(overs[i] - 1 for i in range(1, ncross + 1)),
        over_order=tuple(tuple(c - 1 for c in orders.get(j, ())) for j in range(1, narcs + 1)),
        partarc_rot=tuple(rots[j] for j in range(1, narcs + 1)),
    )


def _check_index(i, n, ln, what):
    if not 1 <= i <= n:
        raise ParseError(f"{what} index {i} out of range 1..{n}", ln)


def render_kdt(d: Diagram) -> str:
    lines = [f"knot {d.name}", f"crossings {d.n_cross}"]
    for i, s in enumerate(d.sign, 1):
        lines.append(f"sign {i} {'+' if s > 0 else '-'}")
    for i, v in enumerate(d.over, 1):
        lines.append(f"over {i} {v + 1}")
    for j, oo in enumerate(d.over_order, 1):
        if oo:
            lines.append(f"overorder {j} " + " ".join(str(c + 1) for c in oo))
    for j, rr in enumerate(d.partarc_rot, 1):
        lines.append(f"rot {j} " + " ".join(str(k) for k in rr))
    return "\n".join(lines) + "\n"


def load(path) -> Diagram:
    return parse_kdt(Path(path).read_text())


# -- validation --------------------------------------------------------------------

def _structural_violations(d: Diagram) -> list[str]:
    out = []
    n = d.n_cross
    if len(d.over) != n:
        out.append("over list length differs from crossing count")
        return out
    if len(d.over_order) != d.n_arcs or len(d.partarc_rot) != d.n_arcs:
        out.append("per-arc data has the wrong length")
        return out
    for i, s in enumerate(d.sign):
        if s not in (1, -1):
            out.append(f"crossing {i + 1}: sign {s} not in {{+1,-1}}")
    for j in range(d.n_arcs):
        expected = sorted(i for i in range(n) if d.over[i] == j)
        if sorted(d.over_order[j]) != expected:
            out.append(f"arc {j + 1}: overorder is not a permutation of its over-crossings")
        if len(d.partarc_rot[j]) != len(d.over_order[j]) + 1:
            out.append(f"arc {j + 1}: rot needs {len(d.over_order[j]) + 1} entries")
    for i in range(n):
        if d.over[i] in (i, (i + 1) % n):
            out.append(f"crossing {i + 1}: kink (over arc {d.over[i] + 1})")
    return out


def check(d: Diagram) -> ValidationReport:
    report = ValidationReport(_structural_violations(d))
    if report.violations:
        return report
    circles = seifert_circles(d)
    report.circles = circles
    for idx, rot in enumerate(circles.rot):
        if rot not in (1, -1):
            report.violations.append(f"Seifert circle {idx + 1} has rotation {rot}, expected +-1")
    return report


def validate(d: Diagram) -> ValidationReport:
    report = check(d)
    if not report.ok:
        raise ValidationError(report.violations)
    return report


def seifert_successor(d: Diagram, pa: Partarc) -> Partarc:
    if d.n_cross == 0:
        return pa
    c, under = d.end_crossing(pa)
    ui, uo, oi, oo = d.strands(c)
    return oo if under else uo


def seifert_circles(d: Diagram) -> SeifertCircles:
    seen: set[Partarc] = set()
    circles = []
    for start in d.partarcs():
        if start in seen:
            continue
        cyc = []
        pa = start
        while pa not in seen:
            seen.add(pa)
            cyc.append(pa)
            pa = seifert_successor(d, pa)
        circles.append(tuple(cyc))
    star_last = (d.star, len(d.over_order[d.star]))
    special = next(i for i, c in enumerate(circles) if star_last in c)
    rots = tuple(sum(d.rot_of(p) for p in c) for c in circles)
    return SeifertCircles(tuple(circles), rots, special)


def writhe(d: Diagram) -> int:
    return sum(d.sign)


def rotation(d: Diagram) -> int:
    """Circles agreeing with the special one minus circles opposing it."""
    sc = seifert_circles(d)
    ref = sc.rot[sc.special_index]
    return ref * sum(r for i, r in enumerate(sc.rot) if i != sc.special_index)


def diagram_stats(d: Diagram, n: int = 1) -> tuple[int, int, Fraction]:
    w = writhe(d)
    rk = rotation(d)
    return w, rk, Fraction(n * n * w + n * rk, 2)


def mirror(d: Diagram) -> Diagram:
    return Diagram(
        name=d.name + "_mirror" if not d.name.endswith("_mirror") else d.name[: -len("_mirror")],
        sign=tuple(-s for s in d.sign),
        over=d.over,
        over_order=d.over_order,
        partarc_rot=tuple(tuple(-k for k in rr) for rr in d.partarc_rot),
    )


def unknot() -> Diagram:
    return Diagram("unknot0", (), (), ((),), ((1,),))
