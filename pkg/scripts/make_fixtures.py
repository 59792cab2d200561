"""Generate KDT fixtures from explicit space curves.

Each fixture is computed from a densely sampled closed curve in R^3: the plane
projection gives crossings, over/under data and signs, and the tangent turning
of the projected curve gives the per-partarc rotation cocycle.  Corner turns at
crossings are split between the incoming and outgoing partarc and a per-crossing
potential makes every value an integer, so the cocycle sums to the true
rotation number on every closed curve that switches strands at crossings.

Usage:  python scripts/make_fixtures.py [outdir]
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

from arcjones.diagram import Diagram, check, render_kdt

TAU = 2 * math.pi
N_SAMPLES = 2400


def sample(fn, n=N_SAMPLES):
    # irrational phase keeps crossings off the sample vertices
    ts = np.linspace(0, TAU, n, endpoint=False) + TAU / (n * math.sqrt(7))
    return np.array([fn(t) for t in ts], dtype=float)


def _wrap(a):
    return (a + math.pi) % TAU - math.pi


def find_crossings(pts):
    """Transverse self-intersections of the projected closed polyline."""
    n = len(pts)
    p = pts[:, :2]
    q = np.roll(p, -1, axis=0)
    d = q - p
    out = []
    for i in range(n):
        j = np.arange(i + 2, n)
        if i == 0:
            j = j[j != n - 1]
        if not len(j):
            continue
        r = d[i]
        s = d[j]
        denom = r[0] * s[:, 1] - r[1] * s[:, 0]
        qp = p[j] - p[i]
        with np.errstate(divide="ignore", invalid="ignore"):
            a = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
            b = (qp[:, 0] * r[1] - qp[:, 1] * r[0]) / denom
        hit = (np.abs(denom) > 1e-15) & (a >= 0) & (a < 1) & (b >= 0) & (b < 1)
        for k in np.nonzero(hit)[0]:
            out.append((i, float(a[k]), int(j[k]), float(b[k])))
    return out


def build(pts, name, *, descending=False, flip=(), star_shift=0, require_outer_star=True):
    n = len(pts)
    seg_dir = np.roll(pts[:, :2], -1, axis=0) - pts[:, :2]
    ang = np.arctan2(seg_dir[:, 1], seg_dir[:, 0])
    turn = np.array([_wrap(ang[k] - ang[k - 1]) for k in range(n)])  # turn at vertex k

    raw = find_crossings(pts)
    events = []  # (param, crossing, is_over)
    cross = []
    for idx, (i, a, j, b) in enumerate(raw):
        zi = pts[i, 2] + a * (pts[(i + 1) % n, 2] - pts[i, 2])
        zj = pts[j, 2] + b * (pts[(j + 1) % n, 2] - pts[j, 2])
        pi_, pj = i + a, j + b
        if descending:
            i_over = pi_ < pj
        else:
            if abs(zi - zj) < 1e-6:
                raise RuntimeError(f"{name}: vertical tie at a crossing")
            i_over = zi > zj
        if idx in flip:
            i_over = not i_over
        over_seg, under_seg = (i, j) if i_over else (j, i)
        o, u = seg_dir[over_seg], seg_dir[under_seg]
        sgn = 1 if o[0] * u[1] - o[1] * u[0] > 0 else -1
        phi = _wrap(ang[over_seg] - ang[under_seg])
        cross.append(dict(sign=sgn, phi=phi, du=float(ang[under_seg])))
        events.append((pi_, idx, i_over))
        events.append((pj, idx, not i_over))
    events.sort()
    m = len(cross)
    if m == 0:
        raise RuntimeError(f"{name}: no crossings")

    # rotate so that the event list starts right after an under event
    under_pos = [k for k, e in enumerate(events) if not e[2]]
    choices = []
    for s in range(m):
        start = (under_pos[s] + 1) % len(events)
        choices.append(events[start:] + events[:start])

    def label(ev):
        order = [e[1] for e in ev if not e[2]]
        lab = {c: i for i, c in enumerate(order)}  # arc i ends at crossing i
        over = [None] * m
        over_order = [[] for _ in range(m)]
        arc = 0
        seq = []  # (crossing label, is_over, param)
        for param, c, is_over in ev:
            seq.append((lab[c], is_over, param))
            if is_over:
                over[lab[c]] = arc
                over_order[arc].append(lab[c])
            else:
                arc += 1
        return lab, over, over_order, seq

    def partarc_rots(ev, lab, seq):
        rots = []
        cur = []
        k = len(seq)
        for idx in range(k):
            c0, o0, p0 = seq[idx - 1]
            c1, o1, p1 = seq[idx]
            s0, s1 = int(math.floor(p0)), int(math.floor(p1))
            theta = 0.0
            v = s0
            while v != s1:
                v = (v + 1) % n
                theta += turn[v]
            inv = {lb: c for c, lb in lab.items()}
            A, B = cross[inv[c0]], cross[inv[c1]]
            beta = A["phi"] if o0 else 0.0
            alpha = -B["phi"] if o1 else 0.0
            val = (theta + beta + alpha - B["du"] + A["du"]) / TAU
            iv = round(val)
            if abs(val - iv) > 1e-6:
                raise RuntimeError(f"{name}: non-integral partarc rotation {val}")
            cur.append(iv)
            if not o1:
                rots.append(cur)
                cur = []
        return rots

    def outer_last_partarc(ev, seq):
        # last partarc of the star arc runs from the event before the final under event
        p0, p1 = seq[-2][2], seq[-1][2]
        if p1 < p0:
            p1 += n
        mid = (p0 + p1) / 2 % n
        k = int(mid)
        x = pts[k, :2] + (mid - k) * seg_dir[k]
        return _ray_escapes(pts, x, skip=k)

    best = None
    for s in range(m):
        ev = choices[(s + star_shift) % m]
        lab, over, over_order, seq = label(ev)
        rots = partarc_rots(ev, lab, seq)
        inv = {lb: c for c, lb in lab.items()}
        d = Diagram(
            name=name,
            sign=tuple(cross[inv[i]]["sign"] for i in range(m)),
            over=tuple(over),
            over_order=tuple(tuple(x) for x in over_order),
            partarc_rot=tuple(tuple(r) for r in rots),
        )
        outer = outer_last_partarc(ev, seq)
        if check(d).ok and (outer or not require_outer_star):
            return d, outer
        if best is None and check(d).ok:
            best = (d, outer)
    if best is None:
        raise RuntimeError(f"{name}: no valid labelling")
    return best


def _ray_escapes(pts, x, skip):
    p = pts[:, :2]
    q = np.roll(p, -1, axis=0)
    for th in np.linspace(0, TAU, 64, endpoint=False):
        r = np.array([math.cos(th), math.sin(th)])
        s = q - p
        denom = r[0] * s[:, 1] - r[1] * s[:, 0]
        qp = p - x
        with np.errstate(divide="ignore", invalid="ignore"):
            a = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
            b = (qp[:, 0] * r[1] - qp[:, 1] * r[0]) / denom
        hit = (np.abs(denom) > 1e-15) & (a > 1e-9) & (b >= 0) & (b < 1)
        hit[skip] = False
        if not hit.any():
            return True
    return False


def all_labellings(pts, name, **kw):
    """Every valid star choice for a curve (used to match a prescribed labelling)."""
    out = []
    m = len(find_crossings(pts))
    for s in range(m):
        d, outer = build(pts, name, star_shift=s, require_outer_star=False, **kw)
        out.append((d, outer))
    return out


# -- curves ----------------------------------------------------------------------

def trefoil(t):
    return (math.sin(t) + 2 * math.sin(2 * t), math.cos(t) - 2 * math.cos(2 * t), -math.sin(3 * t))


def torus(p, q):
    def f(t):
        rr = math.cos(q * t) + 2
        return (rr * math.cos(p * t), rr * math.sin(p * t), -math.sin(q * t))
    return f


def figure8(t):
    rr = 2 + math.cos(2 * t)
    return (rr * math.cos(3 * t), rr * math.sin(3 * t), math.sin(4 * t))


def mirror_curve(fn):
    return lambda t: (lambda p: (p[0], p[1], -p[2]))(fn(t))


def reverse_curve(fn):
    return lambda t: fn(-t)


def fourier_curve(seed, kmax=3, zk=4):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(2, kmax + 1)) / np.arange(1, kmax + 2)
    b = rng.normal(size=(2, kmax + 1)) / np.arange(1, kmax + 2)
    c = rng.normal(size=(2, zk + 1))

    def f(t):
        x = sum(a[0, k] * math.cos((k + 1) * t) + b[0, k] * math.sin((k + 1) * t) for k in range(kmax + 1))
        y = sum(a[1, k] * math.cos((k + 1) * t) + b[1, k] * math.sin((k + 1) * t) for k in range(kmax + 1))
        z = sum(c[0, k] * math.cos((k + 1) * t) + c[1, k] * math.sin((k + 1) * t) for k in range(zk + 1))
        return (x, y, z)
    return f


def with_finger(fn, t0, width, amp, angle):
    """Push a small finger of the curve sideways near parameter ``t0``."""
    dx, dy = math.cos(angle), math.sin(angle)

    def f(t):
        x, y, z = fn(t)
        dt = _wrap(t - t0)
        g = amp * math.exp(-((dt / width) ** 2))
        return (x + g * dx, y + g * dy, z)
    return f


def lissajous(t):
    return (math.cos(3 * t + 0.3), math.cos(2 * t + 0.7), math.cos(5 * t + 0.1))


def inverted(fn, z0):
    """Planar inversion about ``z0``; changes which region is unbounded."""
    def f(t):
        x, y, z = fn(t)
        w = 1 / (complex(x, y) - z0)
        return (w.real, w.imag, z)
    return f


FIG8_SHADOW = inverted(figure8, complex(-1.5, 0.3))

# name -> (curve, crossing flips); flips index raw crossings in curve order
FIXTURES = {
    "trefoil_right": (mirror_curve(trefoil), ()),
    "trefoil_left": (reverse_curve(trefoil), ()),
    "trefoil_4": (FIG8_SHADOW, (0, 3)),
    "trefoil_finger": (with_finger(mirror_curve(trefoil), 0.0, 0.12, 1.5, 0.0), ()),
    "fig8": (FIG8_SHADOW, ()),
    "torus_2_5": (torus(2, 5), ()),
    "stevedore": (lissajous, ()),
    "knot_5_2": (lissajous, (2, 3)),
    "unknot_a": (torus(2, 5), (0, 1)),
    "unknot_b": (lissajous, (2,)),
}


def main(outdir="fixtures"):
    from arcjones.diagram import unknot

    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (curve, flip) in FIXTURES.items():
        d, outer = build(sample(curve), name, flip=flip)
        if not outer:
            raise RuntimeError(f"{name}: no labelling puts the star partarc on the outer face")
        (out / f"{name}.kdt").write_text("# generated by scripts/make_fixtures.py\n" + render_kdt(d))
        print(f"{name}: {d.n_cross} crossings, writhe {sum(d.sign)}")
    (out / "unknot0.kdt").write_text("# 0-crossing unknot\n" + render_kdt(unknot()))


if __name__ == "__main__":
    main(*sys.argv[1:])
