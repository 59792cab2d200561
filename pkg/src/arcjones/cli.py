"""Command-line front end.

Exit codes: 0 on success, 1 when a verification reports a mismatch, 2 on
parse or validation errors.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .diagram import ParseError, ValidationError, load as _read, validate
from .invariants import METHODS, alexander, compare, jones_arcsum, mmr_report, rmatrix_jones
from .poly import render

OK, MISMATCH, BAD_INPUT = 0, 1, 2


def load(path):
    d = _read(path)
    validate(d)
    return d


def _ferm(d, n):
    from .qalg import colored_jones_ferm

    return colored_jones_ferm(d, n)


COLORED = {**METHODS, "ferm": _ferm}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _orders(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("orders must be positive")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcjones", description="Knot invariants from arc graphs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("alexander", help="Alexander polynomial")
    s.add_argument("path")

    s = sub.add_parser("jones", help="Jones polynomial")
    s.add_argument("path")
    s.add_argument("--method", choices=("arcsum", "rmatrix"), default="arcsum")

    s = sub.add_parser("colored", help="colored Jones polynomial J_n")
    s.add_argument("path")
    s.add_argument("-n", type=_positive, default=1)
    s.add_argument("--method", choices=sorted(COLORED), default="flow")

    s = sub.add_parser("verify", help="cross-check every route against the flow sum")
    s.add_argument("path")
    s.add_argument("--max-n", type=_positive, default=2)
    s.add_argument("--ferm", action="store_true", help="include the non-commutative route")

    s = sub.add_parser("mmr", help="MMR convergence table")
    s.add_argument("path")
    s.add_argument("--orders", type=_orders, default=(10, 20, 40))
    s.add_argument("-D", type=_positive, default=4)

    s = sub.add_parser("selftest", help="self-contained algebraic checks")
    tests = s.add_subparsers(dest="what", required=True)
    z = tests.add_parser("zeta")
    z.add_argument("--seed", type=int, default=0)
    z.add_argument("--max-vertices", type=_positive, default=4)
    z.add_argument("--degree", type=_positive, default=5)
    z.add_argument("--count", type=_positive, default=20)
    q = tests.add_parser("qmm")
    q.add_argument("--degree", type=_positive, default=3)
    q.add_argument("--fixtures", type=Path, default=None)
    return p


def _alexander(a) -> int:
    print(render(alexander(load(a.path))))
    return OK


def _jones(a) -> int:
    d = load(a.path)
    print(render(jones_arcsum(d) if a.method == "arcsum" else rmatrix_jones(d)))
    return OK


def _colored(a) -> int:
    print(render(COLORED[a.method](load(a.path), a.n)))
    return OK


def _verify(a) -> int:
    d = load(a.path)
    status = OK
    for n in range(1, a.max_n + 1):
        print(f"# n={n}")
        values = {m: f(d, n) for m, f in METHODS.items()}
        if n == 1:
            values["arcsum"] = jones_arcsum(d)
            values["rmatrix"] = rmatrix_jones(d)
        if a.ferm:
            values["ferm"] = _ferm(d, n)
        ref = values.pop("flow")
        for m in sorted(values):
            verdict = compare(values[m], ref)
            if verdict.startswith("MISMATCH"):
                status = MISMATCH
            print(f"{m} vs flow: {verdict}")
    return status


def _mmr(a) -> int:
    r = mmr_report(load(a.path), a.orders, a.D)
    print("\n".join(r.lines()))
    return OK if r.monotone else MISMATCH


def _selftest_zeta(a) -> int:
    from .zeta import random_digraphs, three_way_check, word_maps

    status = OK
    k = 0
    for nv in range(1, a.max_vertices + 1):
        for g in random_digraphs(a.seed + nv, a.count, nv):
            res = three_way_check(g, a.degree)
            ok = all(res.values())
            status = status if ok else MISMATCH
            edges = " ".join(f"{i}>{j}" for i, j in g.edges)
            print(f"digraph {k} nv={nv} edges=[{edges}] D={a.degree}: {'PASS' if ok else 'FAIL'}")
            k += 1
    wm = word_maps(5, "34512421231242")
    print("word 34512421231242 factors " + " ".join("".join(map(str, f)) for f in wm.factors))
    print(f"word 34512421231242 beta_dec {wm.beta_dec}")
    return status


def _selftest_qmm(a) -> int:
    from .qalg import Generator, QMatrix, build_Bprime, commutative_image, det_I_minus, ferm, ferm_inverse_check

    status = OK

    def report(name, ok):
        nonlocal status
        status = status if ok else MISMATCH
        print(f"{name}: {'PASS' if ok else 'FAIL'}")

    for r in (1, 2, 3):
        A = QMatrix([[Generator("z", 0, i) for _ in range(r)] for i in range(r)])
        report(f"generic {r}x{r} ferm*inverse D={a.degree}", ferm_inverse_check(A, a.degree))
    if a.fixtures is not None:
        for path in sorted(a.fixtures.glob("*.kdt")):
            d = load(path)
            if d.n_cross == 0:
                continue
            A = build_Bprime(d)
            report(f"{d.name} q=1 ferm = det(I-B')", commutative_image(ferm(A)) == det_I_minus(A))
            if A.r <= 3:
                report(f"{d.name} ferm*inverse D={a.degree}", ferm_inverse_check(A, a.degree))
    return status


def _selftest(a) -> int:
    return _selftest_zeta(a) if a.what == "zeta" else _selftest_qmm(a)


HANDLERS = {
    "alexander": _alexander,
    "jones": _jones,
    "colored": _colored,
    "verify": _verify,
    "mmr": _mmr,
    "selftest": _selftest,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        return HANDLERS[args.cmd](args)
    except (ParseError, ValidationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
