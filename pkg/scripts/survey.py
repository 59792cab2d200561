"""Run every route on every fixture and print a table.

    python3 scripts/survey.py --max-n 2 --ferm-max-n 1
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from arcjones.diagram import load
from arcjones.invariants import METHODS, compare, mmr_report
from arcjones.qalg import Normalizer, build_Bprime, qmm_terms, random_choice, verify_nonc

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class SurveyConfig:
    fixtures: Path = ROOT / "fixtures"
    max_n: int = 2
    ferm_max_n: int = 1
    confluence_seeds: int = 3
    confluence_degree: int = 3
    mmr_orders: tuple[int, ...] = (10, 20, 40)
    mmr_degree: int = 4


def z_free_disagreements(d, seeds: int, D: int) -> int:
    """Words without z on which two rewrite routes disagree."""
    A = build_Bprime(d)
    words = set()
    for _, p in qmm_terms(A, D, by_label=True):
        base = Normalizer(A).poly(p)
        for s in range(seeds):
            diff = base - Normalizer(A, random_choice(s)).poly(p)
            words |= {w for w in diff.terms if all(A[x].kind != "z" for x in w)}
    return len(words)


def main(cfg: SurveyConfig) -> None:
    for path in sorted(cfg.fixtures.glob("*.kdt")):
        d = load(path)
        print(f"== {d.name} ({d.n_cross} crossings)")
        for n in range(1, cfg.max_n + 1):
            t0 = time.perf_counter()
            vals = {m: f(d, n) for m, f in METHODS.items()}
            ref = vals.pop("flow")
            for m in sorted(vals):
                print(f"  n={n} {m} vs flow: {compare(vals[m], ref)}")
            print(f"  n={n} commutative routes {time.perf_counter() - t0:.2f}s")
        if d.n_cross == 0:
            continue
        for n in range(1, cfg.ferm_max_n + 1):
            t0 = time.perf_counter()
            for line in verify_nonc(d, n).lines()[:2]:
                print("  " + line.strip())
            print(f"  ferm n={n} {time.perf_counter() - t0:.2f}s")
        print(f"  z-free route disagreements: {z_free_disagreements(d, cfg.confluence_seeds, cfg.confluence_degree)}")
        if d.name in ("fig8", "trefoil_right", "trefoil_left"):
            for off in (0, 1):
                r = mmr_report(d, cfg.mmr_orders, cfg.mmr_degree, offset=off)
                print(f"  mmr scale 1/(n+{off}): " + " | ".join(r.lines()[1:]))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=SurveyConfig.max_n)
    ap.add_argument("--ferm-max-n", type=int, default=SurveyConfig.ferm_max_n)
    ap.add_argument("--fixtures", type=Path, default=SurveyConfig.fixtures)
    a = ap.parse_args()
    main(SurveyConfig(fixtures=a.fixtures, max_n=a.max_n, ferm_max_n=a.ferm_max_n))
