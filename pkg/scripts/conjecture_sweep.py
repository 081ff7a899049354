"""Which m minimises mu_alpha(K(n, k, m))? Closed-form sweep to CSV.

Usage:
    python scripts/conjecture_sweep.py [--n-max 30] [--step 0.05] [--out results/sweep.csv]

Besides the per-(n, k, alpha, m) table, prints the tightest margins found in
the region no proof covers (n < 2k + 2 and alpha > 4/5), which is where a
counterexample would first show up.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from dalpha.verify import conjecture_sweep


@dataclass
class SweepConfig:
    n_max: int = 30
    step: float = 0.05
    out: Path = Path("results/sweep.csv")
    show: int = 8

    @property
    def alphas(self) -> list[float]:
        count = int(round(1 / self.step))
        return [round(i * self.step, 12) for i in range(1, count)]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=SweepConfig.n_max)
    ap.add_argument("--step", type=float, default=SweepConfig.step)
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    args = ap.parse_args(argv)
    cfg = SweepConfig(args.n_max, args.step, args.out)

    t0 = time.perf_counter()
    cells = conjecture_sweep(cfg.n_max, cfg.alphas)
    elapsed = time.perf_counter() - t0

    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with cfg.out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "k", "alpha", "m", "mu_closed", "argmin_m", "margin", "counterexample"])
        for c in cells:
            for m, v in enumerate(c.values, 1):
                w.writerow([c.n, c.k, c.alpha, m, f"{v:.15g}", c.argmin_m,
                            "" if c.margin is None else f"{c.margin:.15g}", c.counterexample])

    flagged = [c for c in cells if c.counterexample]
    open_cells = [c for c in cells if not c.covered and c.margin is not None]
    print(f"{len(cells)} cells in {elapsed:.2f}s; {len(flagged)} with argmin m != 1; wrote {cfg.out}")
    print(f"open region: {len(open_cells)} cells with more than one m; tightest margins:")
    for c in sorted(open_cells, key=lambda c: c.margin)[:cfg.show]:
        print(f"  n={c.n:2d} k={c.k:2d} alpha={c.alpha:.2f}  margin={c.margin:.6g}")
    return 1 if any(c.covered for c in flagged) else 0


if __name__ == "__main__":
    sys.exit(main())
