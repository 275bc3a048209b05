"""Outlier sweep over d: median finite-N roots of Q_N against the limit roots.

For d < 0 the tracked root is the upper-half-plane one; for d > 0 the pair of
real roots outside the bulk (absent for 0 < d <= 2 in the limit).

    python3 scripts/run_outliers.py --size 1000 --trials 10 --ds -2 -1 -0.5 1 2.5 3 5 > outliers.csv
"""
from __future__ import annotations

import argparse
import csv
import statistics
import sys
from dataclasses import dataclass, field

from dyckweyl.randmat import (EnsembleConfig, build_secular, complex_outlier, real_outliers,
                              sample_wigner)
from dyckweyl.weyl import limit_outliers


@dataclass
class OutlierSweep:
    ds: list[float] = field(default_factory=lambda: [-2.0, -1.0, -0.5, 1.0, 2.5, 3.0, 5.0])
    size: int = 1000
    trials: int = 10
    dist: str = "gaussian"
    seed: int = 0


def _median(xs):
    return statistics.median(xs) if xs else float("nan")


def run(cfg: OutlierSweep, out=sys.stdout) -> None:
    w = csv.writer(out, lineterminator="\n")
    out.write(f"# outliers size={cfg.size} trials={cfg.trials} dist={cfg.dist} seed={cfg.seed}\n")
    w.writerow(["d", "found", "median_re", "median_im", "limit_re", "limit_im"])
    # the bulk decomposition does not depend on d, so one eigh per trial serves every d
    models = [build_secular(sample_wigner(EnsembleConfig(cfg.size, 1.0, cfg.dist, cfg.seed), t))
              for t in range(cfg.trials)]
    for d in cfg.ds:
        lim = limit_outliers(d).values
        if d < 0:
            roots = [z for z in (complex_outlier(m, d) for m in models) if z is not None]
            rows = [(len(roots), _median([z.real for z in roots]), _median([z.imag for z in roots]),
                     lim[0])]
        else:
            pairs = [real_outliers(m, d) for m in models]
            hi = [p[1] for p in pairs if p[1] is not None]
            lo = [p[0] for p in pairs if p[0] is not None]
            rows = [(len(hi), _median(hi), 0.0, lim[0] if lim else float("nan")),
                    (len(lo), _median(lo), 0.0, lim[1] if lim else float("nan"))]
        for found, re, im, target in rows:
            target = complex(target)
            w.writerow([d, found, f"{re:.17g}", f"{im:.17g}", f"{target.real:.17g}", f"{target.imag:.17g}"])
        out.flush()


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--ds", type=float, nargs="+", default=OutlierSweep().ds)
    p.add_argument("--size", type=int, default=1000)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--dist", default="gaussian")
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args(argv)
    run(OutlierSweep(a.ds, a.size, a.trials, a.dist, a.seed))


if __name__ == "__main__":
    main()
