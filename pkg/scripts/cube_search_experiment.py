#!/usr/bin/env python3
"""Randomized search for cube-shattered configurations around the threshold.

For planar cubes the largest shatterable size is 3, so the sweep should find
shattered sets quickly at n = 3 and find nothing at n = 4 no matter how many
trials run — the n = 4 row is the negative control (evidence, not proof; the
impossibility itself is carried by the exact upper-bound machinery).  Scores
count realized masks out of 2^n, so near-misses are visible.

Usage:
    python3 scripts/cube_search_experiment.py [--dim 2] [--sizes 3 4 5]
        [--trials 5000] [--seed 0] [--jobs N] [--out sweep.json]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

from vclab import random_cube_search
from vclab.serialize import cube_search_report_to_json


@dataclass
class SweepConfig:
    dim: int = 2
    sizes: List[int] = field(default_factory=lambda: [3, 4, 5])
    trials: int = 5000
    seed: int = 0
    coordinate_range: int = 16
    keep: int = 3
    jobs: int = 1
    out: Optional[str] = None


def parse_args(argv=None) -> SweepConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--trials", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--range", dest="coordinate_range", type=int, default=16)
    ap.add_argument("--keep", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None)
    ns = ap.parse_args(argv)
    return SweepConfig(
        dim=ns.dim,
        sizes=ns.sizes,
        trials=ns.trials,
        seed=ns.seed,
        coordinate_range=ns.coordinate_range,
        keep=ns.keep,
        jobs=ns.jobs,
        out=ns.out,
    )


def main(argv=None) -> int:
    cfg = parse_args(argv)
    results = []
    print(
        f"{'n':>3} {'trials':>8} {'evals':>10} {'found':>6} "
        f"{'best':>9} {'secs':>7}"
    )
    for n in cfg.sizes:
        start = time.monotonic()
        rep = random_cube_search(
            cfg.dim,
            n,
            cfg.trials,
            seed=cfg.seed,
            coordinate_range=cfg.coordinate_range,
            jobs=cfg.jobs,
            keep=cfg.keep,
        )
        secs = time.monotonic() - start
        best = rep.best[0].score if rep.best else 0
        print(
            f"{n:>3} {rep.trials:>8} {rep.evaluations:>10} "
            f"{len(rep.shattered_found):>6} {best:>4}/{1 << n:<4} {secs:>7.2f}"
        )
        results.append(cube_search_report_to_json(rep))
        for cand in rep.shattered_found[: cfg.keep]:
            print(f"      shattered: {cand.points.points}")
    print(f"note: {results[-1]['note']}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(results, fh, indent=2, sort_keys=True)
        print(f"wrote {cfg.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
