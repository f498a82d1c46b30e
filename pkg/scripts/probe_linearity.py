#!/usr/bin/env python3
"""Measure predicate-call counts of the cover sweep across path sizes.

The interesting quantity is calls/n: if the sweep is linear in predicate
evaluations, the ratio stays flat as n grows.  Digitized circles are the
canonical stress shape (many short maximal segments); lines are the easy
case (one segment); walks sit in between.

    python3 scripts/probe_linearity.py --sizes 1000,10000,100000
"""

import argparse
import sys
import time

from satcover import synth
from satcover.cover import complexity_probe
from satcover.predicates import PredicateSpec


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--shapes", default="circle,line,walk")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    specs = [
        PredicateSpec("dss"),
        PredicateSpec("max_len", {"k": 8}),
        PredicateSpec("bbox", {"w": 5, "h": 5}),
    ]
    for shape in args.shapes.split(","):
        factory = synth.shape_factory(shape, seed=args.seed)
        for spec in specs:
            t0 = time.time()
            rows = complexity_probe(spec, sizes, factory)
            ratios = [r.ratio for r in rows]
            spread = max(ratios) / min(ratios)
            label = f"{shape}/{spec.name}{spec.params or ''}"
            print(f"{label:<36} " +
                  " ".join(f"{r.ratio:6.2f}" for r in rows) +
                  f"   spread {spread:5.3f}   {time.time() - t0:6.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
