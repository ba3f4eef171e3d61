#!/usr/bin/env python3
"""Margin of sup_d |M(A,B,d)| over (ab)^2 XY/8 for random and multiples-union pairs (CSV)."""

import argparse
import csv
import sys

import numpy as np

from fracset.cli import multiples_union, random_pair
from fracset.exponents import prop21_lower_bound
from fracset.fracstat import gcd_class_sizes, ratio_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-x", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["kind", "X", "Y", "alpha", "beta", "sup_d", "sup_size", "ratio_count", "bound", "margin"])
    for i in range(args.trials):
        if i % 2:
            A, B = random_pair(rng, args.max_x)
            kind = "bernoulli"
        else:
            X, Y = (int(v) for v in rng.integers(12, args.max_x + 1, size=2))
            A, B = multiples_union(rng, X), multiples_union(rng, Y)
            kind = "multiples-union"
        t = gcd_class_sizes(A, B)
        bound = prop21_lower_bound(A.density(), B.density(), A.ambient_bound, B.ambient_bound)
        out.writerow(
            [kind, A.ambient_bound, B.ambient_bound, f"{A.density():.6f}", f"{B.density():.6f}",
             t.sup_d, t.sup_size, ratio_count(A, B), f"{bound:.3f}", f"{t.sup_size / bound:.3f}"]
        )


if __name__ == "__main__":
    main()
