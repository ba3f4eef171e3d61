#!/usr/bin/env python3
"""Certificate gaps over an (alpha, beta) grid of windowed sets (CSV, plot-ready)."""

import argparse
import csv
import math
import sys
from itertools import product

import numpy as np

from fracset.gaps import multiples_window, small_gap_certificate
from fracset.setcore import bernoulli_set


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--exponent", type=float, default=1.1)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    grid = [k / 10 for k in range(1, 11)]
    out = csv.writer(sys.stdout)
    out.writerow(["kind", "alpha", "beta", "size_a", "size_b", "gap", "scaled_gap"])
    for alpha, beta in product(grid, grid):
        A = bernoulli_set(alpha, args.x, rng, lo=args.x // 2)
        B = bernoulli_set(beta, args.x, rng, lo=args.x // 2)
        h, k = math.floor(1 / alpha + 1e-9), math.floor(1 / beta + 1e-9)
        for kind, (P, Q) in [("bernoulli", (A, B)), ("multiples", (multiples_window(h, args.x), multiples_window(k, args.x)))]:
            gap = small_gap_certificate(P, Q).gap
            out.writerow([kind, alpha, beta, len(P), len(Q), gap, f"{gap * (alpha * beta) ** args.exponent:.4f}"])


if __name__ == "__main__":
    main()
