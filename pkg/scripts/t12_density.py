#!/usr/bin/env python3
"""For families of 2m primes: |A|/X against alpha(P), and |A/A| / (|A|^2) as X grows (CSV)."""

import argparse
import csv
import sys

from fracset.constructions import PrimeFamily, build_t12_set, density_alpha_P
from fracset.fracstat import ratio_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--start", type=int, default=2, help="take the first 2m primes >= start")
    ap.add_argument("--xs", default="1000,3000,10000,30000")
    args = ap.parse_args()

    fam = PrimeFamily.first_primes(args.m, args.start)
    alpha = density_alpha_P(fam)
    out = csv.writer(sys.stdout)
    out.writerow(["primes", "X", "size", "empirical_alpha", "alpha", "ratio_count", "ratio_over_size_sq"])
    for X in (int(v) for v in args.xs.split(",")):
        A = build_t12_set(fam, X)
        r = ratio_count(A, A)
        out.writerow([" ".join(map(str, fam.primes)), X, len(A), f"{len(A) / X:.6f}", f"{float(alpha):.6f}",
                      r, f"{r / len(A) ** 2:.6f}"])


if __name__ == "__main__":
    main()
