#!/usr/bin/env python3
"""|S(P)/S(P)| against |S(P)|^2 as m grows, exact (CSV)."""

import argparse
import csv
import math
import sys

from fracset.constructions import lemma31_bound, ratio_set_count_exact


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=40)
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["m", "S_size", "ratio_count", "three_pow_2m", "ratio_over_S_sq", "coefficient"])
    for m in range(1, args.max_m + 1):
        size = math.comb(2 * m, m)
        count = ratio_set_count_exact(m)
        out.writerow([m, size, count, 3 ** (2 * m), f"{count / size**2:.6e}", f"{lemma31_bound(m):.6e}"])


if __name__ == "__main__":
    main()
