"""Product sequences A.B and small-gap certificates built from two close fractions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from fracset.fracstat import _check_budget, ratio_set
from fracset.setcore import IntegerSet


@dataclass(frozen=True)
class GapCertificate:
    a: int
    b: int
    a_prime: int
    b_prime: int

    def __post_init__(self):
        if Fraction(self.a, self.b) == Fraction(self.a_prime, self.b_prime):
            raise ValueError("certificate fractions must be distinct")

    @property
    def term1(self) -> int:
        return self.b * self.a_prime

    @property
    def term2(self) -> int:
        return self.b_prime * self.a

    @property
    def gap(self) -> int:
        return abs(self.term1 - self.term2)

    @property
    def fraction_distance(self) -> Fraction:
        return abs(Fraction(self.a, self.b) - Fraction(self.a_prime, self.b_prime))

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "a_prime": self.a_prime,
            "b_prime": self.b_prime,
            "term1": self.term1,
            "term2": self.term2,
            "gap": self.gap,
            "fraction_distance": str(self.fraction_distance),
        }


def _products(A: IntegerSet, B: IntegerSet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All products a*b with their factors, sorted by (product, a)."""
    a, b = A.elements, B.elements
    _check_budget(int(a.size) * int(b.size))
    prod = np.multiply.outer(a, b).ravel()
    fa = np.repeat(a, b.size)
    fb = np.tile(b, a.size)
    order = np.lexsort((fa, prod))
    return prod[order], fa[order], fb[order]


def product_sequence(A: IntegerSet, B: IntegerSet, limit: int) -> list[int]:
    """Sorted distinct a*b <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if len(A) == 0 or len(B) == 0:
        return []
    _check_budget(len(A) * len(B))
    prod = np.multiply.outer(A.elements, B.elements).ravel()
    return [int(v) for v in np.unique(prod[prod <= limit])]


def min_consecutive_gap(terms) -> tuple[int, tuple[int, int]]:
    """Smallest difference of adjacent terms and the first adjacent pair attaining it."""
    arr = np.asarray(terms, dtype=np.int64)
    if arr.size < 2:
        raise ValueError("need at least two terms")
    diffs = np.diff(arr)
    if np.any(diffs <= 0):
        raise ValueError("terms must be strictly increasing")
    i = int(np.argmin(diffs))
    return int(diffs[i]), (int(arr[i]), int(arr[i + 1]))


def is_windowed(A: IntegerSet) -> bool:
    """All elements in (X/2, X] for X the ambient bound."""
    return len(A) == 0 or 2 * int(A.elements[0]) > A.ambient_bound


def small_gap_certificate(A: IntegerSet, B: IntegerSet, check_window: bool = True) -> GapCertificate:
    """Pair of distinct fractions a/b, a'/b' minimising |a b' - a' b|.

    Any two distinct products x = a1*b1 < y = a2*b2 give the fractions
    a2/b1 and a1/b2 with |a2*b2 - a1*b1| = y - x, and every admissible
    pair of fractions arises this way, so the minimum is the smallest
    consecutive gap of the product set. Ties go to the smallest term1;
    each product is represented by its factorisation with smallest a.
    """
    if check_window and not (is_windowed(A) and is_windowed(B)):
        raise ValueError("A and B must lie in the windows (X/2, X] and (Y/2, Y]")
    prod, fa, fb = _products(A, B)
    first = np.ones(prod.size, dtype=bool)
    first[1:] = prod[1:] != prod[:-1]
    prod, fa, fb = prod[first], fa[first], fb[first]
    if prod.size < 2:
        raise ValueError("A/B has fewer than two distinct fractions")
    i = int(np.argmin(np.diff(prod)))
    # term1 = b * a' is the smaller product, term2 = b' * a the larger
    a_prime, b = int(fa[i]), int(fb[i])
    a, b_prime = int(fa[i + 1]), int(fb[i + 1])
    return GapCertificate(a, b, a_prime, b_prime)


def closest_fraction_pair(A: IntegerSet, B: IntegerSet) -> tuple[Fraction, Fraction]:
    """Two adjacent distinct fractions of A/B at minimal distance (first such pair in order)."""
    fr = sorted(Fraction(f.num, f.den) for f in ratio_set(A, B))
    if len(fr) < 2:
        raise ValueError("A/B has fewer than two distinct fractions")
    best = min(range(len(fr) - 1), key=lambda i: fr[i + 1] - fr[i])
    return fr[best], fr[best + 1]


def pigeonhole_bound(A: IntegerSet, B: IntegerSet, n_fractions: int) -> Fraction:
    """(X/Y) / (|A/B| - 1): the closest pair of fractions is at most this far apart."""
    return Fraction(A.ambient_bound, B.ambient_bound) / (n_fractions - 1)


def window_of(seq: IntegerSet, X: int) -> IntegerSet:
    """seq cap (X/2, X]."""
    return seq.window(X // 2, X)


def multiples_window(h: int, X: int) -> IntegerSet:
    """Multiples of h in (X/2, X]."""
    lo = X // 2
    start = (lo // h + 1) * h
    return IntegerSet(np.arange(start, X + 1, h, dtype=np.int64), X)
