"""Distinct fractions of A x B and the partition of A x B by gcd."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from fracset.setcore import GridPointSet, IntegerSet

# refuse |A|*|B| beyond this
MAX_PAIRS = 10**9
# pairs processed per chunk
CHUNK_PAIRS = 1 << 22


class TooManyPairs(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ReducedFraction:
    num: int
    den: int

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise ValueError("numerator and denominator must be positive")
        if gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not reduced")

    @classmethod
    def of(cls, a: int, b: int) -> "ReducedFraction":
        g = gcd(a, b)
        return cls(a // g, b // g)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass
class GcdClassTable:
    sizes: dict[int, int]
    total_pairs: int
    sup_d: int | None
    sup_size: int
    bound_x: int = 0
    bound_y: int = 0

    def check_partition(self) -> bool:
        return sum(self.sizes.values()) == self.total_pairs

    def to_json(self) -> dict:
        return {
            "sizes": {str(d): s for d, s in sorted(self.sizes.items())},
            "total": self.total_pairs,
            "sup_d": self.sup_d,
            "sup_size": self.sup_size,
        }


def thread_count() -> int:
    try:
        n = int(os.environ.get("FRACSET_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


def _check_budget(n_pairs: int) -> None:
    if n_pairs > MAX_PAIRS:
        raise TooManyPairs(f"|A|*|B| = {n_pairs} exceeds the enumeration budget {MAX_PAIRS}")


def _row_chunks(n_rows: int, row_len: int) -> list[tuple[int, int]]:
    step = max(1, CHUNK_PAIRS // max(1, row_len))
    return [(i, min(i + step, n_rows)) for i in range(0, n_rows, step)]


def _map_chunks(fn, chunks):
    threads = thread_count()
    if threads == 1 or len(chunks) == 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, chunks))


def _reduced_keys(a: np.ndarray, b: np.ndarray, width: int) -> np.ndarray:
    """Sorted unique keys num*width + den of reduced a_i/b_j over the outer product."""
    g = np.gcd.outer(a, b)
    num = a[:, None] // g
    den = b[None, :] // g
    return np.unique((num * width + den).ravel())


def _distinct_keys(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, int]:
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64), 1
    _check_budget(a.size * b.size)
    width = int(b.max()) + 1
    chunks = _row_chunks(a.size, b.size)
    parts = _map_chunks(lambda c: _reduced_keys(a[c[0] : c[1]], b, width), chunks)
    # merging sorted unique runs; result independent of the split
    return np.unique(np.concatenate(parts)), width


def ratio_count(A: IntegerSet, B: IntegerSet) -> int:
    """|A/B|, the number of distinct rationals a/b with a in A, b in B."""
    keys, _ = _distinct_keys(A.elements, B.elements)
    return int(keys.size)


def ratio_set(A: IntegerSet, B: IntegerSet) -> list[ReducedFraction]:
    """The distinct fractions of A/B in lexicographic (num, den) order."""
    keys, width = _distinct_keys(A.elements, B.elements)
    return [ReducedFraction(int(k // width), int(k % width)) for k in keys]


def frac_count_grid(C: GridPointSet) -> int:
    """Frac(C): distinct reduced fractions a/b over the points of C."""
    if len(C) == 0:
        return 0
    a = C.points[:, 0]
    b = C.points[:, 1]
    g = np.gcd(a, b)
    width = int(b.max()) + 1
    return int(np.unique((a // g) * width + b // g).size)


def gcd_class_sizes(A: IntegerSet, B: IntegerSet) -> GcdClassTable:
    """Sizes of M(A,B,d) = {(a,b) in A x B : gcd(a,b) = d} for every nonempty class."""
    a, b = A.elements, B.elements
    total = int(a.size) * int(b.size)
    if total == 0:
        return GcdClassTable({}, 0, None, 0, A.ambient_bound, B.ambient_bound)
    _check_budget(total)
    top = min(int(a.max()), int(b.max())) + 1

    def count(c):
        g = np.gcd.outer(a[c[0] : c[1]], b)
        return np.bincount(g.ravel(), minlength=top)

    counts = np.sum(_map_chunks(count, _row_chunks(a.size, b.size)), axis=0)
    nz = np.flatnonzero(counts)
    sizes = {int(d): int(counts[d]) for d in nz}
    # argmax returns the first, i.e. smallest, d on ties
    sup_d = int(np.argmax(counts))
    return GcdClassTable(sizes, total, sup_d, int(counts[sup_d]), A.ambient_bound, B.ambient_bound)


def gcd_class_members(A: IntegerSet, B: IntegerSet, d: int) -> list[tuple[int, int]]:
    """The pairs of M(A,B,d), for small inputs."""
    a, b = A.elements, B.elements
    _check_budget(int(a.size) * int(b.size))
    g = np.gcd.outer(a, b)
    i, j = np.nonzero(g == d)
    return [(int(a[x]), int(b[y])) for x, y in zip(i, j)]
