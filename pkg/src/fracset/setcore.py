"""Finite integer sets in [1, X], planar point sets, and prime sieving."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np


@dataclass(frozen=True, eq=False)
class IntegerSet:
    """Strictly increasing positive integers, all at most ``ambient_bound``."""

    elements: np.ndarray
    ambient_bound: int

    def __post_init__(self):
        arr = np.asarray(self.elements, dtype=np.int64).reshape(-1)
        bound = int(self.ambient_bound)
        if bound < 1:
            raise ValueError(f"ambient_bound must be >= 1, got {bound}")
        if arr.size:
            if arr[0] < 1 or arr[-1] > bound:
                raise ValueError(f"elements must lie in [1, {bound}]")
            if np.any(np.diff(arr) <= 0):
                raise ValueError("elements must be strictly increasing")
        arr.setflags(write=False)
        object.__setattr__(self, "elements", arr)
        object.__setattr__(self, "ambient_bound", bound)

    @classmethod
    def from_iterable(cls, values: Iterable[int], ambient_bound: int) -> "IntegerSet":
        vals = sorted(set(int(v) for v in values))
        return cls(np.array(vals, dtype=np.int64), ambient_bound)

    @classmethod
    def interval(cls, lo: int, hi: int, ambient_bound: int | None = None) -> "IntegerSet":
        return cls(np.arange(lo, hi + 1, dtype=np.int64), hi if ambient_bound is None else ambient_bound)

    def __len__(self) -> int:
        return int(self.elements.size)

    def __iter__(self) -> Iterator[int]:
        return (int(v) for v in self.elements)

    def __contains__(self, n) -> bool:
        i = np.searchsorted(self.elements, n)
        return bool(i < self.elements.size and self.elements[i] == n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerSet):
            return NotImplemented
        return self.ambient_bound == other.ambient_bound and np.array_equal(self.elements, other.elements)

    def __hash__(self):
        return hash((self.ambient_bound, self.elements.tobytes()))

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.elements[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"IntegerSet({{{head}{more}}}, ambient_bound={self.ambient_bound}, size={len(self)})"

    def to_list(self) -> list[int]:
        return [int(v) for v in self.elements]

    def density(self) -> float:
        return len(self) / self.ambient_bound

    def dilate(self, k: int) -> "IntegerSet":
        """k*A, with the ambient bound scaled by k as well."""
        if k < 1:
            raise ValueError("dilation factor must be >= 1")
        return IntegerSet(self.elements * k, self.ambient_bound * k)

    def window(self, lo: int, hi: int) -> "IntegerSet":
        """Elements in the half-open window (lo, hi]; the ambient bound becomes hi."""
        arr = self.elements
        return IntegerSet(arr[(arr > lo) & (arr <= hi)], hi)


@dataclass(frozen=True, eq=False)
class GridPointSet:
    """Distinct integer points (a, b) with 1 <= a <= bound_x, 1 <= b <= bound_y.

    Stored as an (n, 2) int64 array in lexicographic order.
    """

    points: np.ndarray
    bound_x: int
    bound_y: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.int64)
        if pts.size == 0:
            pts = np.zeros((0, 2), dtype=np.int64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        bx, by = int(self.bound_x), int(self.bound_y)
        if bx < 1 or by < 1:
            raise ValueError("bounds must be >= 1")
        if pts.shape[0]:
            if pts[:, 0].min() < 1 or pts[:, 0].max() > bx or pts[:, 1].min() < 1 or pts[:, 1].max() > by:
                raise ValueError(f"points must lie in [1,{bx}]x[1,{by}]")
            order = np.lexsort((pts[:, 1], pts[:, 0]))
            pts = pts[order]
            same = np.all(pts[1:] == pts[:-1], axis=1)
            if np.any(same):
                raise ValueError("duplicate points")
        pts = np.ascontiguousarray(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "bound_x", bx)
        object.__setattr__(self, "bound_y", by)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], bound_x: int, bound_y: int) -> "GridPointSet":
        return cls(np.array(list(pairs), dtype=np.int64).reshape(-1, 2), bound_x, bound_y)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return ((int(a), int(b)) for a, b in self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridPointSet):
            return NotImplemented
        return (self.bound_x, self.bound_y) == (other.bound_x, other.bound_y) and np.array_equal(
            self.points, other.points
        )

    def __hash__(self):
        return hash((self.bound_x, self.bound_y, self.points.tobytes()))

    def density(self) -> float:
        return len(self) / (self.bound_x * self.bound_y)


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def primes_in_interval(lo: int, hi: int, segment: int = 1 << 22) -> list[int]:
    """Primes p with lo <= p <= hi, by segmented Eratosthenes."""
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    lo = max(lo, 2)
    if hi < lo:
        return []
    base = _simple_sieve(math.isqrt(hi))
    out: list[np.ndarray] = []
    start = lo
    while start <= hi:
        stop = min(start + segment, hi + 1)  # exclusive
        mask = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            if first < stop:
                mask[first - start :: p] = False
        out.append(np.flatnonzero(mask) + start)
        start = stop
    return [int(v) for v in np.concatenate(out)] if out else []


def primes_up_to(n: int) -> list[int]:
    return primes_in_interval(1, n) if n >= 1 else []


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def multiples_of_any(divisors: list[int], X: int) -> IntegerSet:
    """{n <= X : some d in divisors divides n}."""
    if not divisors:
        raise ValueError("divisor list is empty")
    if any(d < 1 for d in divisors):
        raise ValueError("divisors must be positive")
    if X < 1:
        raise ValueError("X must be >= 1")
    mask = np.zeros(X + 1, dtype=bool)
    for d in set(int(d) for d in divisors):
        if d <= X:
            mask[d::d] = True
    return IntegerSet(np.flatnonzero(mask).astype(np.int64), X)


def multiples_in(A: IntegerSet, d: int) -> IntegerSet:
    """A_d, the multiples of d in A."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return IntegerSet(A.elements[A.elements % d == 0], A.ambient_bound)


def bernoulli_set(alpha: float, X: int, rng: np.random.Generator, lo: int = 0) -> IntegerSet:
    """Keep each integer of (lo, X] independently with probability alpha."""
    candidates = np.arange(lo + 1, X + 1, dtype=np.int64)
    keep = rng.random(candidates.size) < alpha
    return IntegerSet(candidates[keep], X)


def read_set_file(path: str | Path) -> IntegerSet:
    """Parse a set file: header ``# ambient_bound=<X>``, then one integer per line."""
    bound = None
    seen: set[int] = set()
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line.lstrip("#").strip().partition("=")
            if key.strip() == "ambient_bound":
                bound = int(val)
            continue
        n = int(line)
        if n in seen:
            raise ValueError(f"{path}:{lineno}: duplicate element {n}")
        seen.add(n)
    if bound is None:
        raise ValueError(f"{path}: missing '# ambient_bound=<X>' header")
    return IntegerSet.from_iterable(seen, bound)


def write_set_file(A: IntegerSet, path: str | Path) -> None:
    lines = [f"# ambient_bound={A.ambient_bound}"] + [str(v) for v in A]
    Path(path).write_text("\n".join(lines) + "\n")
