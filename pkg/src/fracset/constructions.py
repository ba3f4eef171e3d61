"""The two counterexample families: multiples of m-fold prime products, and dilated primitive points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from fracset.fracstat import frac_count_grid, ratio_count
from fracset.setcore import GridPointSet, IntegerSet, is_prime, multiples_of_any, primes_in_interval

# 2^20 inclusion-exclusion terms
MAX_IE_PRODUCTS = 20


@dataclass(frozen=True)
class PrimeFamily:
    primes: tuple[int, ...]
    m: int
    window: tuple[float, float] | None = None

    def __post_init__(self):
        ps = tuple(sorted(int(p) for p in self.primes))
        object.__setattr__(self, "primes", ps)
        if self.m < 1 or len(ps) != 2 * self.m:
            raise ValueError(f"need exactly 2m = {2 * self.m} primes, got {len(ps)}")
        if len(set(ps)) != len(ps):
            raise ValueError("primes must be distinct")
        bad = [p for p in ps if not is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        if self.window is not None:
            lo, hi = self.window
            if any(p < lo or p > hi for p in ps):
                raise ValueError(f"primes outside window [{lo}, {hi}]")

    @classmethod
    def from_window(cls, T: int, m: int, width: Fraction | None = None) -> "PrimeFamily":
        """The first 2m primes of [T, T + width*T] (width defaults to 1/m)."""
        width = Fraction(1, m) if width is None else Fraction(width)
        hi = T + width * T
        ps = primes_in_interval(T, math.floor(hi))
        if len(ps) < 2 * m:
            raise ValueError(f"[{T}, {float(hi)}] holds only {len(ps)} primes, need {2 * m}")
        return cls(tuple(ps[: 2 * m]), m, (T, float(hi)))

    @classmethod
    def first_primes(cls, m: int, start: int = 2) -> "PrimeFamily":
        ps: list[int] = []
        n = start
        while len(ps) < 2 * m:
            if is_prime(n):
                ps.append(n)
            n += 1
        return cls(tuple(ps), m)

    def to_json(self) -> dict:
        out = {"primes": list(self.primes), "m": self.m}
        if self.window is not None:
            out["window"] = list(self.window)
        return out


def subset_products(family: PrimeFamily) -> list[int]:
    """S(P): products over all m-element subsets of the family, ascending."""
    return sorted(math.prod(c) for c in combinations(family.primes, family.m))


def ratio_set_count_exact(family: PrimeFamily | int) -> int:
    """|S(P)/S(P)| by counting disjoint (U, V) with |U| = |V| = j <= m."""
    m = family if isinstance(family, int) else family.m
    return sum(math.comb(2 * m, j) * math.comb(2 * m - j, j) for j in range(m + 1))


def ratio_set_count_brute(family: PrimeFamily) -> int:
    S = subset_products(family)
    A = IntegerSet.from_iterable(S, S[-1])
    return ratio_count(A, A)


def lemma31_bound(m: int) -> float:
    """(2m+1)^2 (3/4)^(2m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return float(lemma31_bound_exact(m))


def lemma31_bound_exact(m: int) -> Fraction:
    return (2 * m + 1) ** 2 * Fraction(3, 4) ** (2 * m)


def lemma31_chain(m: int) -> dict:
    """Exact comparison of |S/S| against 3^(2m) and against the coefficient times |S|^2."""
    count = ratio_set_count_exact(m)
    size = math.comb(2 * m, m)
    coef = Fraction(count, size * size)
    return {
        "m": m,
        "ratio_count": count,
        "S_size": size,
        "pairs_bound": 3 ** (2 * m),
        "within_pairs_bound": count <= 3 ** (2 * m),
        "coefficient": coef,
        "bound": lemma31_bound_exact(m),
        "within_bound": coef <= lemma31_bound_exact(m),
    }


def build_t12_set(family: PrimeFamily, X: int) -> IntegerSet:
    """Integers in [1, X] divisible by some product in S(P)."""
    S = subset_products(family)
    if X < S[0]:
        raise ValueError(f"X={X} is below the smallest product {S[0]}")
    return multiples_of_any(S, X)


def _subset_unions(masks: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Union bitmask and size parity of every subset of ``masks`` (index = subset bitmask)."""
    n = len(masks)
    union = np.zeros(1 << n, dtype=np.int64)
    parity = np.zeros(1 << n, dtype=np.int8)
    for i, mk in enumerate(masks):
        half = 1 << i
        union[half : 2 * half] = union[:half] | mk
        parity[half : 2 * half] = parity[:half] ^ 1
    return union, parity


def density_alpha_P(family: PrimeFamily) -> Fraction:
    """Exact asymptotic density of the multiples of S(P), by inclusion-exclusion over S(P)."""
    k = math.comb(2 * family.m, family.m)
    if k > MAX_IE_PRODUCTS:
        raise ValueError(
            f"|S(P)| = {k} exceeds the inclusion-exclusion budget {MAX_IE_PRODUCTS}; "
            "use empirical_alpha_P instead"
        )
    ps = family.primes
    masks = [sum(1 << i for i in idx) for idx in combinations(range(len(ps)), family.m)]
    union, parity = _subset_unions(masks)
    union, parity = union[1:], parity[1:]
    # fold the 2^k terms into a signed count per union of primes
    sign = np.where(parity == 1, 1, -1)
    coef = np.bincount(union, weights=sign, minlength=1 << len(ps)).astype(np.int64)
    total = Fraction(0)
    for u in np.flatnonzero(coef):
        total += Fraction(int(coef[u]), math.prod(ps[i] for i in range(len(ps)) if u >> i & 1))
    return total


def alpha_by_prime_pattern(family: PrimeFamily) -> Fraction:
    """Density of n divisible by at least m primes of the family, via independence of p | n."""
    ps = family.primes
    total = Fraction(0)
    for r in range(family.m, len(ps) + 1):
        for U in combinations(range(len(ps)), r):
            term = Fraction(1)
            for i, p in enumerate(ps):
                term *= Fraction(1, p) if i in U else Fraction(p - 1, p)
            total += term
    return total


def empirical_alpha_P(family: PrimeFamily, X: int) -> float:
    """Estimate |A(P) cap [1, X]| / X."""
    return len(build_t12_set(family, X)) / X


def alpha_lower_bound(family: PrimeFamily, T: float) -> Fraction:
    """|S(P)| / (3 T^m)."""
    return Fraction(math.comb(2 * family.m, family.m)) / (3 * Fraction(T) ** family.m)


@dataclass
class T13Construction:
    gamma: float
    X: int
    Y: int
    S: GridPointSet
    C: GridPointSet
    selector: str
    primitive_count: int
    frac_count: int

    @property
    def dilates(self) -> int:
        return math.floor(1 / Fraction(self.gamma))

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "X": self.X,
            "Y": self.Y,
            "selector": self.selector,
            "primitive_count": self.primitive_count,
            "S_size": len(self.S),
            "C_size": len(self.C),
            "frac_count": self.frac_count,
        }


def primitive_points(bx: int, by: int) -> np.ndarray:
    """Coprime (a, b) in [1,bx]x[1,by], ordered by b then a."""
    b, a = np.divmod(np.arange(bx * by, dtype=np.int64), bx)
    a += 1
    b += 1
    keep = np.gcd(a, b) == 1
    return np.column_stack([a[keep], b[keep]])


def build_t13(gamma: float, X: int, Y: int, selector: str = "lex", seed: int | None = None) -> T13Construction:
    """Primitive points S in [1, gamma X] x [1, gamma Y] and the union C of d.S for d <= 1/gamma.

    ``selector`` is "lex" (b then a) or "shuffle" (seeded permutation).
    """
    g = Fraction(gamma)
    if not 0 < g <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    bx, by = math.floor(g * X), math.floor(g * Y)
    if bx < 1 or by < 1:
        raise ValueError("gamma X and gamma Y must be >= 1")
    prim = primitive_points(bx, by)
    n_low = math.ceil(g * g * X * Y / 4)
    n_high = g * g * X * Y / 2
    if n_low > len(prim) or n_low > n_high:
        raise ValueError(
            f"only {len(prim)} primitive points in [1,{bx}]x[1,{by}], need {n_low}; increase X, Y"
        )
    if selector == "lex":
        chosen = prim[:n_low]
    elif selector == "shuffle":
        rng = np.random.default_rng(seed)
        chosen = prim[rng.permutation(len(prim))[:n_low]]
    else:
        raise ValueError(f"unknown selector {selector!r}")
    S = GridPointSet(chosen, X, Y)
    k = math.floor(1 / g)
    C = GridPointSet(np.concatenate([chosen * d for d in range(1, k + 1)]), X, Y)
    return T13Construction(float(gamma), X, Y, S, C, selector, len(prim), frac_count_grid(C))
