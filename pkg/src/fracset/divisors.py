"""Restricted divisor counts tau_D, their moment sums, and smooth Euler products."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from fracset.setcore import primes_up_to


@lru_cache(maxsize=64)
def _primes_to(D: int) -> tuple[int, ...]:
    return tuple(primes_up_to(D))


def analytic_c_q(q: int) -> int:
    """(2^q)!, the constant produced by the (log t)^n <= n! t step."""
    return math.factorial(2**q)


@dataclass
class DivisorProfile:
    D: int
    q: int
    c_q: float = field(default=None)  # type: ignore[assignment]
    c_q_analytic: int = field(init=False)

    def __post_init__(self):
        if self.D < 1 or self.q < 0:
            raise ValueError("need D >= 1 and q >= 0")
        self.c_q_analytic = analytic_c_q(self.q)
        if self.c_q is None:
            self.c_q = float(self.c_q_analytic)
        if not self.c_q > 0:
            raise ValueError("c_q must be positive")


def _valuations(n: int, D: int) -> list[tuple[int, int]]:
    out = []
    for p in _primes_to(D):
        if p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    return out


def smooth_part(n: int, D: int) -> int:
    """k(n): the largest divisor of n with no prime factor above D."""
    if n < 1 or D < 1:
        raise ValueError("need n >= 1 and D >= 1")
    return math.prod(p**e for p, e in _valuations(n, D))


def tau_restricted(n: int, D: int) -> int:
    """tau_D(n): number of divisors of n whose prime factors are all <= D."""
    if n < 1 or D < 1:
        raise ValueError("need n >= 1 and D >= 1")
    return math.prod(e + 1 for _, e in _valuations(n, D))


def tau_restricted_table(X: int, D: int) -> np.ndarray:
    """tau_D(n) for 0 <= n <= X (entry 0 unused).

    Sieves each prime power p^k <= X, p <= D, over its multiples.
    """
    tau = np.ones(X + 1, dtype=np.int64)
    expo = np.zeros(X + 1, dtype=np.int64)
    for p in _primes_to(min(D, X)):
        expo[:] = 0
        pk = p
        while pk <= X:
            expo[pk::pk] += 1
            pk *= p
        tau *= expo + 1
    return tau


def tau_moment_sum(X: int, q: int, D: int) -> int:
    """The exact integer sum of tau_D(n)^q over 1 <= n <= X."""
    if X < 1 or q < 0 or D < 1:
        raise ValueError("need X >= 1, q >= 0, D >= 1")
    values, counts = np.unique(tau_restricted_table(X, D)[1:], return_counts=True)
    return sum(int(v) ** q * int(c) for v, c in zip(values, counts))


def _local_factor(p: int, q: int, budget: float) -> float:
    """sum_{j>=0} (j+1)^q p^-j, stopped once the remaining tail is below budget * partial."""
    if q == 0:
        return p / (p - 1)
    x = 1.0 / p
    partial = 0.0
    j = 0
    term = 1.0
    while True:
        partial += term
        # consecutive-term ratio decreases in j, so r bounds all later ratios
        r = ((j + 3) / (j + 2)) ** q * x
        nxt = ((j + 2) / (j + 1)) ** q * x * term
        if r < 1 and nxt / (1 - r) < budget * partial:
            return partial
        term = nxt
        j += 1


def smooth_tau_moment(q: int, D: int, tol: float = 1e-12) -> float:
    """S(q) = sum over D-smooth m of tau(m)^q / m, as an Euler product over p <= D.

    Each local series is truncated with a geometric tail bound so the product
    has relative error below ``tol``.
    """
    if q < 0 or D < 1 or not tol > 0:
        raise ValueError("need q >= 0, D >= 1, tol > 0")
    primes = _primes_to(D)
    if not primes:
        return 1.0
    if q == 0:
        return mertens_product(D)
    budget = tol / (2 * len(primes))
    logs = [math.log(_local_factor(p, q, budget)) for p in primes]
    return math.exp(math.fsum(logs))


def mertens_product(D: int) -> float:
    """prod_{p <= D} (1 - 1/p)^-1, accumulated in log space."""
    if D < 2:
        raise ValueError("need D >= 2")
    return math.exp(-math.fsum(math.log1p(-1.0 / p) for p in _primes_to(D)))


def mertens_ratio(D: int) -> float:
    """mertens_product(D) / (e^euler_gamma * log D); tends to 1."""
    euler_gamma = 0.57721566490153286061
    return mertens_product(D) / (math.exp(euler_gamma) * math.log(D))


def empirical_c_q(q: int, Ds, Xs) -> float:
    """max over the grid of tau_moment_sum(X, q, D) / (D * X)."""
    return max(tau_moment_sum(X, q, D) / (D * X) for D in Ds for X in Xs)
