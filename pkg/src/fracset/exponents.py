"""Admissible-exponent recursion and the constants that accompany each step."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass
class ExponentTrace:
    q: int
    deltas: list[float]
    limit: float
    steps_to_converge: int
    tol: float

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "deltas": self.deltas,
            "limit": self.limit,
            "steps_to_converge": self.steps_to_converge,
            "tol": self.tol,
        }


@dataclass
class ConstantLedger:
    C: float
    C_prime: float
    delta: float
    delta_prime: float
    q: int
    c_q: float
    K: float
    L: int
    T: int
    D: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def exponent_step(delta: float, q: int) -> float:
    """(3 delta (1 + 1/q) - 2) / (2 delta - 1)."""
    if not delta > 1:
        raise ValueError(f"delta must be > 1, got {delta}")
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return (3 * delta * (1 + 1 / q) - 2) / (2 * delta - 1)


def exponent_limit(q: int) -> float:
    """Fixed point of exponent_step(., q) lying above 1."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return 1 + 3 / (4 * q) + 0.5 * math.sqrt(6 / q + 9 / (4 * q * q))


def iterate_exponents(q: int, tol: float = 1e-12, max_steps: int = 10**6) -> ExponentTrace:
    if q < 4:
        raise ValueError(f"q must be >= 4, got {q}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    deltas = [2.0]
    prev_diff = math.inf
    for _ in range(max_steps):
        nxt = exponent_step(deltas[-1], q)
        deltas.append(nxt)
        diff = abs(deltas[-2] - nxt)
        if diff == 0:
            break
        # slow contraction for large q: also bound the remaining distance diff*r/(1-r)
        r = diff / prev_diff
        if diff < tol and r < 1 and diff * r / (1 - r) <= tol:
            break
        prev_diff = diff
    else:
        raise RuntimeError(f"no convergence after {max_steps} steps for q={q}")
    return ExponentTrace(q, deltas, exponent_limit(q), len(deltas) - 1, tol)


def _integer_in_window(alpha: float, beta: float) -> int:
    ab = alpha * beta
    t = 2 / ab
    n = round(t)
    if abs(t - n) <= 1e-9 * t:
        return int(n)
    return math.ceil(t)


def threshold_T(alpha: float, beta: float) -> int:
    """Smallest integer in [2/(alpha beta), 4/(alpha beta)]."""
    if not (0 < alpha <= 1 and 0 < beta <= 1):
        raise ValueError("alpha and beta must lie in (0, 1]")
    return _integer_in_window(alpha, beta)


threshold_D = threshold_T


def prop21_lower_bound(alpha: float, beta: float, X: float, Y: float) -> float:
    """(alpha beta)^2 X Y / 8."""
    return (alpha * beta) ** 2 * X * Y / 8


def averaged_lower_bound(alpha: float, beta: float, X: float, Y: float, T: int) -> float:
    """((alpha beta - 1/T) / T) X Y, the mean class size over d <= T."""
    return (alpha * beta - 1 / T) / T * X * Y


def _defining_gap(log_cp: float, C: float, delta: float, q: int, c_q: float) -> float:
    """log(lhs) - log(rhs) of the C' equation; strictly decreasing in C'."""
    lhs = -math.log(8) - log_cp
    rhs = (
        (log_cp - math.log(C)) / (2 * (delta - 1))
        + delta / (delta - 1) * math.log(8)
        + delta / (q * (delta - 1)) * math.log(4 * c_q)
    )
    return lhs - rhs


def _bisect_c_prime(C: float, delta: float, q: int, c_q: float) -> float:
    lo, hi = math.log(1e-300), math.log(1e300)
    g = lambda v: _defining_gap(v, C, delta, q, c_q)  # noqa: E731
    # bracket the sign change
    while g(lo) < 0:
        lo *= 2
    while g(hi) > 0:
        hi *= 2
    # relative error 1e-12 in C' means absolute 1e-12 in log C'
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))


def solve_associated_constant(C: float, delta: float, q: int, c_q: float) -> tuple[float, float]:
    """Solve for C' > 0; returns (C', C) with C halved until C' <= 1/4."""
    if not C > 0 or not delta > 1 or q < 1 or not c_q > 0:
        raise ValueError("need C > 0, delta > 1, q >= 1, c_q > 0")
    while True:
        cp = _bisect_c_prime(C, delta, q, c_q)
        if cp <= 0.25:
            return cp, C
        C /= 2


def defining_residual(C_prime: float, C: float, delta: float, q: int, c_q: float) -> float:
    """Relative residual lhs/rhs - 1 of the C' equation."""
    return math.expm1(_defining_gap(math.log(C_prime), C, delta, q, c_q))


def constant_ledger(C: float, delta: float, q: int, c_q: float, alpha: float, beta: float) -> ConstantLedger:
    cp, C = solve_associated_constant(C, delta, q, c_q)
    dp = exponent_step(delta, q)
    K = (alpha * beta) ** (1 - dp) / (8 * cp)
    T = threshold_T(alpha, beta)
    return ConstantLedger(C, cp, delta, dp, q, c_q, K, 1 + math.floor(K), T, threshold_D(alpha, beta))


def check_constant_identity(C: float, delta: float, q: int, c_q: float, alpha: float, beta: float) -> float:
    """Ratio of the balancing expression to alpha*beta/4; equals 1 when the constants are wired right."""
    led = constant_ledger(C, delta, q, c_q, alpha, beta)
    ab = alpha * beta
    log_lhs = (
        math.log(2)
        + math.log(led.C_prime / led.C) / (2 * delta)
        + (led.delta_prime / (2 * delta) + 0.5 - 3 / (2 * q)) * math.log(ab)
        + (1 / delta - 1) * math.log(led.K)
        + math.log(4 * c_q) / q
    )
    return math.exp(log_lhs - math.log(ab / 4))
