import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracset.divisors import (
    DivisorProfile,
    analytic_c_q,
    empirical_c_q,
    mertens_product,
    mertens_ratio,
    smooth_part,
    smooth_tau_moment,
    tau_moment_sum,
    tau_restricted,
    tau_restricted_table,
)
from fracset.setcore import primes_up_to


def divisors_of(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def largest_prime_factor(n):
    p, big = 2, 1
    while n > 1:
        while n % p == 0:
            big, n = p, n // p
        p += 1
    return big


def tau_D_oracle(n, D):
    return sum(1 for d in divisors_of(n) if largest_prime_factor(d) <= D)


def eulerian(q, k):
    return sum((-1) ** i * math.comb(q + 1, i) * (k + 1 - i) ** q for i in range(k + 1))


def local_factor_exact(p, q):
    """sum_j (j+1)^q p^-j in closed form."""
    x = Fraction(1, p)
    if q == 0:
        return 1 / (1 - x)
    num = sum(eulerian(q, k) * x**k for k in range(q))
    return num / (1 - x) ** (q + 1)


def S_exact(q, D):
    return math.prod((local_factor_exact(p, q) for p in primes_up_to(D)), start=Fraction(1))


def test_tau_restricted_examples():
    assert tau_restricted(12, 2) == 3
    assert tau_restricted(12, 3) == 6
    assert tau_restricted(97, 1) == 1
    assert tau_restricted(1, 5) == 1


def test_smooth_part_examples():
    assert smooth_part(12, 2) == 4
    assert smooth_part(35, 10) == 35
    assert smooth_part(7, 2) == 1


@given(st.integers(1, 3000), st.integers(1, 60))
def test_tau_restricted_oracle(n, D):
    assert tau_restricted(n, D) == tau_D_oracle(n, D)
    k = smooth_part(n, D)
    assert n % k == 0 and largest_prime_factor(k) <= D
    assert all((n // k) % p for p in primes_up_to(D))
    assert tau_restricted(n, D) == len(divisors_of(k))
    assert tau_restricted(n, D) <= len(divisors_of(n))
    if largest_prime_factor(n) <= D:
        assert tau_restricted(n, D) == len(divisors_of(n))


@given(st.integers(1, 400), st.integers(1, 40))
def test_table_matches_pointwise(X, D):
    table = tau_restricted_table(X, D)
    assert [int(v) for v in table[1:]] == [tau_restricted(n, D) for n in range(1, X + 1)]


def test_tau_moment_examples():
    assert tau_moment_sum(10, 1, 2) == 18
    assert tau_moment_sum(1234, 0, 7) == 1234
    assert tau_moment_sum(5, 2, 1) == 5


@given(st.integers(1, 300), st.integers(0, 4), st.integers(1, 30))
def test_tau_moment_oracle(X, q, D):
    assert tau_moment_sum(X, q, D) == sum(tau_D_oracle(n, D) ** q for n in range(1, X + 1))


def test_tau_moment_large_q_exact():
    # tau_D^q exceeds int64 here; the sum must stay exact
    X, q, D = 5000, 12, 50
    table = tau_restricted_table(X, D)
    assert tau_moment_sum(X, q, D) == sum(int(v) ** q for v in table[1:])


def test_smooth_tau_moment_examples():
    assert smooth_tau_moment(0, 2, 1e-12) == pytest.approx(2.0, rel=1e-12)
    assert smooth_tau_moment(1, 2, 1e-12) == pytest.approx(4.0, rel=1e-12)
    assert smooth_tau_moment(0, 10, 1e-12) == pytest.approx(4.375, rel=1e-12)


@pytest.mark.parametrize("q", [1, 2, 3, 4, 6])
@pytest.mark.parametrize("D", [2, 3, 10, 30, 100])
def test_smooth_tau_moment_against_closed_form(q, D):
    exact = float(S_exact(q, D))
    for tol in (1e-6, 1e-12):
        got = smooth_tau_moment(q, D, tol)
        assert abs(got / exact - 1) < tol
        # truncation only drops positive terms
        assert got <= exact * (1 + 1e-14)


def test_mertens_examples():
    assert mertens_product(10) == pytest.approx(4.375, rel=1e-12)
    assert mertens_product(2) == pytest.approx(2.0, rel=1e-12)
    assert mertens_product(3) == pytest.approx(3.0, rel=1e-12)
    exact = math.prod((Fraction(p, p - 1) for p in primes_up_to(2000)), start=Fraction(1))
    assert mertens_product(2000) == pytest.approx(float(exact), rel=1e-12)


def test_mertens_convergence():
    # observed ratio at 10^6 is 1.0000389
    assert abs(mertens_ratio(10**6) - 1) <= 0.02


@pytest.mark.parametrize("D", [2, 10, 100, 1000])
def test_S_chain(D):
    tol = 1e-12
    S = [smooth_tau_moment(q, D, tol) for q in range(5)]
    assert S[0] == mertens_product(D)
    for q in range(1, 5):
        assert S[q] <= S[q - 1] ** 2 * (1 + 4 * tol)
        assert S[q] <= S[0] ** (2**q) * (1 + 2**q * tol)


@pytest.mark.parametrize("q", [1, 2, 3])
@pytest.mark.parametrize("D", [10, 100, 1000])
def test_lemma_shape_small_X(q, D):
    for X in (10**3, 10**4):
        total = tau_moment_sum(X, q, D)
        assert total <= X * smooth_tau_moment(q, D)
        assert total / (D * X) < analytic_c_q(q)


def test_profile():
    prof = DivisorProfile(D=10, q=2)
    assert prof.c_q == 24 and prof.c_q_analytic == 24
    measured = empirical_c_q(2, [10, 100], [10**3, 10**4])
    prof = DivisorProfile(D=10, q=2, c_q=measured)
    assert 0 < prof.c_q < prof.c_q_analytic
    with pytest.raises(ValueError):
        DivisorProfile(D=0, q=1)
    with pytest.raises(ValueError):
        DivisorProfile(D=5, q=1, c_q=-1.0)
