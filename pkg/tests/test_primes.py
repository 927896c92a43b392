import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szeta.errors import DomainError
from szeta.kernels import f_weight
from szeta.primes import (build_prime_table, chebyshev_psi,
                          closed_form_S1_minus_2S2, euler_constant,
                          euler_constant_bessel, mertens_partial,
                          prime_power_double_sum, prime_sum_terms,
                          singular_series, singular_series_tail_bound)


def _simple_sieve(x):
    flags = [True] * (x + 1)
    flags[0] = flags[1] = False
    for p in range(2, int(x ** 0.5) + 1):
        if flags[p]:
            for q in range(p * p, x + 1, p):
                flags[q] = False
    return [n for n in range(2, x + 1) if flags[n]]


def test_lambda_values():
    table = build_prime_table(100)
    assert table.lambda_at(8) == pytest.approx(math.log(2), abs=1e-15)
    assert table.lambda_at(12) == 0.0
    assert table.lambda_at(5) == pytest.approx(math.log(5), abs=1e-15)


def test_rejects_tiny_limit():
    with pytest.raises(DomainError):
        build_prime_table(3)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=4, max_value=2000))
def test_table_invariants(x):
    table = build_prime_table(x)
    ref = _simple_sieve(x)
    assert table.primes.tolist() == ref
    # every support entry is a true prime power with Lambda = log p
    seen = set()
    for n, lam in table.lambda_support:
        assert n not in seen
        seen.add(n)
        assert n <= x
        # recover p as the smallest prime factor, check n is a pure power
        p = next(q for q in ref if n % q == 0)
        m = 0
        nn = n
        while nn % p == 0:
            nn //= p
            m += 1
        assert nn == 1
        assert lam == pytest.approx(math.log(p), rel=1e-15)
    # no prime power missing
    for p in ref:
        q = p
        while q <= x:
            assert q in seen
            q *= p


def test_psi_matches_lcm():
    # exact integer oracle: psi(x) = log lcm(1..x)
    table = build_prime_table(10_000)
    for x in (10, 100, 1000, 10_000):
        acc = 1
        for n in range(2, x + 1):
            acc = math.lcm(acc, n)
        assert chebyshev_psi(x, table) == pytest.approx(math.log(acc),
                                                        rel=1e-12)


def test_mertens_small_values(prime_table_small):
    t = prime_table_small
    assert mertens_partial(10, t) == pytest.approx(
        1 / 2 + 1 / 3 + 1 / 5 + 1 / 7, abs=1e-15)
    assert mertens_partial(2, t) == 0.5
    # independent direct-loop oracle at u=100
    oracle = sum(1.0 / p for p in _simple_sieve(100))
    assert mertens_partial(100, t) == pytest.approx(oracle, abs=1e-15)
    with pytest.raises(DomainError):
        mertens_partial(1.0, t)
    with pytest.raises(DomainError):
        mertens_partial(t.limit + 1, t)


def test_double_sum_trivial_cases():
    val, _ = prime_power_double_sum(lambda m: 0.0, 100, 8)
    assert val == 0.0
    val, _ = prime_power_double_sum(lambda m: 1.0 / m, 3, 2)
    assert val == pytest.approx(0.5 * (1 / 4 + 1 / 9), abs=1e-15)


def test_double_sum_tail_bound_is_true_bound():
    coeff = lambda m: 1.0 / m - 1.0 / m ** 2
    coarse, bound = prime_power_double_sum(coeff, 10 ** 5, 30)
    fine, _ = prime_power_double_sum(coeff, 4 * 10 ** 5, 60)
    assert abs(fine - coarse) <= bound
    # default cutoffs reach 1e-6
    _, tight = prime_power_double_sum(coeff, 10 ** 6, 60)
    assert tight < 1e-6


def test_double_sum_rejects_large_coeff():
    with pytest.raises(DomainError):
        prime_power_double_sum(lambda m: 2.0, 100, 8)


def test_prime_sum_terms_s3_enumeration(prime_table_small):
    bundle = prime_sum_terms(100, prime_table_small)
    # brute-force oracle over the prime powers p^m <= 100, m >= 2
    powers = [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3),
              (3, 4), (5, 2), (7, 2)]
    oracle = sum(1.0 / (m * m * p ** m) for p, m in powers)
    assert bundle.s3 == pytest.approx(oracle, abs=1e-15)
    assert bundle.tail_bound_s3 < 1.0 / math.sqrt(100)


def test_prime_sum_terms_two_primes_at_x4(prime_table_small):
    bundle = prime_sum_terms(4, prime_table_small)
    log4 = math.log(4)
    expect = (f_weight(math.log(2) / log4) ** 2 / 2
              + f_weight(math.log(3) / log4) ** 2 / 3)
    assert bundle.s1 == pytest.approx(expect, abs=1e-15)


def test_s4_over_s1_decreases(prime_table_1e6):
    ratios = []
    for x in (100, 1000, 10_000):
        b = prime_sum_terms(x, prime_table_1e6)
        ratios.append(b.s4 / b.s1)
    assert ratios[0] > ratios[1] > ratios[2]


def test_s3_monotone_and_converging(prime_table_1e6, prime_table_1e7):
    ref = prime_sum_terms(10 ** 7, prime_table_1e7).s3
    xs = (10 ** 4, 10 ** 5, 10 ** 6)
    vals = [prime_sum_terms(x, prime_table_1e6).s3 for x in xs]
    assert vals[0] < vals[1] < vals[2] <= ref
    gaps = [ref - v for v in vals]
    # halving x (here: decade steps) can only grow the gap like 1/sqrt(x)
    assert gaps[0] <= 2.0 * gaps[1] * math.sqrt(10.0)
    assert gaps[1] <= 2.0 * gaps[2] * math.sqrt(10.0)


def test_singular_series_odd_and_ratios():
    assert singular_series(3) == 0.0
    assert singular_series(2) > 0.0
    assert singular_series(6) / singular_series(2) == pytest.approx(
        2.0, abs=1e-14)
    with pytest.raises(DomainError):
        singular_series(0)


def test_singular_series_twin_constant():
    # Euler-product oracle: stabilizes to 6 digits well before 1e6, with
    # the tail bound guarding the cutoff difference
    v1 = singular_series(2, p_cutoff=10 ** 6)
    v2 = singular_series(2, p_cutoff=4 * 10 ** 6)
    assert abs(v1 - v2) < singular_series_tail_bound(10 ** 6)
    assert v1 == pytest.approx(1.3203236, abs=3e-6)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=50_000))
def test_singular_series_rational_factor(k):
    # S(2k)/S(2) = prod over odd primes p | k of (p-1)/(p-2), exactly
    expect = Fraction(1)
    kk = k
    while kk % 2 == 0:
        kk //= 2
    for p in _simple_sieve(300):
        if p == 2:
            continue
        if kk % p == 0:
            expect *= Fraction(p - 1, p - 2)
            while kk % p == 0:
                kk //= p
    if kk > 1:
        # leftover prime factor beyond the small sieve
        p = kk
        expect *= Fraction(p - 1, p - 2)
    ratio = singular_series(2 * k) / singular_series(2)
    assert ratio == pytest.approx(float(expect), rel=1e-12)


def test_euler_constant_against_richardson_oracle():
    # stated oracle: H_N - log N with Richardson extrapolation
    def a(N):
        return float(np.sum(1.0 / np.arange(1, N + 1))) - math.log(N)

    # two Richardson levels kill the 1/(2N) and 1/(12N^2) terms
    N = 20_000
    r1 = [2 * a(2 * N) - a(N), 2 * a(4 * N) - a(2 * N)]
    oracle = (4 * r1[1] - r1[0]) / 3
    assert euler_constant() == pytest.approx(oracle, abs=1e-12)


def test_euler_constant_two_methods_agree():
    assert abs(euler_constant() - euler_constant_bessel()) < 1e-10


def test_closed_form_shares_double_sum(prime_table_1e6):
    # the double-sum term of the closed form is the shared implementation
    ds, _ = prime_power_double_sum(lambda m: 1.0 / m, 10 ** 6, 64)
    x = 10 ** 4
    manual = (-math.log(math.log(x)) + math.log(math.pi / 2)
              - math.pi ** 2 / 8 + 1.0 - euler_constant() + ds)
    assert closed_form_S1_minus_2S2(x) == pytest.approx(manual, abs=1e-15)


def test_closed_form_linear_in_euler_constant():
    # perturbing the constant by +0.1 shifts the value by exactly -0.1
    x = 10 ** 4
    base = closed_form_S1_minus_2S2(x)
    ds, _ = prime_power_double_sum(lambda m: 1.0 / m, 10 ** 6, 64)
    perturbed = (-math.log(math.log(x)) + math.log(math.pi / 2)
                 - math.pi ** 2 / 8 + 1.0 - (euler_constant() + 0.1) + ds)
    assert base - perturbed == pytest.approx(0.1, abs=1e-14)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        closed_form_S1_minus_2S2(8)
