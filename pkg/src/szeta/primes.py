"""Prime sieving, the von Mangoldt weights, and the prime-sum constants.

Everything here is exact finite arithmetic: the sieve is a plain
Eratosthenes bool array, prime powers are enumerated by repeated integer
multiplication (no floating-point log/power detection), and every truncated
infinite sum returns a rigorous geometric tail bound next to its value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .kernels import f_weight

PI = math.pi


@dataclass(frozen=True)
class PrimeTable:
    """Primes and prime powers up to ``limit`` with their log-p weights.

    ``support_n``/``support_p``/``support_m`` list every prime power
    ``n = p^m <= limit`` (m >= 1) in increasing n; Lambda(n) = log p on these
    and 0 elsewhere.  Immutable after construction; all reads are
    thread-safe.
    """

    limit: int
    primes: np.ndarray
    support_n: np.ndarray
    support_p: np.ndarray
    support_m: np.ndarray

    @property
    def lambda_support(self):
        """list of (n, Lambda(n)) over prime powers n <= limit."""
        return list(zip(self.support_n.tolist(),
                        np.log(self.support_p).tolist()))

    def lambda_at(self, n: int) -> float:
        """Lambda(n); 0 off the prime-power support."""
        i = int(np.searchsorted(self.support_n, n))
        if i < len(self.support_n) and self.support_n[i] == n:
            return math.log(int(self.support_p[i]))
        return 0.0


def build_prime_table(x: int) -> PrimeTable:
    """Sieve primes and prime powers up to x (x >= 4)."""
    if x < 4:
        raise DomainError("prime table needs x >= 4")
    x = int(x)
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    primes = np.nonzero(sieve)[0].astype(np.int64)

    ns = [primes]
    ps = [primes]
    ms = [np.ones(len(primes), dtype=np.int64)]
    for p in primes[primes <= math.isqrt(x)]:
        p = int(p)
        q = p * p
        m = 2
        while q <= x:
            ns.append(np.array([q], dtype=np.int64))
            ps.append(np.array([p], dtype=np.int64))
            ms.append(np.array([m], dtype=np.int64))
            q *= p
            m += 1
    n_all = np.concatenate(ns)
    order = np.argsort(n_all, kind="stable")
    return PrimeTable(limit=x, primes=primes,
                      support_n=n_all[order],
                      support_p=np.concatenate(ps)[order],
                      support_m=np.concatenate(ms)[order])


def chebyshev_psi(x: float, table: PrimeTable) -> float:
    """psi(x) = sum of Lambda(n) over n <= x."""
    if x > table.limit:
        raise DomainError("x beyond table limit")
    sel = table.support_n <= x
    return float(np.sum(np.log(table.support_p[sel])))


def mertens_partial(u: float, table: PrimeTable) -> float:
    """sum of 1/p over primes 2 <= p <= u."""
    if not 2.0 <= u <= table.limit:
        raise DomainError("u must lie in [2, table.limit]")
    ps = table.primes[table.primes <= u]
    return float(np.sum(1.0 / ps))


@lru_cache(maxsize=8)
def _primes_up_to(p_cutoff: int) -> np.ndarray:
    return build_prime_table(max(4, p_cutoff)).primes


def prime_power_double_sum(coeff, p_cutoff: int = 10 ** 6,
                           m_cutoff: int = 64):
    """Truncated sum over m >= 2 and primes p of coeff(m) * p^(-m).

    Returns ``(value, tail_bound)`` where the bound covers both truncations
    (p > p_cutoff and m > m_cutoff) assuming |coeff(m)| <= 1, via geometric
    comparison with the odd integers beyond the prime cutoff.
    """
    if p_cutoff < 3 or m_cutoff < 2:
        raise DomainError("need p_cutoff >= 3 and m_cutoff >= 2")
    ms = np.arange(2, m_cutoff + 1)
    cvals = np.array([float(coeff(int(m))) for m in ms])
    if np.any(np.abs(cvals) > 1.0 + 1e-12):
        raise DomainError("coeff(m) must be bounded by 1 in absolute value")

    logp = np.log(_primes_up_to(int(p_cutoff)).astype(float))
    total = 0.0
    for m, c in zip(ms, cvals):
        if c == 0.0:
            continue
        expo = -m * logp
        expo = expo[expo > -745.0]          # exp underflow floor
        total += c * float(np.sum(np.exp(expo)))

    P, M = float(p_cutoff), int(m_cutoff)
    # primes beyond P are odd and >= P+1: sum_m [(P+1)^-m + (P+1)^(1-m)/(2(m-1))]
    tail_p = 0.5 / P + 1.0 / (P * (P + 1.0))
    # all primes, orders beyond M: 2^-m plus odd integers >= 3
    tail_m = 2.0 ** (-M) + 0.5 * 3.0 ** (-M) + 3.0 ** (1 - M) / (4.0 * M)
    return total, tail_p + tail_m


@dataclass(frozen=True)
class PrimeSumBundle:
    """The four prime sums entering the G+H closed form, at cutoff x.

    s1, s2 weight primes by f(log p / log x) (squared for s1); s3, s4 run
    over prime powers p^m <= x with m >= 2.  ``tail_bound_s3`` bounds the
    gap between s3 and its infinite-sum limit; it decays like 1/sqrt(x).
    """

    x: int
    s1: float
    s2: float
    s3: float
    s4: float
    tail_bound_s3: float


def prime_sum_terms(x: int, table: PrimeTable) -> PrimeSumBundle:
    """Evaluate the four sums exactly at cutoff x <= table.limit."""
    if not 4 <= x <= table.limit:
        raise DomainError("need 4 <= x <= table.limit")
    logx = math.log(x)

    ps = table.primes[table.primes <= x].astype(float)
    fv = f_weight(np.log(ps) / logx)
    s1 = float(np.sum(fv * fv / ps))
    s2 = float(np.sum(fv / ps))

    hi = table.support_m >= 2
    sel = hi & (table.support_n <= x)
    n = table.support_n[sel].astype(float)
    m = table.support_m[sel].astype(float)
    p = table.support_p[sel].astype(float)
    weight = 1.0 / (m * m * n)
    s3 = float(np.sum(weight))
    fm = f_weight(m * np.log(p) / logx)
    s4 = float(np.sum((fm - 1.0) ** 2 * weight))

    # truncation bound: for each m, primes with p^m > x exceed x^(1/m)
    m_top = int(math.log2(x))
    bound = 0.0
    for mm in range(2, m_top + 1):
        bound += (1.0 / x + x ** (-(mm - 1) / mm) / (mm - 1)) / (mm * mm)
    if m_top >= 2:
        bound += (2.0 ** (-m_top) + 3.0 ** (-m_top)) / (m_top * m_top)
    return PrimeSumBundle(x=x, s1=s1, s2=s2, s3=s3, s4=s4,
                          tail_bound_s3=bound)


_EULER_CROSS_CHECK = 0.5772156649015329    # sanity anchor only


def euler_constant() -> float:
    """Euler's constant from the harmonic sum with Euler-Maclaurin tail.

    gamma = H_N - log N - 1/(2N) + 1/(12 N^2) - 1/(120 N^4) + ...; at
    N = 100 the omitted term is ~1e-21, far below double precision.
    """
    N = 100
    h = float(np.sum(1.0 / np.arange(1, N + 1, dtype=float)))
    n2 = float(N) ** -2
    corr = n2 * (1.0 / 12 + n2 * (-1.0 / 120 + n2 * (1.0 / 252
                                                     + n2 * (-1.0 / 240))))
    gamma = h - math.log(N) - 0.5 / N + corr
    assert abs(gamma - _EULER_CROSS_CHECK) < 1e-13
    return gamma


def euler_constant_bessel() -> float:
    """Independent route to Euler's constant (Brent-McMillan, n = 12).

    gamma = A/B - log n with A = sum (n^k/k!)^2 H_k, B = sum (n^k/k!)^2;
    the error term e^(-4n) is ~1e-21.  Exists purely as a cross-check for
    :func:`euler_constant`.
    """
    n = 12
    a = 0.0
    b = 0.0
    term = 1.0        # (n^k / k!)^2 at k = 0
    hk = 0.0
    for k in range(1, 5 * n):
        b += term
        a += term * hk
        term *= (n / k) ** 2
        hk += 1.0 / k
    return a / b - math.log(n)


@lru_cache(maxsize=8)
def _twin_product(p_cutoff: int) -> float:
    ps = _primes_up_to(p_cutoff)
    ps = ps[ps > 2].astype(float)
    return float(np.exp(np.sum(np.log1p(-1.0 / (ps - 1.0) ** 2))))


def singular_series(d: int, p_cutoff: int = 10 ** 6) -> float:
    """Singular series of the prime-pair count at shift d.

    Zero for odd d; for even d the truncated Euler product
    2 * prod_{p>2} (1 - (p-1)^-2) * prod_{p | d, p>2} (p-1)/(p-2).
    Truncation error is bounded by :func:`singular_series_tail_bound`.
    """
    if d == 0:
        raise DomainError("d must be nonzero")
    d = abs(int(d))
    if d % 2 == 1:
        return 0.0
    value = 2.0 * _twin_product(int(p_cutoff))
    while d % 2 == 0:
        d //= 2
    p = 3
    while p * p <= d:
        if d % p == 0:
            value *= (p - 1.0) / (p - 2.0)
            while d % p == 0:
                d //= p
        p += 2
    if d > 1:
        value *= (d - 1.0) / (d - 2.0)
    return value


def singular_series_tail_bound(p_cutoff: int = 10 ** 6) -> float:
    """Relative truncation error bound for the Euler product."""
    return 1.0 / (p_cutoff - 2.0)


def closed_form_S1_minus_2S2(x: int, p_cutoff: int = 10 ** 6,
                             m_cutoff: int = 64) -> float:
    """Closed form for S1 - 2*S2:

        -log log x + log(pi/2) - pi^2/8 + 1 - gamma
            + sum_{m>=2} sum_p 1/(m p^m)

    The double sum shares :func:`prime_power_double_sum` with the theorem
    bracket, so cross-checks between the two are exact.
    """
    if x < 16:
        raise DomainError("closed form stated for x >= 16")
    double_sum, _ = prime_power_double_sum(lambda m: 1.0 / m,
                                           p_cutoff, m_cutoff)
    return (-math.log(math.log(x)) + math.log(PI / 2.0) - PI ** 2 / 8.0
            + 1.0 - euler_constant() + double_sum)
