"""Sieve backbone: spf tables, omega/tau/phi ranges, scalar factorization.

Oracles here are deliberately different algorithms: per-n trial division
and a vectorised modulo pass over a self-built prime list, never the
stride-sieve code under test.
"""

import math
import random

import numpy as np
import pytest

import omegalab as ol
from omegalab.errors import DomainError, ResourceError


def _trial_omega(n: int) -> int:
    w, d = 0, 2
    while d * d <= n:
        if n % d == 0:
            w += 1
            while n % d == 0:
                n //= d
        d += 1
    return w + (1 if n > 1 else 0)


def _trial_factor(n: int) -> dict:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _trial_primes(limit: int) -> list:
    return [p for p in range(2, limit + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]


class TestSpfTable:
    def test_tiny_window(self):
        sv = ol.build_factor_sieve(2, 2)
        assert sv.spf_of(2) == 2

    def test_shifted_window(self):
        sv = ol.build_factor_sieve(90, 92)
        assert [sv.spf_of(n) for n in (90, 91, 92)] == [2, 7, 2]

    def test_primes_have_themselves_as_spf(self):
        sv = ol.build_factor_sieve(1, 100)
        primes = [n for n in range(2, 101) if sv.spf_of(n) == n]
        assert primes == _trial_primes(100)
        assert len(primes) == 25

    def test_spf_divides_and_is_minimal(self):
        sv = ol.build_factor_sieve(2, 5000)
        for n in range(2, 5001):
            p = sv.spf_of(n)
            assert n % p == 0
            fac = _trial_factor(n)
            assert p == min(fac)

    def test_partition_invariance(self):
        whole = ol.build_factor_sieve(1, 30000, block_size=1 << 22).spf
        for bs in (1000, 7777, 30000):
            assert np.array_equal(whole, ol.build_factor_sieve(1, 30000, block_size=bs).spf)

    def test_thread_invariance(self):
        a = ol.build_factor_sieve(1, 200000, threads=1).spf
        b = ol.build_factor_sieve(1, 200000, threads=4).spf
        assert np.array_equal(a, b)

    def test_window_bounds_checked(self):
        sv = ol.build_factor_sieve(10, 20)
        with pytest.raises(DomainError):
            sv.spf_of(9)
        with pytest.raises(DomainError):
            ol.build_factor_sieve(0, 10)
        with pytest.raises(DomainError):
            ol.build_factor_sieve(10, 5)

    def test_memory_budget_refusal(self):
        with pytest.raises(ResourceError):
            ol.build_factor_sieve(1, 10**9, memory_budget=10**6)


class TestOmegaRange:
    def test_matches_trial_division_exhaustively(self, sieve_1e6, omega_1e6):
        lo = 1
        for n in (1, 2, 12, 30030, 999983, 1000000):
            assert omega_1e6[n - lo] == _trial_omega(n)
        rng = random.Random(20240817)
        for n in (rng.randrange(1, 10**6 + 1) for _ in range(3000)):
            assert omega_1e6[n - lo] == _trial_omega(n)

    def test_small_prefix_exact(self, omega_1e6):
        for n in range(1, 20001):
            assert omega_1e6[n - 1] == _trial_omega(n)

    def test_shifted_window_exact(self):
        sv = ol.build_factor_sieve(999_000, 1_001_000)
        om = ol.omega_range(sv)
        for n in range(999_000, 1_001_001, 37):
            assert om[n - 999_000] == _trial_omega(n)

    def test_partition_invariance(self):
        ref = ol.omega_range(ol.build_factor_sieve(1, 300000, block_size=1 << 22))
        for bs in (10_000, 17_777):
            assert np.array_equal(ref, ol.omega_range(ol.build_factor_sieve(1, 300000, block_size=bs)))

    def test_thread_invariance(self, sieve_1e6, omega_1e6):
        assert np.array_equal(omega_1e6, ol.omega_range(sieve_1e6, threads=4))

    def test_additivity_on_coprime_pairs(self, omega_1e6):
        om = omega_1e6
        for m in range(2, 200):
            for n in range(2, 200):
                if math.gcd(m, n) == 1:
                    assert om[m * n - 1] == om[m - 1] + om[n - 1]
        rng = random.Random(7)
        checked = 0
        while checked < 2000:
            m, n = rng.randrange(2, 1000), rng.randrange(2, 1000)
            if math.gcd(m, n) == 1:
                assert om[m * n - 1] == om[m - 1] + om[n - 1]
                checked += 1

    def test_monotone_under_multiplication(self, omega_1e6):
        om = omega_1e6.astype(np.int64)
        g = np.arange(1, 1001)
        n = np.arange(1, 1001)
        prod = np.outer(g, n)
        assert np.all(om[(prod - 1).ravel()] >= np.tile(om[n - 1], 1000))


class TestTauPhiRanges:
    def test_tau_matches_divisor_count(self, sieve_1e6):
        tau = ol.tau_range(ol.build_factor_sieve(1, 10000))
        for n in range(1, 10001):
            fac = _trial_factor(n)
            expect = 1
            for e in fac.values():
                expect *= e + 1
            assert tau[n - 1] == expect

    def test_tau_shifted_window(self):
        tau = ol.tau_range(ol.build_factor_sieve(5000, 5100))
        for n in range(5000, 5101):
            assert tau[n - 5000] == sum(1 for d in range(1, n + 1) if n % d == 0)

    def test_phi_matches_coprime_count(self):
        phi = ol.phi_range(ol.build_factor_sieve(1, 3000))
        for n in range(1, 3001):
            assert phi[n - 1] == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)

    def test_phi_shifted_window_product_formula(self):
        phi = ol.phi_range(ol.build_factor_sieve(100000, 101000))
        for n in range(100000, 101001, 13):
            fac = _trial_factor(n)
            expect = n
            for p in fac:
                expect = expect // p * (p - 1)
            assert phi[n - 100000] == expect

    def test_tau_at_least_two_to_omega(self, omega_1e6):
        sv = ol.build_factor_sieve(1, 10**5)
        tau = ol.tau_range(sv).astype(np.int64)
        om = omega_1e6[: 10**5].astype(np.int64)
        assert np.all(tau[1:] >= 2 ** om[1:])  # n >= 2
        assert tau[0] == 1 and om[0] == 0


class TestScalarFactorization:
    @pytest.mark.parametrize(
        "n,factors",
        [
            (1, ()),
            (2, ((2, 1),)),
            (360, ((2, 3), (3, 2), (5, 1))),
            (1024, ((2, 10),)),
            (30030, ((2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1))),
        ],
    )
    def test_known_factorizations(self, n, factors):
        assert ol.factorize(n).factors == factors

    def test_against_trial_division(self):
        rng = random.Random(99)
        for _ in range(300):
            n = rng.randrange(2, 10**6)
            assert dict(ol.factorize(n).factors) == _trial_factor(n)

    def test_large_semiprime_and_big_values(self):
        p, q = 1_000_003, 1_000_033
        assert ol.factorize(p * q).factors == ((p, 1), (q, 1))
        n = 2**40 + 1
        fac = ol.factorize(n)
        assert fac.verify() and fac.n == n

    def test_perfect_powers(self):
        p = 65537
        assert ol.factorize(p * p).factors == ((p, 2),)
        assert ol.factorize(10**18).factors == ((2, 18), (5, 18))

    def test_zero_and_negative_rejected(self):
        with pytest.raises(DomainError):
            ol.factorize(0)
        with pytest.raises(DomainError):
            ol.factorize(-6)

    def test_scalar_helpers_consistent(self, omega_1e6):
        for n in (1, 2, 97, 5040, 123456):
            assert ol.omega(n) == omega_1e6[n - 1]
            assert ol.tau(n) == sum(1 for d in range(1, n + 1) if n % d == 0)
            assert ol.phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class TestPrimality:
    def test_small_range_exhaustive(self):
        primes = set(_trial_primes(2000))
        for n in range(0, 2001):
            assert ol.is_prime(n) == (n in primes)

    @pytest.mark.parametrize("n,expect", [
        (2, True),
        (1, False),
        (1000003, True),
        (341, False),          # 11 * 31, base-2 Fermat pseudoprime
        (3215031751, False),   # strong pseudoprime to bases 2,3,5,7
        (2**61 - 1, True),     # Mersenne prime
    ])
    def test_pinned_cases(self, n, expect):
        assert ol.is_prime(n) is expect

    def test_prime_mask_agrees(self):
        mask = ol.prime_mask(5000)
        primes = set(_trial_primes(5000))
        for n in range(0, 5001):
            assert mask[n] == (n in primes)

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            ol.is_prime(-1)
        with pytest.raises(DomainError):
            ol.is_prime(10**25)
