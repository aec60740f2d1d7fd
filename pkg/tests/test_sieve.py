import math
import random
from fractions import Fraction

import numpy as np
import pytest

from romanoff_lab.errors import CapacityError, ParameterError, RangeError
from romanoff_lab.sieve import (
    PrimeList,
    build_sieve,
    chebyshev_theta,
    factorize_trial,
    is_prime,
    is_squarefree,
    mertens_products,
    nu,
    p_minus,
    p_plus,
    totient,
    totient_ratio,
    totient_table,
)


def trial_spf(n: int) -> int:
    """Oracle: smallest prime factor by direct trial division."""
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def brute_totient(n: int) -> int:
    """Oracle: count m in [1, n] with gcd(m, n) = 1."""
    return int(np.count_nonzero(np.gcd(np.arange(1, n + 1), n) == 1))


class TestBuildSieve:
    def test_small_values(self):
        sv = build_sieve(10)
        assert int(sv.spf[9]) == 3
        assert int(sv.spf[7]) == 7

    def test_minimal_limit(self):
        sv = build_sieve(2)
        assert int(sv.spf[2]) == 2

    def test_limit_out_of_range(self):
        with pytest.raises(CapacityError):
            build_sieve(1)
        with pytest.raises(CapacityError):
            build_sieve(10**9, limit_cap=10**8)

    def test_random_entries_match_trial_division(self, sieve1m):
        rng = random.Random(0)
        for _ in range(1000):
            n = rng.randint(2, 10**6)
            assert int(sieve1m.spf[n]) == trial_spf(n)

    def test_invariants_exhaustive(self, sieve10k):
        ns = np.arange(2, 10**4 + 1)
        spf = sieve10k.spf[2:]
        assert np.all(ns % spf == 0)
        # full agreement with the trial-division oracle, all n <= 1e4
        oracle = np.array([trial_spf(int(n)) for n in ns])
        assert np.array_equal(spf.astype(np.int64), oracle)
        # spf[n] = n exactly when n is prime
        prime_mask = oracle == ns
        assert np.array_equal(spf == ns, prime_mask)
        # composite entries never exceed sqrt(n)
        comp = ~prime_mask
        assert np.all(spf[comp].astype(np.int64) ** 2 <= ns[comp])

    def test_cache_roundtrip(self, tmp_path):
        first = build_sieve(5000, cache_dir=str(tmp_path))
        assert (tmp_path / "spf-v1-5000.tbl").exists()
        second = build_sieve(5000, cache_dir=str(tmp_path))
        assert np.array_equal(first.spf, second.spf)

    def test_cache_corruption_rebuilds(self, tmp_path):
        build_sieve(5000, cache_dir=str(tmp_path))
        path = tmp_path / "spf-v1-5000.tbl"
        raw = bytearray(path.read_bytes())
        raw[-1] ^= 0xFF
        path.write_bytes(bytes(raw))
        rebuilt = build_sieve(5000, cache_dir=str(tmp_path))
        assert int(rebuilt.spf[4999]) == trial_spf(4999)


class TestTotient:
    def test_examples(self, sieve10k):
        assert totient(1, sieve10k) == 1
        assert totient(7, sieve10k) == 6
        assert brute_totient(12) == 4
        assert totient(12, sieve10k) == 4

    def test_brute_force_oracle(self, sieve10k):
        for n in range(1, 2001):
            assert totient(n, sieve10k) == brute_totient(n)

    def test_range_error(self, sieve10k):
        with pytest.raises(RangeError):
            totient(10**4 + 1, sieve10k)
        with pytest.raises(RangeError):
            totient(0, sieve10k)

    def test_multiplicativity_spot_check(self, sieve1m):
        rng = random.Random(1)
        checked = 0
        while checked < 1000:
            m = rng.randint(2, 1000)
            n = rng.randint(2, 1000)
            if math.gcd(m, n) != 1 or m * n > 10**6:
                continue
            assert totient(m * n, sieve1m) == totient(m, sieve1m) * totient(n, sieve1m)
            checked += 1

    def test_euler_product_identity_sampled(self, sieve1m):
        # phi(n) = n * prod_{p|n} (1 - 1/p), exact rational arithmetic
        rng = random.Random(2)
        for _ in range(500):
            n = rng.randint(1, 10**6)
            product = Fraction(n)
            for p in sieve1m.distinct_primes(n):
                product *= Fraction(p - 1, p)
            assert product == totient(n, sieve1m)

    def test_table_agrees_with_per_n(self, sieve10k):
        table = totient_table(10**4)
        for n in range(1, 10**4 + 1):
            assert int(table[n]) == totient(n, sieve10k)

    def test_summatory_totient(self):
        # exact published value; the density limit 3/pi^2 pins it analytically
        table = totient_table(10**6)
        total = int(table[1:].sum())
        assert total == 303963552392
        assert total / (3 * 10**12 / math.pi**2) == pytest.approx(1.0, rel=1e-6)


class TestTotientRatio:
    def test_examples(self, sieve10k):
        assert totient_ratio(1, sieve10k) == 1
        assert totient_ratio(2, sieve10k) == 2
        assert brute_totient(30) == 8
        assert totient_ratio(30, sieve10k) == Fraction(15, 4)

    def test_at_least_one(self, sieve10k):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randint(1, 10**4)
            assert totient_ratio(n, sieve10k) >= 1


class TestSmallArithmeticFunctions:
    def test_n_equal_one_conventions(self, sieve10k):
        assert nu(1, sieve10k) == 0
        assert p_plus(1, sieve10k) == 1
        assert p_minus(1, sieve10k) == math.inf
        assert p_minus(1, sieve10k) > 10**18  # marker compares above any prime
        assert is_squarefree(1, sieve10k)

    def test_twelve(self, sieve10k):
        assert nu(12, sieve10k) == 2
        assert p_plus(12, sieve10k) == 3
        assert p_minus(12, sieve10k) == 2
        assert not is_squarefree(12, sieve10k)

    def test_primes(self, sieve10k):
        for p in (2, 3, 97, 9973):
            assert nu(p, sieve10k) == 1
            assert p_plus(p, sieve10k) == p
            assert p_minus(p, sieve10k) == p
            assert is_squarefree(p, sieve10k)


class TestPrimeList:
    def test_counts(self, primes100k):
        assert primes100k.count_leq(2) == 1
        assert primes100k.count_leq(100) == 25
        assert primes100k.count_leq(10**5) == 9592

    def test_count_at_scale(self, primes1m):
        assert primes1m.count_leq(10**6) == 78498

    def test_first_and_ascending(self, primes100k):
        assert int(primes100k.values[0]) == 2
        assert np.all(np.diff(primes100k.values) > 0)

    def test_contains(self, primes100k):
        assert primes100k.contains(99991)
        assert not primes100k.contains(99993)

    def test_range_error(self, primes100k):
        with pytest.raises(RangeError):
            primes100k.count_leq(10**5 + 1)


class TestMertensProducts:
    def test_single_prime(self, primes100k):
        mp = mertens_products(2, primes100k)
        assert mp.plus_product == pytest.approx(1.5, rel=1e-12)
        assert mp.minus_product == pytest.approx(2.0, rel=1e-12)

    def test_ten(self, primes100k):
        expected = Fraction(3, 2) * Fraction(4, 3) * Fraction(6, 5) * Fraction(8, 7)
        mp = mertens_products(10, primes100k)
        assert mp.plus_product == pytest.approx(float(expected), rel=1e-12)

    def test_large_x_window(self, primes100k):
        mp = mertens_products(10**5, primes100k)
        assert 0.5 <= mp.plus_over_log <= 3.0
        assert 0.5 <= mp.minus_over_log <= 3.0
        assert mp.minus_product >= mp.plus_product >= 1.0

    def test_ratio_bounded_by_zeta2(self, primes100k):
        # minus/plus telescopes to prod (1 - 1/p^2)^-1 <= zeta(2)
        for x in (2, 10, 1000, 10**5):
            mp = mertens_products(x, primes100k)
            assert mp.minus_product / mp.plus_product <= math.pi**2 / 6 + 1e-9

    def test_errors(self, primes100k):
        with pytest.raises(RangeError):
            mertens_products(10**6, primes100k)
        with pytest.raises(ParameterError):
            mertens_products(1.5, primes100k)

    def test_classical_limit_constants(self, primes1m):
        # the products converge to e^gamma ln x and (6 e^gamma/pi^2) ln x
        e_gamma = math.exp(0.5772156649015329)
        mp = mertens_products(10**6, primes1m)
        assert mp.minus_over_log == pytest.approx(e_gamma, rel=1e-3)
        assert mp.plus_over_log == pytest.approx(6 * e_gamma / math.pi**2, rel=1e-3)


class TestChebyshevTheta:
    def test_examples(self, primes100k):
        assert chebyshev_theta(2, primes100k) == pytest.approx(math.log(2), rel=1e-12)
        assert chebyshev_theta(10, primes100k) == pytest.approx(math.log(210), rel=1e-12)

    def test_nondecreasing(self, primes100k):
        xs = [2, 3, 10, 100, 5000, 10**5]
        vals = [chebyshev_theta(x, primes100k) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_ratio_near_one(self, primes100k):
        assert 0.9 <= chebyshev_theta(10**5, primes100k) / 10**5 <= 1.1

    def test_ratio_tightens_at_scale(self, primes1m):
        assert 0.95 <= chebyshev_theta(10**6, primes1m) / 10**6 <= 1.05


class TestPrimality:
    def test_against_sieve(self, sieve10k):
        for n in range(1, 10**4 + 1):
            assert is_prime(n) == (n >= 2 and int(sieve10k.spf[n]) == n)

    def test_large_values(self):
        assert is_prime(2**61 - 1)
        assert not is_prime(2**67 - 1)  # 193707721 * 761838257287

    def test_factorize_trial(self):
        assert factorize_trial(1) == []
        assert factorize_trial(12) == [(2, 2), (3, 1)]
        assert factorize_trial(2**4 * 7**2 * 101) == [(2, 4), (7, 2), (101, 1)]
