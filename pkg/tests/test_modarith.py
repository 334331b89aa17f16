import math
import random

import pytest

from rootdist import (
    Factorization,
    InvalidArgumentError,
    UnsupportedInputError,
    build_spf_sieve,
    crt_pair,
    factorize,
    is_prime,
)

from oracles import eratosthenes, trial_factorize


def test_sieve_small_entries():
    sieve = build_spf_sieve(10)
    assert sieve[9] == 3
    assert sieve[7] == 7
    assert sieve[10] == 2


def test_sieve_smallest_case():
    assert build_spf_sieve(2)[2] == 2


def test_sieve_rejects_tiny_limit():
    with pytest.raises(InvalidArgumentError):
        build_spf_sieve(1)


def test_sieve_prime_count_at_million():
    sieve = build_spf_sieve(10**6)
    flags = eratosthenes(10**6)
    expected = sum(flags)
    assert expected == 78498
    assert sieve.prime_count() == expected


def test_sieve_agrees_with_trial_division(small_sieve):
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(2, small_sieve.limit)
        assert small_sieve[n] == trial_factorize(n)[0][0]


def test_factorize_examples(small_sieve):
    assert factorize(65, small_sieve).parts == ((5, 1), (13, 1))
    assert factorize(360, small_sieve).parts == ((2, 3), (3, 2), (5, 1))


def test_factorize_prime_beyond_sieve():
    sieve = build_spf_sieve(2000)
    n = 999983
    assert all(n % d for d in range(2, math.isqrt(n) + 1))  # oracle: prime
    assert factorize(n, sieve).parts == ((n, 1),)


def test_factorize_round_trip(small_sieve):
    for n in range(1, 10**5 + 1):
        fact = factorize(n, small_sieve)
        prod = 1
        for p, e in fact.parts:
            prod *= p**e
        assert prod == n


def test_factorize_rejects_zero(small_sieve):
    with pytest.raises(InvalidArgumentError):
        factorize(0, small_sieve)


def test_factorize_rejects_hard_composite():
    sieve = build_spf_sieve(100)
    hard = 1000003 * 1000033  # both prime factors beyond the sieve
    with pytest.raises(UnsupportedInputError):
        factorize(hard, sieve)


def test_factorization_validates():
    with pytest.raises(InvalidArgumentError):
        Factorization(12, ((2, 1), (3, 1)))
    with pytest.raises(InvalidArgumentError):
        Factorization(6, ((3, 1), (2, 1)))


def test_crt_examples():
    assert crt_pair(2, 5, 5, 13) == 57
    assert 57 % 5 == 2 and 57 % 13 == 5
    assert crt_pair(0, 7, 0, 11) == 0
    assert crt_pair(3, 5, 8, 13) == 8


def test_crt_rejects_common_factor():
    with pytest.raises(InvalidArgumentError):
        crt_pair(1, 6, 1, 4)


def test_crt_random_round_trip():
    rng = random.Random(5)
    done = 0
    while done < 10**4:
        m1 = rng.randint(1, 10**6)
        m2 = rng.randint(1, 10**6)
        if math.gcd(m1, m2) != 1:
            continue
        r1 = rng.randrange(m1)
        r2 = rng.randrange(m2)
        r = crt_pair(r1, m1, r2, m2)
        assert 0 <= r < m1 * m2
        assert r % m1 == r1 and r % m2 == r2
        done += 1


def test_is_prime_against_sieve():
    flags = eratosthenes(10**4)
    for n in range(10**4 + 1):
        assert is_prime(n) == bool(flags[n]), n


def test_is_prime_64bit_values():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)


def test_is_prime_rejects_beyond_deterministic_range():
    with pytest.raises(UnsupportedInputError):
        is_prime(2**89 - 1)  # no tiny factor, above the proven base-set bound
